#pragma once

#include <optional>
#include <vector>

#include "gausschain/chain_model.hpp"
#include "gausschain/entanglement.hpp"
#include "gausschain/symplectic.hpp"

namespace gausschain {

/// How a dimensionless grid time tau maps to evolution time t.
///
/// Doubled: tau = 2 omega t. On this axis a normal mode's rotator
/// parameter phi_j(tau / omega) equals its phase-space rotation angle, and
/// the three-oscillator vacuum peak of Lambda^12 sits at tau ~ 44.1.
/// Natural: tau = omega t.
enum class TimeAxis { Doubled, Natural };

/// Which quadrature of the end oscillators is squeezed by the tag.
/// Momentum: diag(e^{2r}, e^{-2r}); Position: diag(e^{-2r}, e^{2r}).
enum class TagQuadrature { Momentum, Position };

enum class Engine { Decomposition, Oracle, Both };

struct SweepConfig {
  ChainSpec spec;
  double tau_start = 0.0;
  double tau_end = 60.0;
  double tau_step = 0.01;
  std::vector<ModePair> pairs;
  std::optional<double> tag_r;
  TimeAxis time_axis = TimeAxis::Doubled;
  TagQuadrature tag_quadrature = TagQuadrature::Momentum;
  Engine engine = Engine::Decomposition;
  /// Record the cross block C_ab for every requested pair.
  bool record_blocks = false;
  /// Record symplecticity / purity errors of every grid point.
  bool record_diagnostics = false;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepDiagnostics {
  double symplectic_error = 0.0;  ///< max |S Omega S^T - Omega|
  double purity_error = 0.0;      ///< max |nu_k - 1| over the full state
  double engine_gap = 0.0;        ///< max |Lambda_decomposition - Lambda_oracle| (engine = both)
};

struct SweepEntry {
  ModePair pair;
  double log_negativity = 0.0;
  std::optional<Eigen::Matrix2d> block;
};

struct SweepRecord {
  double tau = 0.0;
  std::vector<SweepEntry> entries;
  std::optional<SweepDiagnostics> diagnostics;

  const SweepEntry& entry(ModePair p) const;
  double lambda(ModePair p) const { return entry(p).log_negativity; }
};

struct Peak {
  double tau = 0.0;
  double lambda = 0.0;
};

struct TauInterval {
  double begin = 0.0;
  double end = 0.0;
};

constexpr std::size_t kMaxGridPoints = 10'000'000;

/// Evolution time of grid time tau under the configured axis.
double evolution_time(const SweepConfig& config, double tau);

/// Grid tau_start + i * tau_step for i = 0.. while <= tau_end (+1e-9 step slack).
std::vector<double> tau_grid(const SweepConfig& config);

/// Pairs (1, j) for j = 2..n.
std::vector<ModePair> default_pairs(int n);

/// Default tag squeeze for an n-oscillator chain: 0.2 (n <= 3), 0.4 (n = 4), 0.6 (n >= 5).
double default_tag_r(int n);

void validate(const SweepConfig& config);

Covariance initial_state(const SweepConfig& config);

/// Propagator at grid time tau through the configured engine (Both -> decomposition).
Symplectic propagator(const SweepConfig& config, double tau);

/// State at a single grid time.
Covariance evolve(const SweepConfig& config, double tau);

SweepRecord measure(const SweepConfig& config, double tau);

/// Evaluates every grid point; threads = 0 uses hardware concurrency.
/// Records are grid-ordered and bit-identical for any thread count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned threads = 1);

/// Grid argmax of Lambda for the pair; ties go to the smaller tau.
Peak find_peak(const std::vector<SweepRecord>& records, ModePair pair);

/// Maximal runs of consecutive grid points where Lambda(end_pair) strictly
/// exceeds every Lambda(other).
std::vector<TauInterval> dominance_report(const std::vector<SweepRecord>& records, ModePair end_pair,
                                          const std::vector<ModePair>& other_pairs);

}  // namespace gausschain
