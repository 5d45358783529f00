#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gausschain {

/// Which part of the nearest-neighbour q_j q_{j+1} coupling is kept.
///
/// Full keeps the counter-rotating pieces (b_j b_{j+1} + h.c.), so the
/// coupling lives entirely in the position block. RotatingWave keeps only the
/// excitation-conserving pieces, which split evenly between q_j q_{j+1} and
/// p_j p_{j+1}.
enum class CouplingModel { Full, RotatingWave };

/// N oscillators of bare frequency omega in an open chain with coupling kappa
/// (hbar = 1). H = (omega/2) sum_j (q_j^2 + p_j^2) + kappa sum_j q_j q_{j+1}.
struct ChainSpec {
  int n = 3;
  double omega = 1.0;
  double kappa = 0.1;
  CouplingModel model = CouplingModel::Full;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

/// Thrown when some normal-mode frequency is not strictly positive.
class UnstableChain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// H = 1/2 x^T g x with x = (q1, p1, ..., qN, pN).
struct QuadraticForm {
  Eigen::MatrixXd g;

  /// n x n block acting on (q1, ..., qN).
  Eigen::MatrixXd position_block() const;
  /// n x n block acting on (p1, ..., pN).
  Eigen::MatrixXd momentum_block() const;
};

/// Normal modes of the position block.
///
/// Row i of mode_matrix is the eigenvector for energies(i), i.e.
/// mode_matrix * (position_block / 2) * mode_matrix^T = diag(energies).
/// Rows are ordered bare mode first (odd n) and then by increasing energy;
/// source_index(i) is the 1-based index j of the closed form
/// E_j = omega/2 + c cos(j pi / (n + 1)) that row i came from.
struct EigenSystem {
  Eigen::VectorXd energies;
  Eigen::MatrixXd mode_matrix;
  std::vector<int> source_index;

  int size() const { return static_cast<int>(energies.size()); }
};

/// Effective nearest-neighbour coefficient in each coupled block
/// (kappa for Full, kappa / 2 for RotatingWave).
double block_coupling(const ChainSpec& spec);

QuadraticForm build_quadratic_form(const ChainSpec& spec);

/// Closed-form spectrum in source order j = 1..n (no sorting).
Eigen::VectorXd analytic_energies(const ChainSpec& spec);

EigenSystem eigensystem(const ChainSpec& spec);

/// Throws UnstableChain naming the offending eigen-frequency, or
/// std::invalid_argument for n < 2 / omega <= 0.
void validate_stability(const ChainSpec& spec);

bool is_stable(const ChainSpec& spec) noexcept;

/// Structural checks shared by every entry point (n >= 2, omega > 0, finite).
void validate_shape(const ChainSpec& spec);

std::string to_string(CouplingModel model);

}  // namespace gausschain
