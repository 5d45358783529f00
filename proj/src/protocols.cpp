#include "gausschain/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "gausschain/decomposition.hpp"
#include "gausschain/evolution_oracle.hpp"

namespace gausschain {

const SweepEntry& SweepRecord::entry(ModePair p) const {
  for (const SweepEntry& e : entries)
    if (e.pair == p) return e;
  throw std::out_of_range("pair (" + std::to_string(p.a) + "," + std::to_string(p.b) + ") not recorded");
}

double evolution_time(const SweepConfig& config, double tau) {
  const double t = tau / config.spec.omega;
  return config.time_axis == TimeAxis::Doubled ? 0.5 * t : t;
}

std::vector<ModePair> default_pairs(int n) {
  std::vector<ModePair> pairs;
  for (int j = 2; j <= n; ++j) pairs.push_back({1, j});
  return pairs;
}

double default_tag_r(int n) {
  if (n <= 3) return 0.2;
  if (n == 4) return 0.4;
  return 0.6;
}

void validate(const SweepConfig& config) {
  validate_stability(config.spec);
  if (!std::isfinite(config.tau_start) || !std::isfinite(config.tau_end) || !std::isfinite(config.tau_step))
    throw std::invalid_argument("sweep times must be finite");
  if (!(config.tau_step > 0.0)) throw std::invalid_argument("sweep.tau_step must be positive");
  if (config.tau_end < config.tau_start) throw std::invalid_argument("sweep.tau_end must not precede sweep.tau_start");
  const double count = std::floor((config.tau_end - config.tau_start) / config.tau_step + 1e-9) + 1.0;
  if (count > static_cast<double>(kMaxGridPoints))
    throw std::invalid_argument("sweep grid has more than 1e7 points");
  for (const ModePair& p : config.pairs) {
    if (p.a < 1 || p.b < 1 || p.a > config.spec.n || p.b > config.spec.n || p.a == p.b)
      throw std::invalid_argument("sweep pair (" + std::to_string(p.a) + "," + std::to_string(p.b) + ") invalid for n=" +
                                  std::to_string(config.spec.n));
  }
  if (config.tag_r && !std::isfinite(*config.tag_r)) throw std::invalid_argument("sweep.r must be finite");
}

std::vector<double> tau_grid(const SweepConfig& config) {
  validate(config);
  const auto count = static_cast<std::size_t>(std::floor((config.tau_end - config.tau_start) / config.tau_step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = config.tau_start + static_cast<double>(i) * config.tau_step;
  return grid;
}

Covariance initial_state(const SweepConfig& config) {
  const int n = config.spec.n;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  if (config.tag_r) {
    const double sign = config.tag_quadrature == TagQuadrature::Position ? 1.0 : -1.0;
    const double vq = std::exp(-2.0 * sign * *config.tag_r);
    const double vp = std::exp(2.0 * sign * *config.tag_r);
    for (int m : {0, n - 1}) {
      v(2 * m, 2 * m) = vq;
      v(2 * m + 1, 2 * m + 1) = vp;
    }
  }
  return Covariance(std::move(v));
}

Symplectic propagator(const SweepConfig& config, double tau) {
  const double t = evolution_time(config, tau);
  if (config.engine == Engine::Oracle) return direct_propagator(config.spec, t);
  return to_symplectic(build_propagator(config.spec, t));
}

Covariance evolve(const SweepConfig& config, double tau) {
  return apply(propagator(config, tau), initial_state(config));
}

namespace {

std::vector<ModePair> effective_pairs(const SweepConfig& config) {
  return config.pairs.empty() ? default_pairs(config.spec.n) : config.pairs;
}

SweepRecord measure_with(const SweepConfig& config, const std::vector<ModePair>& pairs, const Covariance& v0, double tau) {
  const Symplectic s = propagator(config, tau);
  const Covariance v = apply(s, v0);

  SweepRecord rec;
  rec.tau = tau;
  rec.entries.reserve(pairs.size());
  for (const ModePair& p : pairs) {
    SweepEntry e{p, log_negativity(v, p.a, p.b), std::nullopt};
    if (config.record_blocks) e.block = v.block(p.a, p.b);
    rec.entries.push_back(std::move(e));
  }

  if (config.record_diagnostics || config.engine == Engine::Both) {
    SweepDiagnostics d;
    d.symplectic_error = symplectic_error(s);
    d.purity_error = (check_state(v).array() - 1.0).abs().maxCoeff();
    if (config.engine == Engine::Both) {
      const Symplectic oracle = direct_propagator(config.spec, evolution_time(config, tau));
      const Covariance vo = apply(oracle, v0);
      d.symplectic_error = std::max(d.symplectic_error, symplectic_error(oracle));
      for (const SweepEntry& e : rec.entries)
        d.engine_gap = std::max(d.engine_gap, std::abs(e.log_negativity - log_negativity(vo, e.pair.a, e.pair.b)));
    }
    rec.diagnostics = d;
  }
  return rec;
}

}  // namespace

SweepRecord measure(const SweepConfig& config, double tau) {
  validate(config);
  return measure_with(config, effective_pairs(config), initial_state(config), tau);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned threads) {
  const std::vector<double> grid = tau_grid(config);
  const std::vector<ModePair> pairs = effective_pairs(config);
  const Covariance v0 = initial_state(config);

  std::vector<SweepRecord> records(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < grid.size(); i += stride) records[i] = measure_with(config, pairs, v0, grid[i]);
  };

  if (threads <= 1) {
    work(0, 1);
    return records;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned k = 0; k < threads; ++k) {
    pool.emplace_back([&, k] {
      try {
        work(k, threads);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

Peak find_peak(const std::vector<SweepRecord>& records, ModePair pair) {
  if (records.empty()) throw std::invalid_argument("find_peak: no records");
  Peak best{records.front().tau, records.front().lambda(pair)};
  for (const SweepRecord& r : records) {
    const double l = r.lambda(pair);
    if (l > best.lambda) best = {r.tau, l};
  }
  return best;
}

std::vector<TauInterval> dominance_report(const std::vector<SweepRecord>& records, ModePair end_pair,
                                          const std::vector<ModePair>& other_pairs) {
  std::vector<TauInterval> out;
  bool open = false;
  for (const SweepRecord& r : records) {
    const double end = r.lambda(end_pair);
    bool dominant = true;
    for (const ModePair& p : other_pairs) {
      if (p == end_pair) continue;
      if (!(end > r.lambda(p))) {
        dominant = false;
        break;
      }
    }
    if (dominant) {
      if (!open) out.push_back({r.tau, r.tau});
      out.back().end = r.tau;
      open = true;
    } else {
      open = false;
    }
  }
  return out;
}

}  // namespace gausschain
