#include "gausschain/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gausschain {

namespace {

// cos(j pi / (n + 1)) with exact zero at the centre and exact +/- symmetry.
double folded_cos(int j, int n) {
  const int m = n + 1;
  if (2 * j == m) return 0.0;
  if (2 * j > m) return -folded_cos(m - j, n);
  return std::cos(j * std::numbers::pi / m);
}

// sin(k pi / (n + 1)) for any integer k, reduced so that exact zeros stay zero.
double folded_sin(long k, int n) {
  const long m = n + 1;
  k %= 2 * m;
  if (k < 0) k += 2 * m;
  if (k == 0 || k == m) return 0.0;
  if (k > m) return -folded_sin(k - m, n);
  if (2 * k > m) k = m - k;
  return std::sin(static_cast<double>(k) * std::numbers::pi / static_cast<double>(m));
}

}  // namespace

Eigen::MatrixXd QuadraticForm::position_block() const {
  const Eigen::Index n = g.rows() / 2;
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = g(2 * i, 2 * j);
  return out;
}

Eigen::MatrixXd QuadraticForm::momentum_block() const {
  const Eigen::Index n = g.rows() / 2;
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = g(2 * i + 1, 2 * j + 1);
  return out;
}

std::string to_string(CouplingModel model) {
  return model == CouplingModel::Full ? "full" : "rotating_wave";
}

void validate_shape(const ChainSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("chain needs n >= 2 oscillators, got " + std::to_string(spec.n));
  if (!std::isfinite(spec.omega) || spec.omega <= 0.0)
    throw std::invalid_argument("bare frequency omega must be positive and finite");
  if (!std::isfinite(spec.kappa)) throw std::invalid_argument("coupling kappa must be finite");
}

double block_coupling(const ChainSpec& spec) {
  return spec.model == CouplingModel::Full ? spec.kappa : 0.5 * spec.kappa;
}

QuadraticForm build_quadratic_form(const ChainSpec& spec) {
  validate_shape(spec);
  const int n = spec.n;
  Eigen::MatrixXd g = spec.omega * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  const double c = block_coupling(spec);
  for (int j = 0; j + 1 < n; ++j) {
    g(2 * j, 2 * j + 2) = g(2 * j + 2, 2 * j) = c;
    if (spec.model == CouplingModel::RotatingWave) g(2 * j + 1, 2 * j + 3) = g(2 * j + 3, 2 * j + 1) = c;
  }
  return {std::move(g)};
}

Eigen::VectorXd analytic_energies(const ChainSpec& spec) {
  validate_shape(spec);
  const double c = block_coupling(spec);
  Eigen::VectorXd e(spec.n);
  for (int j = 1; j <= spec.n; ++j) e(j - 1) = 0.5 * spec.omega + c * folded_cos(j, spec.n);
  return e;
}

bool is_stable(const ChainSpec& spec) noexcept {
  try {
    validate_stability(spec);
    return true;
  } catch (...) {
    return false;
  }
}

void validate_stability(const ChainSpec& spec) {
  const Eigen::VectorXd e = analytic_energies(spec);
  Eigen::Index worst = 0;
  const double e_min = e.minCoeff(&worst);
  if (e_min <= 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "unstable chain: |kappa| too large (eigen-frequency E_" << worst + 1 << " = " << e_min
        << " <= 0 for n=" << spec.n << ", omega=" << spec.omega << ", kappa=" << spec.kappa << ")";
    throw UnstableChain(msg.str());
  }
}

EigenSystem eigensystem(const ChainSpec& spec) {
  validate_stability(spec);
  const int n = spec.n;
  const Eigen::VectorXd e = analytic_energies(spec);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  const bool has_bare = n % 2 == 1;
  const int bare = (n + 1) / 2;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (has_bare && (a == bare) != (b == bare)) return a == bare;
    if (e(a - 1) != e(b - 1)) return e(a - 1) < e(b - 1);
    return a < b;
  });

  EigenSystem es;
  es.energies.resize(n);
  es.mode_matrix.resize(n, n);
  es.source_index = order;
  const double norm = std::sqrt(2.0 / (n + 1));
  for (int row = 0; row < n; ++row) {
    const int j = order[row];
    es.energies(row) = e(j - 1);
    for (int k = 1; k <= n; ++k) es.mode_matrix(row, k - 1) = norm * folded_sin(static_cast<long>(j) * k, n);
    // first non-zero entry positive
    for (int k = 0; k < n; ++k) {
      if (es.mode_matrix(row, k) != 0.0) {
        if (es.mode_matrix(row, k) < 0.0) es.mode_matrix.row(row) *= -1.0;
        break;
      }
    }
  }
  return es;
}

}  // namespace gausschain
