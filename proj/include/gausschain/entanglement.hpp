#pragma once

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gausschain/symplectic.hpp"

namespace gausschain {

struct ModePair {
  int a = 1;
  int b = 2;
  friend auto operator<=>(const ModePair&, const ModePair&) = default;
};

/// Reduced covariance of modes (a, b) in the ordering (q_a, p_a, q_b, p_b).
template <typename Scalar = double>
struct PairState {
  Eigen::Matrix<Scalar, 4, 4> v;
  ModePair pair;
};

template <typename Scalar>
PairState<Scalar> reduce_pair(const CovarianceMatrix<Scalar>& cov, int a, int b) {
  const int n = static_cast<int>(cov.modes());
  if (a < 1 || b < 1 || a > n || b > n)
    throw std::out_of_range("pair (" + std::to_string(a) + "," + std::to_string(b) + ") outside [1," + std::to_string(n) + "]");
  if (a == b) throw std::invalid_argument("pair needs two distinct modes");
  const std::array<Eigen::Index, 4> idx{2 * (a - 1), 2 * (a - 1) + 1, 2 * (b - 1), 2 * (b - 1) + 1};
  PairState<Scalar> out;
  out.pair = {a, b};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.v(i, j) = cov.matrix()(idx[i], idx[j]);
  return out;
}

/// Time reversal on mode b: P v P with P = diag(1, 1, 1, -1).
template <typename Scalar>
PairState<Scalar> partial_transpose(const PairState<Scalar>& p) {
  PairState<Scalar> out = p;
  out.v.row(3) *= Scalar(-1);
  out.v.col(3) *= Scalar(-1);
  return out;
}

/// Symplectic eigenvalues of a two-mode covariance from the invariants
/// Delta = det A + det B + 2 det C and det V.
template <typename Scalar>
std::array<Scalar, 2> symplectic_spectrum_invariants(const Eigen::Matrix<Scalar, 4, 4>& v) {
  const Scalar det_a = v.template block<2, 2>(0, 0).determinant();
  const Scalar det_b = v.template block<2, 2>(2, 2).determinant();
  const Scalar det_c = v.template block<2, 2>(0, 2).determinant();
  const Scalar delta = det_a + det_b + Scalar(2) * det_c;
  const Scalar det_v = v.determinant();
  const Scalar disc = std::sqrt(std::max(Scalar(0), delta * delta - Scalar(4) * det_v));
  const Scalar hi2 = (delta + disc) / Scalar(2);
  // nu_-^2 nu_+^2 = det V; avoids cancellation in (delta - disc) / 2
  const Scalar lo2 = hi2 > Scalar(0) ? std::max(Scalar(0), det_v / hi2) : Scalar(0);
  return {std::sqrt(lo2), std::sqrt(hi2)};
}

/// Two representatives (ascending) of the symplectic spectrum, by numerical
/// eigen-decomposition, cross-checked against the invariants
/// nu_-^2 + nu_+^2 = Delta and nu_-^2 nu_+^2 = det V. The invariants are
/// compared rather than the closed-form roots, which lose half their digits
/// when nu_- ~ nu_+. A relative discrepancy above 1e-8 is an internal error.
template <typename Scalar>
std::array<Scalar, 2> symplectic_spectrum_2mode(const PairState<Scalar>& p) {
  const VectorX<Scalar> nu = symplectic_eigenvalues(p.v);
  const Scalar lo2 = nu(0) * nu(0), hi2 = nu(1) * nu(1);
  const Scalar delta = p.v.template block<2, 2>(0, 0).determinant() + p.v.template block<2, 2>(2, 2).determinant() +
                       Scalar(2) * p.v.template block<2, 2>(0, 2).determinant();
  const Scalar scale = std::max(Scalar(1), hi2);
  if (std::abs(lo2 + hi2 - delta) > Scalar(1e-8) * scale || std::abs(lo2 * hi2 - p.v.determinant()) > Scalar(1e-8) * scale * scale)
    throw std::logic_error("two-mode symplectic spectrum: eigen-solver and invariant formula disagree");
  return {nu(0), nu(1)};
}

/// Logarithmic negativity in ebits: sum_n max(0, -log2 gamma'_n) over the
/// partially transposed spectrum. Throws if the pair itself is unphysical
/// (a symplectic eigenvalue below 1 - 1e-10).
template <typename Scalar>
Scalar log_negativity(const PairState<Scalar>& p) {
  const auto own = symplectic_spectrum_2mode(p);
  if (own[0] < Scalar(1) - Scalar(1e-10))
    throw std::domain_error("log_negativity: pair (" + std::to_string(p.pair.a) + "," + std::to_string(p.pair.b) +
                            ") is not a physical state (symplectic eigenvalue " + std::to_string(double(own[0])) + ")");
  Scalar total = 0;
  for (Scalar g : symplectic_spectrum_2mode(partial_transpose(p))) {
    if (std::abs(g - Scalar(1)) <= Scalar(1e-12)) continue;
    if (g < Scalar(1)) total += -std::log2(g);
  }
  return total;
}

template <typename Scalar>
Scalar log_negativity(const CovarianceMatrix<Scalar>& cov, int a, int b) {
  return log_negativity(reduce_pair(cov, a, b));
}

/// Local 2x2 blocks L_j = V_jj and cross blocks C_jk = V_jk (j < k).
struct CorrelationBlocks {
  std::vector<Eigen::Matrix2d> locals;
  std::map<ModePair, Eigen::Matrix2d> cross;

  const Eigen::Matrix2d& local(int j) const { return locals.at(j - 1); }
  const Eigen::Matrix2d& correlation(int j, int k) const { return cross.at({j, k}); }
};

CorrelationBlocks correlation_blocks(const Covariance& v);

/// Rebuilds V from its blocks (C_kj = C_jk^T).
Covariance reassemble(const CorrelationBlocks& blocks);

/// Elementary correlation matrix of a normal mode squeezed by s and turned
/// by phi:
///   [[-e^{-2s} sin^2(phi) sinh(2s),  sin(2 phi) sinh(2s) / 2],
///    [ sin(2 phi) sinh(2s) / 2,      e^{2s} sin^2(phi) sinh(2s)]]
Eigen::Matrix2d elementary_c_matrix(double s, double phi);

/// Closed-form three-oscillator vacuum evolution from the two non-bare
/// elementary matrices (c_low for the lower frequency, c_high for the upper):
///   C13 = (c_low + c_high) / 2, C12 = C23 = (c_high - c_low) / sqrt 2,
///   L1 = L3 = 1 + C13, L2 = 1 + 2 C13.
Covariance assemble_three_mode_vacuum(const Eigen::Matrix2d& c_low, const Eigen::Matrix2d& c_high);

}  // namespace gausschain
