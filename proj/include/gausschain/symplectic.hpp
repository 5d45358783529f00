#pragma once

// Phase-space machinery for zero-mean Gaussian states.
//
// Conventions used throughout the library:
//   * quadratures are interleaved, x = (q1, p1, ..., qN, pN);
//   * covariance V_ab = <{x_a, x_b}>, so the vacuum is the identity;
//   * a map S acts on quadratures as x -> S x and on states as V -> S V S^T;
//   * omega_form(n) = (+)_j [[0, 1], [-1, 0]], and S is symplectic iff
//     S Omega S^T = Omega.
// Modes are 1-based in every public signature.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gausschain {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Single-mode phase rotation R(phi) = exp[i phi (q^2 + p^2)].
/// In phase space this rotates (q, p) by the angle 2 phi.
struct Rotator {
  int mode = 1;
  double angle = 0.0;
  friend bool operator==(const Rotator&, const Rotator&) = default;
};

/// Single-mode squeezer: q -> e^{-s} q, p -> e^{s} p.
struct Squeezer {
  int mode = 1;
  double squeeze = 0.0;
  friend bool operator==(const Squeezer&, const Squeezer&) = default;
};

/// Two-mode coupler (beam splitter) with transmittivity cos(theta) and
/// reflectivity sin(theta): x_j -> t x_j - r x_k, x_k -> r x_j + t x_k on
/// both quadratures.
struct Coupler {
  int first = 1;
  int second = 2;
  double angle = 0.0;
  friend bool operator==(const Coupler&, const Coupler&) = default;
};

using Gate = std::variant<Rotator, Squeezer, Coupler>;

/// Inverse gate (parameter negated).
inline Gate inverse(const Gate& gate) {
  return std::visit(
      [](auto g) -> Gate {
        using T = decltype(g);
        if constexpr (std::is_same_v<T, Rotator>) g.angle = -g.angle;
        else if constexpr (std::is_same_v<T, Squeezer>) g.squeeze = -g.squeeze;
        else g.angle = -g.angle;
        return g;
      },
      gate);
}

inline void check_gate(const Gate& gate, int n) {
  auto in_range = [n](int m) { return m >= 1 && m <= n; };
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Coupler>) {
          if (!in_range(g.first) || !in_range(g.second))
            throw std::out_of_range("coupler modes (" + std::to_string(g.first) + "," + std::to_string(g.second) +
                                    ") outside [1," + std::to_string(n) + "]");
          if (g.first == g.second) throw std::invalid_argument("coupler needs two distinct modes");
        } else {
          if (!in_range(g.mode))
            throw std::out_of_range("gate mode " + std::to_string(g.mode) + " outside [1," + std::to_string(n) + "]");
        }
      },
      gate);
}

template <typename Scalar = double>
MatrixX<Scalar> omega_form(Eigen::Index n) {
  MatrixX<Scalar> om = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    om(2 * j, 2 * j + 1) = Scalar(1);
    om(2 * j + 1, 2 * j) = Scalar(-1);
  }
  return om;
}

template <typename Scalar = double>
class CovarianceMatrix {
 public:
  /// Throws if v is not square, of even size, or symmetric within 1e-12
  /// (relative to its largest entry).
  explicit CovarianceMatrix(MatrixX<Scalar> v) : v_(std::move(v)) {
    if (v_.rows() != v_.cols() || v_.rows() == 0 || v_.rows() % 2 != 0)
      throw std::invalid_argument("covariance matrix must be square with even, non-zero dimension");
    const Scalar scale = std::max(Scalar(1), v_.cwiseAbs().maxCoeff());
    if ((v_ - v_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale)
      throw std::invalid_argument("covariance matrix is not symmetric");
  }

  static CovarianceMatrix vacuum(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("vacuum needs at least one mode");
    return CovarianceMatrix(MatrixX<Scalar>::Identity(2 * n, 2 * n));
  }

  Eigen::Index modes() const { return v_.rows() / 2; }
  const MatrixX<Scalar>& matrix() const { return v_; }

  /// 2x2 block of modes (j, k), 1-based.
  Eigen::Matrix<Scalar, 2, 2> block(Eigen::Index j, Eigen::Index k) const {
    return v_.template block<2, 2>(2 * (j - 1), 2 * (k - 1));
  }

 private:
  MatrixX<Scalar> v_;
};

template <typename Scalar = double>
class SymplecticMap {
 public:
  explicit SymplecticMap(MatrixX<Scalar> s) : s_(std::move(s)) {
    if (s_.rows() != s_.cols() || s_.rows() == 0 || s_.rows() % 2 != 0)
      throw std::invalid_argument("symplectic map must be square with even, non-zero dimension");
  }

  static SymplecticMap identity(Eigen::Index n) { return SymplecticMap(MatrixX<Scalar>::Identity(2 * n, 2 * n)); }

  Eigen::Index modes() const { return s_.rows() / 2; }
  const MatrixX<Scalar>& matrix() const { return s_; }

 private:
  MatrixX<Scalar> s_;
};

/// max |S Omega S^T - Omega|.
template <typename Derived>
typename Derived::Scalar symplectic_error(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> om = omega_form<Scalar>(s.rows() / 2);
  return (s * om * s.transpose() - om).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar symplectic_error(const SymplecticMap<Scalar>& map) {
  return symplectic_error(map.matrix());
}

/// Left-multiplies rows of m in place by the gate's phase-space matrix,
/// i.e. m <- S_gate m. O(cols) per touched row.
template <typename Derived>
void left_apply(const Gate& gate, Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  check_gate(gate, static_cast<int>(m.rows() / 2));
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Rotator>) {
          const Scalar c = std::cos(Scalar(2) * Scalar(g.angle));
          const Scalar s = std::sin(Scalar(2) * Scalar(g.angle));
          const Eigen::Index q = 2 * (g.mode - 1);
          const auto rq = m.row(q).eval();
          const auto rp = m.row(q + 1).eval();
          m.row(q) = c * rq + s * rp;
          m.row(q + 1) = -s * rq + c * rp;
        } else if constexpr (std::is_same_v<T, Squeezer>) {
          const Eigen::Index q = 2 * (g.mode - 1);
          m.row(q) *= std::exp(-Scalar(g.squeeze));
          m.row(q + 1) *= std::exp(Scalar(g.squeeze));
        } else {
          const Scalar t = std::cos(Scalar(g.angle));
          const Scalar r = std::sin(Scalar(g.angle));
          for (Eigen::Index quad = 0; quad < 2; ++quad) {
            const Eigen::Index a = 2 * (g.first - 1) + quad;
            const Eigen::Index b = 2 * (g.second - 1) + quad;
            const auto ra = m.row(a).eval();
            const auto rb = m.row(b).eval();
            m.row(a) = t * ra - r * rb;
            m.row(b) = r * ra + t * rb;
          }
        }
      },
      gate);
}

template <typename Scalar = double>
SymplecticMap<Scalar> gate_to_symplectic(const Gate& gate, Eigen::Index n) {
  MatrixX<Scalar> s = MatrixX<Scalar>::Identity(2 * n, 2 * n);
  left_apply(gate, s);
  return SymplecticMap<Scalar>(std::move(s));
}

/// Product realizing "apply maps[0], then maps[1], ...".
template <typename Scalar>
SymplecticMap<Scalar> compose(std::span<const SymplecticMap<Scalar>> maps) {
  if (maps.empty()) throw std::invalid_argument("compose needs at least one map");
  MatrixX<Scalar> acc = maps.front().matrix();
  for (std::size_t i = 1; i < maps.size(); ++i) {
    if (maps[i].modes() != maps.front().modes()) throw std::invalid_argument("compose: mode-count mismatch");
    acc = maps[i].matrix() * acc;
  }
  return SymplecticMap<Scalar>(std::move(acc));
}

template <typename Scalar>
SymplecticMap<Scalar> compose(std::initializer_list<SymplecticMap<Scalar>> maps) {
  return compose(std::span<const SymplecticMap<Scalar>>(maps.begin(), maps.size()));
}

/// Composite phase-space map of a gate list in temporal order.
template <typename Scalar = double>
SymplecticMap<Scalar> gates_to_symplectic(std::span<const Gate> gates, Eigen::Index n) {
  MatrixX<Scalar> s = MatrixX<Scalar>::Identity(2 * n, 2 * n);
  for (const Gate& g : gates) left_apply(g, s);
  return SymplecticMap<Scalar>(std::move(s));
}

/// V -> S V S^T, re-symmetrized to absorb rounding.
template <typename Scalar>
CovarianceMatrix<Scalar> apply(const SymplecticMap<Scalar>& map, const CovarianceMatrix<Scalar>& v) {
  if (map.modes() != v.modes()) throw std::invalid_argument("apply: mode-count mismatch");
  MatrixX<Scalar> out = map.matrix() * v.matrix() * map.matrix().transpose();
  out = (Scalar(0.5) * (out + out.transpose())).eval();
  return CovarianceMatrix<Scalar>(std::move(out));
}

/// Symplectic eigenvalues of a symmetric 2n x 2n matrix: the moduli of the
/// eigenvalues of Omega V (which come in pairs +/- i nu), one per pair,
/// sorted ascending.
///
/// For positive definite V (every covariance, and every partial transpose
/// of one) the pairs are read off as singular values of the antisymmetric
/// L^T Omega L, V = L L^T, which is similar to Omega V. The general real
/// Schur iteration occasionally fails to converge on the nearly degenerate
/// spectra of almost-pure states. Other matrices go through EigenSolver and
/// throw if an eigenvalue carries a real part beyond 1e-9 of its modulus.
template <typename Derived>
VectorX<typename Derived::Scalar> symplectic_eigenvalues(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  if (v.rows() != v.cols() || v.rows() % 2 != 0) throw std::invalid_argument("symplectic spectrum needs a 2n x 2n matrix");
  const Scalar scale = std::max(Scalar(1), v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12) * scale)
    throw std::invalid_argument("symplectic spectrum needs a symmetric matrix");
  const Eigen::Index n = v.rows() / 2;
  VectorX<Scalar> nu(n);

  const MatrixX<Scalar> sym = v;
  Eigen::LLT<MatrixX<Scalar>> llt(sym);
  if (llt.info() == Eigen::Success) {
    const MatrixX<Scalar> l = llt.matrixL();
    const MatrixX<Scalar> m = l.transpose() * omega_form<Scalar>(n) * l;
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(m);
    VectorX<Scalar> sv = svd.singularValues();
    std::sort(sv.data(), sv.data() + sv.size());
    for (Eigen::Index i = 0; i < n; ++i) nu(i) = Scalar(0.5) * (sv(2 * i) + sv(2 * i + 1));
    return nu;
  }

  const MatrixX<Scalar> ov = omega_form<Scalar>(n) * v;
  Eigen::EigenSolver<MatrixX<Scalar>> solver(ov, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symplectic spectrum: eigen-solver failed");
  const auto lambda = solver.eigenvalues();
  std::vector<Scalar> moduli(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const Scalar mod = std::abs(lambda(i));
    if (std::abs(lambda(i).real()) > Scalar(1e-9) * std::max(Scalar(1), mod))
      throw std::runtime_error("symplectic spectrum: eigenvalue with real part " + std::to_string(double(lambda(i).real())));
    moduli[i] = std::abs(lambda(i).imag());
  }
  std::sort(moduli.begin(), moduli.end());
  for (Eigen::Index i = 0; i < n; ++i) nu(i) = Scalar(0.5) * (moduli[2 * i] + moduli[2 * i + 1]);
  return nu;
}

template <typename Scalar>
VectorX<Scalar> check_state(const CovarianceMatrix<Scalar>& v) {
  return symplectic_eigenvalues(v.matrix());
}

/// Bona fide state: every symplectic eigenvalue >= 1 - tolerance.
template <typename Scalar>
bool is_physical(const CovarianceMatrix<Scalar>& v, Scalar tolerance = Scalar(1e-10)) {
  return check_state(v).minCoeff() >= Scalar(1) - tolerance;
}

using Covariance = CovarianceMatrix<double>;
using Symplectic = SymplecticMap<double>;

}  // namespace gausschain
