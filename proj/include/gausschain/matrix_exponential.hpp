#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace gausschain {

/// exp(m) by scaling and squaring with a [13/13] Pade approximant
/// (Higham's coefficients and threshold). Accurate to a few ulps times
/// the squaring count for ||m||_1 up to ~1e3.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix_exponential(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exponential needs a square matrix");
  if (!m.allFinite()) throw std::invalid_argument("matrix_exponential needs finite entries");

  static constexpr double b[] = {64764752532480000.0,
                                 32382376266240000.0,
                                 7771770303897600.0,
                                 1187353796428800.0,
                                 129060195264000.0,
                                 10559470521600.0,
                                 670442572800.0,
                                 33522128640.0,
                                 1323241920.0,
                                 40840800.0,
                                 960960.0,
                                 16380.0,
                                 182.0,
                                 1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = m.rows();
  const Mat id = Mat::Identity(n, n);
  if (n == 0) return Mat(0, 0);

  const Scalar norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == Scalar(0)) return id;
  int squarings = 0;
  if (norm1 > Scalar(theta13)) squarings = static_cast<int>(std::ceil(std::log2(norm1 / Scalar(theta13))));
  const Mat a = m / std::ldexp(Scalar(1), squarings);

  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  auto c = [](int i) { return Scalar(b[i]); };

  const Mat u_inner = a6 * (c(13) * a6 + c(11) * a4 + c(9) * a2) + c(7) * a6 + c(5) * a4 + c(3) * a2 + c(1) * id;
  const Mat u = a * u_inner;
  const Mat v = a6 * (c(12) * a6 + c(10) * a4 + c(8) * a2) + c(6) * a6 + c(4) * a4 + c(2) * a2 + c(0) * id;

  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = (r * r).eval();
  return r;
}

}  // namespace gausschain
