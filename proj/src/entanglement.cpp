#include "gausschain/entanglement.hpp"

#include <numbers>

namespace gausschain {

CorrelationBlocks correlation_blocks(const Covariance& v) {
  const int n = static_cast<int>(v.modes());
  CorrelationBlocks out;
  out.locals.reserve(n);
  for (int j = 1; j <= n; ++j) {
    out.locals.push_back(v.block(j, j));
    for (int k = j + 1; k <= n; ++k) out.cross.emplace(ModePair{j, k}, v.block(j, k));
  }
  return out;
}

Covariance reassemble(const CorrelationBlocks& blocks) {
  const int n = static_cast<int>(blocks.locals.size());
  Eigen::MatrixXd v(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    v.block<2, 2>(2 * j, 2 * j) = blocks.locals[j];
    for (int k = j + 1; k < n; ++k) {
      const Eigen::Matrix2d& c = blocks.cross.at({j + 1, k + 1});
      v.block<2, 2>(2 * j, 2 * k) = c;
      v.block<2, 2>(2 * k, 2 * j) = c.transpose();
    }
  }
  return Covariance(std::move(v));
}

Eigen::Matrix2d elementary_c_matrix(double s, double phi) {
  const double sh = std::sinh(2.0 * s);
  const double sin2 = std::sin(phi) * std::sin(phi);
  const double off = 0.5 * std::sin(2.0 * phi) * sh;
  Eigen::Matrix2d c;
  c << -std::exp(-2.0 * s) * sin2 * sh, off, off, std::exp(2.0 * s) * sin2 * sh;
  return c;
}

Covariance assemble_three_mode_vacuum(const Eigen::Matrix2d& c_low, const Eigen::Matrix2d& c_high) {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d c13 = 0.5 * (c_low + c_high);
  const Eigen::Matrix2d c12 = (c_high - c_low) / std::numbers::sqrt2;
  CorrelationBlocks b;
  b.locals = {id + c13, id + 2.0 * c13, id + c13};
  b.cross.emplace(ModePair{1, 2}, c12);
  b.cross.emplace(ModePair{1, 3}, c13);
  b.cross.emplace(ModePair{2, 3}, c12);
  return reassemble(b);
}

}  // namespace gausschain
