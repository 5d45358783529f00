#pragma once

#include <random>

#include <Eigen/Dense>

#include "gausschain/symplectic.hpp"

namespace testutil {

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

/// Each row of a equals +/- the same row of b.
inline double row_sign_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double plus = (a.row(i) - b.row(i)).cwiseAbs().maxCoeff();
    const double minus = (a.row(i) + b.row(i)).cwiseAbs().maxCoeff();
    worst = std::max(worst, std::min(plus, minus));
  }
  return worst;
}

inline gausschain::Gate random_gate(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> kind(0, 2), mode(1, n);
  std::uniform_real_distribution<double> angle(-3.2, 3.2), squeeze(-0.8, 0.8);
  switch (n > 1 ? kind(rng) : kind(rng) % 2) {
    case 0: return gausschain::Rotator{mode(rng), angle(rng)};
    case 1: return gausschain::Squeezer{mode(rng), squeeze(rng)};
    default: {
      const int a = mode(rng);
      int b = mode(rng);
      while (b == a) b = mode(rng);
      return gausschain::Coupler{a, b, angle(rng)};
    }
  }
}

inline Eigen::MatrixXd random_symplectic(std::mt19937_64& rng, int n, int gates = 30) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  for (int i = 0; i < gates; ++i) gausschain::left_apply(random_gate(rng, n), s);
  return s;
}

}  // namespace testutil
