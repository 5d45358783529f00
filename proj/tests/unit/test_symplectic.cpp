#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gausschain/symplectic.hpp"
#include "helpers.hpp"

using namespace gausschain;
using testutil::max_abs;

TEST_CASE("gate matrices") {
  SUBCASE("zero rotator is the identity") {
    CHECK(max_abs(gate_to_symplectic(Rotator{1, 0.0}, 1).matrix() - Eigen::Matrix2d::Identity()) == 0.0);
  }
  SUBCASE("rotator turns phase space by twice its parameter") {
    const double phi = 0.3;
    Eigen::Matrix2d expect;
    expect << std::cos(2 * phi), std::sin(2 * phi), -std::sin(2 * phi), std::cos(2 * phi);
    CHECK(max_abs(gate_to_symplectic(Rotator{1, phi}, 1).matrix() - expect) < 1e-15);
  }
  SUBCASE("squeezer") {
    const Eigen::MatrixXd s = gate_to_symplectic(Squeezer{1, 0.2}, 1).matrix();
    CHECK(s(0, 0) == doctest::Approx(0.8187).epsilon(1e-4));
    CHECK(s(1, 1) == doctest::Approx(1.2214).epsilon(1e-4));
    CHECK(s(0, 1) == 0.0);
  }
  SUBCASE("balanced coupler") {
    const Eigen::MatrixXd s = gate_to_symplectic(Coupler{1, 2, std::numbers::pi / 4}, 2).matrix();
    const double h = 1 / std::numbers::sqrt2;
    Eigen::Matrix4d expect;
    expect << h, 0, -h, 0,  //
        0, h, 0, -h,        //
        h, 0, h, 0,         //
        0, h, 0, h;
    CHECK(max_abs(s - expect) < 1e-15);
  }
  SUBCASE("mode range") {
    CHECK_THROWS_AS(gate_to_symplectic(Rotator{3, 0.1}, 2), std::out_of_range);
    CHECK_THROWS_AS(gate_to_symplectic(Coupler{1, 1, 0.1}, 2), std::invalid_argument);
  }
}

TEST_CASE("random gates are symplectic with unit determinant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 5;
    const Gate g = testutil::random_gate(rng, n);
    const Eigen::MatrixXd s = gate_to_symplectic(g, n).matrix();
    CHECK(symplectic_error(s) < 1e-12);
    CHECK(std::abs(s.determinant() - 1.0) < 1e-10);
    const Eigen::MatrixXd back = gate_to_symplectic(inverse(g), n).matrix() * s;
    CHECK(max_abs(back - Eigen::MatrixXd::Identity(2 * n, 2 * n)) < 1e-12);
  }
}

TEST_CASE("composition order") {
  const Symplectic a = gate_to_symplectic(Squeezer{1, 0.4}, 2);
  const Symplectic b = gate_to_symplectic(Coupler{1, 2, 0.3}, 2);
  CHECK(max_abs(compose({a, b}).matrix() - b.matrix() * a.matrix()) == 0.0);
  CHECK(max_abs(compose({Symplectic::identity(2), Symplectic::identity(2)}).matrix() - Eigen::Matrix4d::Identity()) == 0.0);

  const std::vector<Gate> gates{Squeezer{1, 0.4}, Coupler{1, 2, 0.3}};
  CHECK(max_abs(gates_to_symplectic(gates, 2).matrix() - b.matrix() * a.matrix()) < 1e-15);

  // Squeezer, half-turn rotator, squeezer: multiply the 2x2 blocks by hand.
  const double s = 0.25;
  const std::vector<Gate> sandwich{Squeezer{1, s}, Rotator{1, std::numbers::pi / 2}, Squeezer{1, s}};
  Eigen::Matrix2d sq, rot;
  sq << std::exp(-s), 0, 0, std::exp(s);
  rot << std::cos(std::numbers::pi), std::sin(std::numbers::pi), -std::sin(std::numbers::pi), std::cos(std::numbers::pi);
  CHECK(max_abs(gates_to_symplectic(sandwich, 1).matrix() - sq * rot * sq) < 1e-15);

  CHECK_THROWS_AS(compose({Symplectic::identity(1), Symplectic::identity(2)}), std::invalid_argument);
}

TEST_CASE("covariance construction") {
  CHECK(max_abs(Covariance::vacuum(3).matrix() - Eigen::MatrixXd::Identity(6, 6)) == 0.0);
  CHECK(Covariance::vacuum(5).modes() == 5);
  CHECK_THROWS_AS(Covariance(Eigen::MatrixXd::Identity(3, 3)), std::invalid_argument);
  Eigen::Matrix2d skew;
  skew << 1, 0.1, 0, 1;
  CHECK_THROWS_AS(Covariance{Eigen::MatrixXd(skew)}, std::invalid_argument);
}

TEST_CASE("state transformation") {
  SUBCASE("squeezing the vacuum") {
    const double r = 0.35;
    const Covariance v = apply(gate_to_symplectic(Squeezer{1, r}, 1), Covariance::vacuum(1));
    CHECK(v.matrix()(0, 0) == doctest::Approx(std::exp(-2 * r)).epsilon(1e-15));
    CHECK(v.matrix()(1, 1) == doctest::Approx(std::exp(2 * r)).epsilon(1e-15));
  }
  SUBCASE("two-mode squeezing from a coupler") {
    const double r = 0.2;
    Eigen::Matrix4d v0 = Eigen::Matrix4d::Zero();
    v0.diagonal() << std::exp(-2 * r), std::exp(2 * r), std::exp(2 * r), std::exp(-2 * r);
    const Covariance v = apply(gate_to_symplectic(Coupler{1, 2, std::numbers::pi / 4}, 2), Covariance(v0));
    const double ch = std::cosh(2 * r), sh = std::sinh(2 * r);
    Eigen::Matrix4d expect;
    expect << ch, 0, -sh, 0,  //
        0, ch, 0, sh,         //
        -sh, 0, ch, 0,        //
        0, sh, 0, ch;
    CHECK(max_abs(v.matrix() - expect) < 1e-14);
  }
  SUBCASE("pure states stay pure") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 5; ++n) {
      const Covariance v = apply(Symplectic(testutil::random_symplectic(rng, n)), Covariance::vacuum(n));
      CHECK(max_abs(v.matrix() - v.matrix().transpose()) == 0.0);
      CHECK(max_abs(check_state(v) - Eigen::VectorXd::Ones(n)) < 1e-10);
    }
  }
}

TEST_CASE("symplectic spectrum") {
  CHECK(max_abs(check_state(Covariance::vacuum(3)) - Eigen::Vector3d::Ones()) < 1e-15);

  Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
  sq.diagonal() << std::exp(-0.4), std::exp(0.4);
  CHECK(check_state(Covariance(sq))(0) == doctest::Approx(1.0).epsilon(1e-14));

  const Covariance sub(0.5 * Eigen::Matrix2d::Identity());
  CHECK(check_state(sub)(0) == doctest::Approx(0.5));
  CHECK_FALSE(is_physical(sub));

  // Williamson form with known spectrum, checked against |eig(i Omega V)|.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> nu_dist(1.0, 3.0);
  for (int n = 1; n <= 5; ++n) {
    Eigen::VectorXd nu(n);
    Eigen::VectorXd d(2 * n);
    for (int j = 0; j < n; ++j) {
      nu(j) = nu_dist(rng);
      d(2 * j) = d(2 * j + 1) = nu(j);
    }
    const Eigen::MatrixXd s = testutil::random_symplectic(rng, n);
    const Eigen::MatrixXd v = s * d.asDiagonal() * s.transpose();
    const Eigen::MatrixXd vs = 0.5 * (v + v.transpose());

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> brute(std::complex<double>(0, 1) * omega_form(n) * vs);
    std::vector<double> mods;
    for (int i = 0; i < 2 * n; ++i) mods.push_back(std::abs(brute.eigenvalues()(i)));
    std::sort(mods.begin(), mods.end());
    std::sort(nu.data(), nu.data() + n);

    const Eigen::VectorXd mine = symplectic_eigenvalues(vs);
    for (int j = 0; j < n; ++j) {
      CHECK(mine(j) == doctest::Approx(nu(j)).epsilon(1e-9));
      CHECK(mine(j) == doctest::Approx(mods[2 * j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("single precision instantiation") {
  const SymplecticMap<float> s = gate_to_symplectic<float>(Coupler{1, 2, 0.4}, 2);
  CHECK(symplectic_error(s) < 1e-6f);
  const CovarianceMatrix<float> v = apply(s, CovarianceMatrix<float>::vacuum(2));
  CHECK(is_physical(v, 1e-5f));
}
