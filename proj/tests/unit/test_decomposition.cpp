#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "gausschain/chain_model.hpp"
#include "gausschain/decomposition.hpp"
#include "gausschain/evolution_oracle.hpp"
#include "helpers.hpp"

using namespace gausschain;
using testutil::max_abs;

namespace {

std::size_t count_unbalanced(const std::vector<Gate>& gates) {
  std::size_t k = 0;
  for (const Gate& g : gates)
    if (const auto* c = std::get_if<Coupler>(&g); c && std::abs(std::abs(c->angle) - std::numbers::pi / 4) > 1e-9) ++k;
  return k;
}

}  // namespace

TEST_CASE("coupler layer reproduces the mode matrix") {
  for (int n = 2; n <= 10; ++n) {
    for (double kappa : {-0.25, 0.1, 0.3}) {
      const EigenSystem es = eigensystem({n, 1.0, kappa, CouplingModel::Full});
      const std::vector<Coupler> pattern = coupler_pattern(es);
      CAPTURE(n);
      CHECK(pattern.size() <= static_cast<std::size_t>(n * (n - 1) / 2));
      CHECK(testutil::row_sign_distance(coupler_product(pattern, n), es.mode_matrix) < 1e-10);
    }
  }
}

TEST_CASE("two oscillators need one balanced coupler") {
  const std::vector<Coupler> p = coupler_pattern(eigensystem({2, 1.0, 0.2, CouplingModel::Full}));
  REQUIRE(p.size() == 1);
  CHECK(std::abs(std::abs(p[0].angle) - std::numbers::pi / 4) < 1e-12);
}

TEST_CASE("four oscillators against a dense eigensolver") {
  const ChainSpec spec{4, 1.0, 0.1, CouplingModel::Full};
  const Eigen::MatrixXd t = 0.5 * build_quadratic_form(spec).position_block();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(t);
  const Eigen::MatrixXd product = coupler_product(coupler_pattern(eigensystem(spec)), 4);
  // ascending order for even n; dense columns are the rows up to sign
  CHECK(testutil::row_sign_distance(product, dense.eigenvectors().transpose()) < 1e-10);

  const GateSequence seq = build_propagator(spec, 10.0);
  CHECK(count_unbalanced(seq.gates) >= 2);
}

TEST_CASE("hand-built three-oscillator pattern") {
  // 50:50 on (1,3), then 50:50 on (2,3).
  const std::vector<Coupler> fixture{{1, 3, std::numbers::pi / 4}, {2, 3, std::numbers::pi / 4}};
  const ChainSpec spec{3, 1.0, 0.1, CouplingModel::Full};
  CHECK(testutil::row_sign_distance(coupler_product(fixture, 3), eigensystem(spec).mode_matrix) < 1e-15);
  for (double t : {0.0, 3.1, 22.05, 44.2}) {
    const GateSequence seq = build_propagator(spec, t, fixture);
    CHECK(max_abs(to_symplectic(seq).matrix() - direct_propagator(spec, t).matrix()) < 1e-9);
  }
  const std::vector<Coupler> wrong{{1, 2, std::numbers::pi / 4}};
  CHECK_THROWS_AS(build_propagator(spec, 1.0, wrong), std::invalid_argument);
}

TEST_CASE("mode schedule") {
  const ChainSpec spec{3, 1.0, 0.1, CouplingModel::Full};
  const EigenSystem es = eigensystem(spec);
  const double t = 7.5;
  const ModeSchedule s = mode_schedule(es, spec, t);
  CHECK(s.squeeze(0) == 0.0);
  CHECK(s.angles(0) == doctest::Approx(t / 2).epsilon(1e-15));
  const double high = 1 + std::numbers::sqrt2 * 0.1;
  CHECK(s.squeeze(2) == doctest::Approx(0.25 * std::log(high)).epsilon(1e-14));
  CHECK(s.squeeze(2) == doctest::Approx(0.03305).epsilon(1e-3));
  CHECK(s.angles(2) == doctest::Approx(0.5 * t * std::sqrt(high)).epsilon(1e-14));

  const ChainSpec rwa{3, 1.0, 0.1, CouplingModel::RotatingWave};
  const ModeSchedule r = mode_schedule(eigensystem(rwa), rwa, t);
  CHECK(max_abs(r.squeeze) == 0.0);
  CHECK(r.angles(1) == doctest::Approx(eigensystem(rwa).energies(1) * t).epsilon(1e-15));
}

TEST_CASE("propagator equals the oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nd(2, 8);
  std::uniform_real_distribution<double> kd(-0.3, 0.3), td(0.0, 100.0), wd(0.5, 2.0);
  int checked = 0;
  while (checked < 120) {
    const double w = wd(rng);
    const ChainSpec spec{nd(rng), w, kd(rng) * w, checked % 3 == 2 ? CouplingModel::RotatingWave : CouplingModel::Full};
    if (!is_stable(spec)) continue;
    const double t = td(rng) / w;
    const GateSequence seq = build_propagator(spec, t);
    const Symplectic s = to_symplectic(seq);
    CAPTURE(spec.n);
    CAPTURE(spec.kappa);
    CAPTURE(t);
    CHECK(max_abs(s.matrix() - direct_propagator(spec, t).matrix()) < 1e-9);
    CHECK(symplectic_error(s) < 1e-10);
    CHECK(is_palindromic(seq));
    ++checked;
  }
}

TEST_CASE("special times and couplings") {
  const ChainSpec spec{3, 1.0, 0.1, CouplingModel::Full};
  CHECK(max_abs(to_symplectic(build_propagator(spec, 0.0)).matrix() - Eigen::MatrixXd::Identity(6, 6)) < 1e-12);
  CHECK(max_abs(to_symplectic(build_propagator(spec, 44.2)).matrix() - direct_propagator(spec, 44.2).matrix()) < 1e-9);

  const double t = 3.3;
  const Eigen::MatrixXd free = to_symplectic(build_propagator({3, 1.0, 0.0, CouplingModel::Full}, t)).matrix();
  Eigen::Matrix2d rot;
  rot << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  for (int j = 0; j < 3; ++j) CHECK(max_abs(free.block(2 * j, 2 * j, 2, 2) - rot) < 1e-12);
}

TEST_CASE("sequence structure") {
  for (int n = 2; n <= 7; ++n) {
    const GateSequence seq = build_propagator({n, 1.0, 0.15, CouplingModel::Full}, 5.0);
    int zero_squeeze = 0;
    for (const Gate& g : seq.gates)
      if (const auto* s = std::get_if<Squeezer>(&g); s && s->squeeze == 0.0) ++zero_squeeze;
    // each layer (before and after the rotators) carries the bare mode once
    CHECK(zero_squeeze == (n % 2 == 1 ? 2 : 0));

    const GateSequence rwa = build_propagator({n, 1.0, 0.15, CouplingModel::RotatingWave}, 5.0);
    CHECK(std::none_of(rwa.gates.begin(), rwa.gates.end(), [](const Gate& g) { return std::holds_alternative<Squeezer>(g); }));
    CHECK(is_palindromic(rwa));
  }

  GateSequence seq = build_propagator({4, 1.0, 0.15, CouplingModel::Full}, 5.0);
  REQUIRE(is_palindromic(seq));
  std::get<Coupler>(seq.gates.back()).angle += 1e-3;
  CHECK_FALSE(is_palindromic(seq));

  GateSequence seq2 = build_propagator({4, 1.0, 0.15, CouplingModel::Full}, 5.0);
  for (Gate& g : seq2.gates)
    if (auto* s = std::get_if<Squeezer>(&g)) {
      s->squeeze *= 2;
      break;
    }
  CHECK_FALSE(is_palindromic(seq2));
}

TEST_CASE("unstable chain") {
  CHECK_THROWS_AS(build_propagator({3, 1.0, 0.8, CouplingModel::Full}, 1.0), UnstableChain);
}

TEST_CASE("circuit text round trip") {
  const GateSequence seq = build_propagator({5, 1.0, 0.1, CouplingModel::Full}, 44.2);
  const std::string text = export_circuit(seq);
  CHECK(parse_circuit(text) == seq.gates);
  CHECK(export_circuit(std::span<const Gate>{}).empty());
  CHECK(parse_circuit("").empty());

  const std::string n3 = export_circuit(build_propagator({3, 1.0, 0.1, CouplingModel::Full}, 1.0));
  CHECK(n3.find("coupler 1 3 ") != std::string::npos);
  CHECK(n3.rfind("coupler", 0) == 0);

  const auto parsed = parse_circuit("# header\n\n  rotator 2 0.5   # trailing\ncoupler 1 3 -0.785398163397448279\nsqueezer 1 1e-3\n");
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0] == Gate(Rotator{2, 0.5}));
  CHECK(parsed[2] == Gate(Squeezer{1, 1e-3}));

  CHECK_THROWS_WITH_AS(parse_circuit("rotator 1 0.1\nwarp 1 2\n"), doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_circuit("coupler 1 x 0.1\n"), doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("squeezer 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("rotator 1 0.1abc\n"), std::invalid_argument);

  // the parsed gates rebuild the same map
  CHECK(max_abs(gates_to_symplectic(parse_circuit(text), 5).matrix() - to_symplectic(seq).matrix()) == 0.0);
}
