#include "gausschain/decomposition.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace gausschain {

namespace {

constexpr double kOrthogonalityTolerance = 1e-10;

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void require_orthogonal(const Eigen::MatrixXd& a, const char* what) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || (a * a.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > kOrthogonalityTolerance)
    throw std::invalid_argument(std::string(what) + ": mode matrix is not orthogonal");
}

// Coupler angles are the same on q and p, so the n x n action suffices.
void left_apply_rows(const Coupler& c, Eigen::MatrixXd& a) {
  const double t = std::cos(c.angle);
  const double r = std::sin(c.angle);
  const Eigen::VectorXd ra = a.row(c.first - 1);
  const Eigen::VectorXd rb = a.row(c.second - 1);
  a.row(c.first - 1) = t * ra - r * rb;
  a.row(c.second - 1) = r * ra + t * rb;
}

}  // namespace

std::vector<Coupler> coupler_pattern(const EigenSystem& es) {
  Eigen::MatrixXd a = es.mode_matrix;
  const int n = static_cast<int>(a.rows());
  require_orthogonal(a, "coupler_pattern");
  if (a.determinant() < 0.0) a.row(n - 1) *= -1.0;

  std::vector<Coupler> eliminations;
  for (int col = 0; col + 1 < n; ++col) {
    for (int row = col + 1; row < n; ++row) {
      const double below = a(row, col);
      if (below == 0.0) continue;
      const Coupler g{col + 1, row + 1, std::atan2(-below, a(col, col))};
      left_apply_rows(g, a);
      a(row, col) = 0.0;
      eliminations.push_back(g);
    }
  }
  if ((a - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > kOrthogonalityTolerance)
    throw std::runtime_error("coupler_pattern: elimination did not reach the identity");

  // G_m ... G_1 alpha = 1  =>  alpha = G_1^T ... G_m^T, applied G_m^T first.
  std::vector<Coupler> pattern;
  pattern.reserve(eliminations.size());
  for (auto it = eliminations.rbegin(); it != eliminations.rend(); ++it) pattern.push_back({it->first, it->second, -it->angle});
  return pattern;
}

Eigen::MatrixXd coupler_product(std::span<const Coupler> couplers, int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (const Coupler& c : couplers) {
    check_gate(c, n);
    left_apply_rows(c, a);
  }
  return a;
}

ModeSchedule mode_schedule(const EigenSystem& es, const ChainSpec& spec, double t) {
  const int n = es.size();
  ModeSchedule out{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (int j = 0; j < n; ++j) {
    const double e = es.energies(j);
    if (!(e > 0.0))
      throw UnstableChain("unstable chain: |kappa| too large (normal mode " + std::to_string(j + 1) + " has E = " +
                          fmt_double(e) + ")");
    if (spec.model == CouplingModel::Full) {
      out.squeeze(j) = 0.25 * std::log(2.0 * e / spec.omega);
      out.angles(j) = 0.5 * t * std::sqrt(2.0 * e * spec.omega);
    } else {
      out.angles(j) = e * t;
    }
  }
  return out;
}

GateSequence build_propagator(const ChainSpec& spec, double t) {
  const EigenSystem es = eigensystem(spec);
  const std::vector<Coupler> pattern = coupler_pattern(es);
  return build_propagator(spec, t, pattern);
}

GateSequence build_propagator(const ChainSpec& spec, double t, std::span<const Coupler> pattern) {
  const EigenSystem es = eigensystem(spec);
  const int n = spec.n;

  const Eigen::MatrixXd product = coupler_product(pattern, n);
  for (int i = 0; i < n; ++i) {
    const double sign = product.row(i).dot(es.mode_matrix.row(i)) < 0.0 ? -1.0 : 1.0;
    if ((product.row(i) - sign * es.mode_matrix.row(i)).cwiseAbs().maxCoeff() > kOrthogonalityTolerance)
      throw std::invalid_argument("coupler layer does not map site " + std::to_string(i + 1) + " onto normal mode " +
                                  std::to_string(i + 1));
  }

  const ModeSchedule sched = mode_schedule(es, spec, t);
  const bool squeezed = spec.model == CouplingModel::Full;

  GateSequence seq;
  seq.n = n;
  seq.t = t;
  seq.spec = spec;
  seq.gates.reserve(2 * pattern.size() + 3 * n);
  for (const Coupler& c : pattern) seq.gates.emplace_back(c);
  if (squeezed)
    for (int j = 0; j < n; ++j) seq.gates.emplace_back(Squeezer{j + 1, 0.0 - sched.squeeze(j)});  // +0 for the bare mode
  for (int j = 0; j < n; ++j) seq.gates.emplace_back(Rotator{j + 1, sched.angles(j)});
  if (squeezed)
    for (int j = 0; j < n; ++j) seq.gates.emplace_back(Squeezer{j + 1, sched.squeeze(j)});
  for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) seq.gates.emplace_back(Coupler{it->first, it->second, -it->angle});
  return seq;
}

Symplectic to_symplectic(const GateSequence& seq) {
  return gates_to_symplectic<double>(seq.gates, seq.n);
}

bool is_palindromic(const GateSequence& seq) {
  const auto& g = seq.gates;
  // split into runs of identical gate kind
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (runs.empty() || g[i].index() != g[runs.back().first].index()) runs.push_back({i, i + 1});
    else runs.back().second = i + 1;
  }
  auto kind = [&](std::size_t r) { return g[runs[r].first].index(); };
  auto len = [&](std::size_t r) { return runs[r].second - runs[r].first; };
  constexpr std::size_t kCoupler = 2, kSqueezer = 1, kRotator = 0;

  std::size_t lo = 0, hi = runs.size();
  if (hi >= 2 && kind(0) == kCoupler) {
    if (kind(hi - 1) != kCoupler || len(0) != len(hi - 1)) return false;
    for (std::size_t i = 0; i < len(0); ++i)
      if (g[runs[hi - 1].second - 1 - i] != inverse(g[runs[0].first + i])) return false;
    ++lo;
    --hi;
  }
  if (hi - lo == 3) {
    if (kind(lo) != kSqueezer || kind(lo + 1) != kRotator || kind(hi - 1) != kSqueezer || len(lo) != len(hi - 1)) return false;
    for (std::size_t i = 0; i < len(lo); ++i)
      if (g[runs[hi - 1].first + i] != inverse(g[runs[lo].first + i])) return false;
    return true;
  }
  return hi - lo == 1 && kind(lo) == kRotator;
}

std::string format_gate(const Gate& gate) {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Rotator>) return "rotator " + std::to_string(g.mode) + " " + fmt_double(g.angle);
        else if constexpr (std::is_same_v<T, Squeezer>) return "squeezer " + std::to_string(g.mode) + " " + fmt_double(g.squeeze);
        else return "coupler " + std::to_string(g.first) + " " + std::to_string(g.second) + " " + fmt_double(g.angle);
      },
      gate);
}

std::string export_circuit(std::span<const Gate> gates) {
  std::string out;
  for (const Gate& g : gates) out += format_gate(g) + "\n";
  return out;
}

std::string export_circuit(const GateSequence& seq) {
  return export_circuit(std::span<const Gate>(seq.gates));
}

std::vector<Gate> parse_circuit(std::string_view text) {
  std::vector<Gate> gates;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string_view> tok;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tok.push_back(line.substr(start, i - start));
    }
    if (tok.empty()) continue;

    auto fail = [&](const std::string& why) {
      return std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + why);
    };
    auto int_at = [&](std::size_t i) {
      int v = 0;
      const auto [p, ec] = std::from_chars(tok[i].data(), tok[i].data() + tok[i].size(), v);
      if (ec != std::errc{} || p != tok[i].data() + tok[i].size()) throw fail("bad mode index '" + std::string(tok[i]) + "'");
      return v;
    };
    auto real_at = [&](std::size_t i) {
      double v = 0;
      const auto [p, ec] = std::from_chars(tok[i].data(), tok[i].data() + tok[i].size(), v);
      if (ec != std::errc{} || p != tok[i].data() + tok[i].size()) throw fail("bad parameter '" + std::string(tok[i]) + "'");
      return v;
    };

    if (tok[0] == "coupler") {
      if (tok.size() != 4) throw fail("coupler takes <j> <k> <theta>");
      gates.emplace_back(Coupler{int_at(1), int_at(2), real_at(3)});
    } else if (tok[0] == "squeezer") {
      if (tok.size() != 3) throw fail("squeezer takes <j> <s>");
      gates.emplace_back(Squeezer{int_at(1), real_at(2)});
    } else if (tok[0] == "rotator") {
      if (tok.size() != 3) throw fail("rotator takes <j> <phi>");
      gates.emplace_back(Rotator{int_at(1), real_at(2)});
    } else {
      throw fail("unknown gate '" + std::string(tok[0]) + "'");
    }
  }
  return gates;
}

}  // namespace gausschain
