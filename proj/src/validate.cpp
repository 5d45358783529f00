#include "gausschain/validate.hpp"

#include <algorithm>
#include <charconv>

#include "gausschain/decomposition.hpp"
#include "gausschain/evolution_oracle.hpp"

namespace gausschain {

namespace {

std::string sci(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 3);
  return std::string(buf, res.ptr);
}

CheckResult bounded(std::string name, double err, double threshold) {
  return {std::move(name), err < threshold, err, threshold, {}};
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::format() const {
  std::string out;
  for (const CheckResult& c : checks) {
    std::string line = std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name;
    line.resize(std::max<std::size_t>(line.size() + 1, 26), ' ');
    line += "max_error=" + sci(c.max_error);
    if (c.threshold > 0.0) line += "  (threshold " + sci(c.threshold) + ")";
    if (!c.detail.empty()) line += "  " + c.detail;
    out += line + "\n";
  }
  return out;
}

ValidationReport validate_chain(const SweepConfig& config, int samples) {
  ValidationReport report;
  try {
    validate_stability(config.spec);
    report.checks.push_back({"stability", true, 0.0, 0.0, "all normal-mode frequencies positive"});
  } catch (const UnstableChain& e) {
    report.checks.push_back({"stability", false, 0.0, 0.0, e.what()});
    return report;
  }

  const int n = config.spec.n;
  std::vector<double> taus;
  samples = std::max(samples, 2);
  for (int i = 0; i < samples; ++i)
    taus.push_back(config.tau_start + (config.tau_end - config.tau_start) * i / (samples - 1));

  const Covariance v0 = initial_state(config);
  double oracle_err = 0, sym_err = 0, purity_err = 0, mirror_err = 0, rwa_max = 0;
  bool palindromic = true;
  for (double tau : taus) {
    const double t = evolution_time(config, tau);
    const GateSequence seq = build_propagator(config.spec, t);
    palindromic = palindromic && is_palindromic(seq);
    const Symplectic s = to_symplectic(seq);
    const Symplectic o = direct_propagator(config.spec, t);
    oracle_err = std::max(oracle_err, (s.matrix() - o.matrix()).cwiseAbs().maxCoeff());
    sym_err = std::max({sym_err, symplectic_error(s), symplectic_error(o)});

    const Covariance v = apply(s, v0);
    purity_err = std::max(purity_err, (check_state(v).array() - 1.0).abs().maxCoeff());
    // The reflection j -> N+1-j maps the block (1,2) onto (N,N-1).
    mirror_err = std::max({mirror_err, (v.block(1, 1) - v.block(n, n)).cwiseAbs().maxCoeff(),
                           (v.block(1, 2).transpose() - v.block(n - 1, n)).cwiseAbs().maxCoeff()});
    if (config.spec.model == CouplingModel::RotatingWave && !config.tag_r)
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) rwa_max = std::max(rwa_max, log_negativity(v, a, b));
  }

  report.checks.push_back(bounded("oracle_equivalence", oracle_err, 1e-9));
  report.checks.push_back(bounded("symplecticity", sym_err, 1e-10));
  report.checks.push_back(bounded("purity", purity_err, 1e-9));
  report.checks.push_back(bounded("mirror_symmetry", mirror_err, 1e-10));
  report.checks.push_back({"palindrome", palindromic, 0.0, 0.0, palindromic ? "" : "gate layout is not mirror-symmetric"});
  if (config.spec.model == CouplingModel::RotatingWave && !config.tag_r) {
    CheckResult c = bounded("rwa_no_entanglement", rwa_max, 1e-12);
    c.detail = "max pairwise log-negativity";
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace gausschain
