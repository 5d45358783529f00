#include "gausschain/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gausschain/config.hpp"
#include "gausschain/decomposition.hpp"
#include "gausschain/report.hpp"
#include "gausschain/validate.hpp"

namespace gausschain {

namespace {

struct Overrides {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string engine;
};

unsigned thread_count() {
  const char* env = std::getenv("GAUSSCHAIN_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view s(env);
  unsigned v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ConfigError("GAUSSCHAIN_THREADS: expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string pair_name(ModePair p) { return std::to_string(p.a) + "-" + std::to_string(p.b); }

// Peak per pair and, with a tag, where the end-to-end pair leads.
void summarize(const RunConfig& rc, const std::vector<SweepRecord>& records, std::ostream& err) {
  if (records.empty() || records.front().entries.empty()) return;
  std::vector<ModePair> pairs;
  for (const SweepEntry& e : records.front().entries) pairs.push_back(e.pair);
  for (ModePair p : pairs) {
    const Peak pk = find_peak(records, p);
    err << "peak " << pair_name(p) << ": tau=" << fixed(pk.tau) << " log_negativity=" << fixed(pk.lambda) << "\n";
  }
  const ModePair end{1, rc.sweep.spec.n};
  if (rc.command != Command::Tag || std::find(pairs.begin(), pairs.end(), end) == pairs.end()) return;
  const auto intervals = dominance_report(records, end, pairs);
  err << "end-to-end dominance (" << pair_name(end) << "): " << intervals.size() << " interval(s)";
  for (std::size_t i = 0; i < intervals.size() && i < 8; ++i)
    err << (i ? ", " : " ") << "[" << fixed(intervals[i].begin) << ", " << fixed(intervals[i].end) << "]";
  if (intervals.size() > 8) err << ", ...";
  err << "\n";
}

int execute(RunConfig rc, std::ostream& out, std::ostream& err) {
  const OutputFormat format = rc.format.value_or(OutputFormat::Csv);
  switch (rc.command) {
    case Command::Validate: {
      const ValidationReport report = validate_chain(rc.sweep);
      const std::string text = report.format();
      write_output(text, rc.output_path, out);
      if (!rc.output_path.empty()) err << text;
      return report.passed() ? kExitOk : kExitValidation;
    }
    case Command::Decompose: {
      const double t = evolution_time(rc.sweep, rc.simulate_tau);
      const GateSequence seq = build_propagator(rc.sweep.spec, t);
      std::string text = "# n=" + std::to_string(rc.sweep.spec.n) + " omega=" + shortest(rc.sweep.spec.omega) +
                         " kappa=" + shortest(rc.sweep.spec.kappa) + " model=" + to_string(rc.sweep.spec.model) +
                         " t=" + shortest(t) + "\n";
      text += export_circuit(seq);
      write_output(text, rc.output_path, out);
      return kExitOk;
    }
    case Command::Simulate: {
      validate(rc.sweep);
      const Covariance v = evolve(rc.sweep, rc.simulate_tau);
      write_output(format == OutputFormat::Csv ? state_to_csv(rc.simulate_tau, v) : state_to_json(rc.simulate_tau, v),
                   rc.output_path, out);
      return kExitOk;
    }
    case Command::Tag:
      if (!rc.sweep.tag_r) rc.sweep.tag_r = default_tag_r(rc.sweep.spec.n);
      [[fallthrough]];
    case Command::Sweep: {
      const auto records = run_sweep(rc.sweep, thread_count());
      write_output(format_records(records, format), rc.output_path, out);
      err << "wrote " << records.size() << " grid points\n";
      summarize(rc, records, err);
      return kExitOk;
    }
  }
  return kExitUsage;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian-state simulator for open harmonic oscillator chains", "gausschain"};
  app.require_subcommand(1);

  Overrides ov;
  const std::pair<const char*, Command> commands[] = {
      {"simulate", Command::Simulate}, {"decompose", Command::Decompose}, {"sweep", Command::Sweep},
      {"tag", Command::Tag},           {"validate", Command::Validate}};
  const char* help[] = {"covariance and pairwise log-negativity at simulate.tau",
                        "gate list of the propagator at simulate.tau",
                        "log-negativity over the sweep grid",
                        "sweep with squeezed end oscillators (sweep.r, default by chain length)",
                        "property checks for the configured chain"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", ov.config_path, "configuration file (key = value lines)")->check(CLI::ExistingFile);
    sub->add_option("--out", ov.out_path, "output file (default stdout)");
    sub->add_option("--format", ov.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--engine", ov.engine, "decomposition | oracle | both")->check(CLI::IsMember({"decomposition", "oracle", "both"}));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig rc = ov.config_path.empty() ? RunConfig{} : parse_config(read_file(ov.config_path));
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) rc.command = commands[i].second;
    if (!ov.out_path.empty()) rc.output_path = ov.out_path;
    if (!ov.format.empty()) rc.format = parse_format(ov.format);
    if (!ov.engine.empty()) rc.sweep.engine = parse_engine(ov.engine);
    check_config(rc);
    return execute(std::move(rc), out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnstableChain& e) {
    err << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace gausschain
