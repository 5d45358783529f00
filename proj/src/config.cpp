#include "gausschain/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace gausschain {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);  // shortest exact round trip
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view v) {
  double x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(x)) throw std::invalid_argument("expected a number");
  return x;
}

int parse_int(std::string_view v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size()) throw std::invalid_argument("expected an integer");
  return x;
}

bool parse_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("expected true or false");
}

std::vector<ModePair> parse_pairs(std::string_view v) {
  std::vector<ModePair> out;
  while (!v.empty()) {
    const std::size_t comma = v.find(',');
    const std::string_view item = trim(v.substr(0, comma));
    v = comma == std::string_view::npos ? std::string_view{} : v.substr(comma + 1);
    const std::size_t dash = item.find('-');
    if (dash == std::string_view::npos) throw std::invalid_argument("expected pairs like 1-2,1-3");
    out.push_back({parse_int(trim(item.substr(0, dash))), parse_int(trim(item.substr(dash + 1)))});
  }
  if (out.empty()) throw std::invalid_argument("empty pair list");
  return out;
}

template <typename E>
E lookup(std::string_view s, std::initializer_list<std::pair<std::string_view, E>> table) {
  std::string options;
  for (const auto& [name, value] : table) {
    if (name == s) return value;
    options += (options.empty() ? "" : " | ") + std::string(name);
  }
  throw std::invalid_argument("expected " + options);
}

CouplingModel parse_model(std::string_view s) {
  return lookup<CouplingModel>(s, {{"full", CouplingModel::Full}, {"rotating_wave", CouplingModel::RotatingWave}});
}

TimeAxis parse_axis(std::string_view s) {
  return lookup<TimeAxis>(s, {{"doubled", TimeAxis::Doubled}, {"natural", TimeAxis::Natural}});
}

TagQuadrature parse_quadrature(std::string_view s) {
  return lookup<TagQuadrature>(s, {{"momentum", TagQuadrature::Momentum}, {"position", TagQuadrature::Position}});
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"command", [](RunConfig& c, std::string_view v) { c.command = parse_command(v); }},
      {"engine", [](RunConfig& c, std::string_view v) { c.sweep.engine = parse_engine(v); }},
      {"output.path", [](RunConfig& c, std::string_view v) { c.output_path = std::string(v); }},
      {"output.format", [](RunConfig& c, std::string_view v) { c.format = parse_format(v); }},
      {"chain.n", [](RunConfig& c, std::string_view v) { c.sweep.spec.n = parse_int(v); }},
      {"chain.omega", [](RunConfig& c, std::string_view v) { c.sweep.spec.omega = parse_real(v); }},
      {"chain.kappa", [](RunConfig& c, std::string_view v) { c.sweep.spec.kappa = parse_real(v); }},
      {"chain.model", [](RunConfig& c, std::string_view v) { c.sweep.spec.model = parse_model(v); }},
      {"sweep.tau_start", [](RunConfig& c, std::string_view v) { c.sweep.tau_start = parse_real(v); }},
      {"sweep.tau_end", [](RunConfig& c, std::string_view v) { c.sweep.tau_end = parse_real(v); }},
      {"sweep.tau_step", [](RunConfig& c, std::string_view v) { c.sweep.tau_step = parse_real(v); }},
      {"sweep.pairs", [](RunConfig& c, std::string_view v) { c.sweep.pairs = parse_pairs(v); }},
      {"sweep.r", [](RunConfig& c, std::string_view v) { c.sweep.tag_r = parse_real(v); }},
      {"sweep.time_axis", [](RunConfig& c, std::string_view v) { c.sweep.time_axis = parse_axis(v); }},
      {"sweep.tag_quadrature", [](RunConfig& c, std::string_view v) { c.sweep.tag_quadrature = parse_quadrature(v); }},
      {"sweep.blocks", [](RunConfig& c, std::string_view v) { c.sweep.record_blocks = parse_bool(v); }},
      {"sweep.diagnostics", [](RunConfig& c, std::string_view v) { c.sweep.record_diagnostics = parse_bool(v); }},
      {"simulate.tau", [](RunConfig& c, std::string_view v) { c.simulate_tau = parse_real(v); }},
  };
  return table;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Decompose: return "decompose";
    case Command::Sweep: return "sweep";
    case Command::Tag: return "tag";
    case Command::Validate: return "validate";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Decomposition: return "decomposition";
    case Engine::Oracle: return "oracle";
    case Engine::Both: return "both";
  }
  return "?";
}

std::string to_string(TimeAxis a) { return a == TimeAxis::Doubled ? "doubled" : "natural"; }
std::string to_string(TagQuadrature q) { return q == TagQuadrature::Momentum ? "momentum" : "position"; }

Command parse_command(std::string_view s) {
  return lookup<Command>(s, {{"simulate", Command::Simulate},
                             {"decompose", Command::Decompose},
                             {"sweep", Command::Sweep},
                             {"tag", Command::Tag},
                             {"validate", Command::Validate}});
}

OutputFormat parse_format(std::string_view s) {
  return lookup<OutputFormat>(s, {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
}

Engine parse_engine(std::string_view s) {
  return lookup<Engine>(s, {{"decomposition", Engine::Decomposition}, {"oracle", Engine::Oracle}, {"both", Engine::Both}});
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'", line_no);
    if (!seen.insert(std::string(key)).second) throw ConfigError(where + "duplicate key '" + std::string(key) + "'", line_no);
    if (value.empty()) throw ConfigError(where + std::string(key) + ": missing value", line_no);
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + std::string(key) + ": " + e.what() + ", got '" + std::string(value) + "'", line_no);
    }
  }
  check_config(config);
  return config;
}

void check_config(const RunConfig& config) {
  const SweepConfig& s = config.sweep;
  const ChainSpec& spec = s.spec;
  if (spec.n < 2) throw ConfigError("chain.n: need at least 2 oscillators");
  if (!(spec.omega > 0.0)) throw ConfigError("chain.omega: must be positive");
  if (!(s.tau_step > 0.0)) throw ConfigError("sweep.tau_step: must be positive");
  if (s.tau_end < s.tau_start) throw ConfigError("sweep.tau_end: must not precede sweep.tau_start");
  if (std::floor((s.tau_end - s.tau_start) / s.tau_step + 1e-9) + 1.0 > static_cast<double>(kMaxGridPoints))
    throw ConfigError("sweep.tau_step: grid would exceed 1e7 points");
  for (const ModePair& p : s.pairs) {
    if (p.a < 1 || p.b < 1 || p.a > spec.n || p.b > spec.n || p.a == p.b)
      throw ConfigError("sweep.pairs: " + std::to_string(p.a) + "-" + std::to_string(p.b) + " is not a pair of distinct modes in [1," +
                        std::to_string(spec.n) + "]");
  }
  if (config.output_path.find_first_of("#\n") != std::string::npos || trim(config.output_path) != config.output_path)
    throw ConfigError("output.path: must not contain '#', newlines or surrounding spaces");
  if (config.format && (config.command == Command::Decompose || config.command == Command::Validate))
    throw ConfigError("output.format: not used by '" + to_string(config.command) + "'");
}

std::string render_config(const RunConfig& c) {
  const SweepConfig& s = c.sweep;
  std::string out;
  auto put = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  put("command", to_string(c.command));
  put("engine", to_string(s.engine));
  if (!c.output_path.empty()) put("output.path", c.output_path);
  if (c.format) put("output.format", to_string(*c.format));
  put("chain.n", std::to_string(s.spec.n));
  put("chain.omega", num(s.spec.omega));
  put("chain.kappa", num(s.spec.kappa));
  put("chain.model", to_string(s.spec.model));
  put("sweep.tau_start", num(s.tau_start));
  put("sweep.tau_end", num(s.tau_end));
  put("sweep.tau_step", num(s.tau_step));
  if (!s.pairs.empty()) {
    std::string pairs;
    for (const ModePair& p : s.pairs) pairs += (pairs.empty() ? "" : ",") + std::to_string(p.a) + "-" + std::to_string(p.b);
    put("sweep.pairs", pairs);
  }
  if (s.tag_r) put("sweep.r", num(*s.tag_r));
  put("sweep.time_axis", to_string(s.time_axis));
  put("sweep.tag_quadrature", to_string(s.tag_quadrature));
  put("sweep.blocks", s.record_blocks ? "true" : "false");
  put("sweep.diagnostics", s.record_diagnostics ? "true" : "false");
  put("simulate.tau", num(c.simulate_tau));
  return out;
}

}  // namespace gausschain
