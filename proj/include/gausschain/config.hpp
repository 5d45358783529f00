#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gausschain/protocols.hpp"

namespace gausschain {

enum class Command { Simulate, Decompose, Sweep, Tag, Validate };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Sweep;
  SweepConfig sweep;
  /// Empty means stdout.
  std::string output_path;
  std::optional<OutputFormat> format;
  /// Grid time of the single state written by `simulate`.
  double simulate_tau = 0.0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Malformed or inconsistent configuration. line() is 0 for errors that are
/// not tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Flat "key = value" document, '#' starts a comment. Unknown or repeated
/// keys are errors.
///
///   command          simulate | decompose | sweep | tag | validate
///   engine           decomposition | oracle | both
///   output.path      file path (default stdout)
///   output.format    csv | json
///   chain.n, chain.omega, chain.kappa
///   chain.model      full | rotating_wave
///   sweep.tau_start, sweep.tau_end, sweep.tau_step
///   sweep.pairs      e.g. "1-2, 1-3" (default: 1-j for every j)
///   sweep.r          tag squeeze on modes 1 and N
///   sweep.time_axis  doubled | natural
///   sweep.tag_quadrature  momentum | position
///   sweep.blocks, sweep.diagnostics  true | false
///   simulate.tau
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config; every field is written, numbers round-trip exactly.
std::string render_config(const RunConfig& config);

/// Shape checks plus command/format consistency. Stability is left to the
/// commands themselves so that `validate` can report it.
void check_config(const RunConfig& config);

std::string to_string(Command c);
std::string to_string(OutputFormat f);
std::string to_string(Engine e);
std::string to_string(TimeAxis a);
std::string to_string(TagQuadrature q);

Command parse_command(std::string_view s);
OutputFormat parse_format(std::string_view s);
Engine parse_engine(std::string_view s);

}  // namespace gausschain
