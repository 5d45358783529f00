#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gausschain/config.hpp"
#include "gausschain/protocols.hpp"

namespace gausschain {

/// A file could not be opened or written.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// One row per (tau, pair):
///   tau,pair,log_negativity[,c11,c12,c21,c22][,symplectic_error,purity_error,engine_gap]
/// Block and diagnostic columns appear when the first record carries them.
/// Reals use 15 significant digits; pairs are written "a-b".
std::string records_to_csv(const std::vector<SweepRecord>& records);

/// [{"tau": .., "entries": [{"pair": [a, b], "log_negativity": .., "block": [[..],[..]]}], "diagnostics": {..}}]
std::string records_to_json(const std::vector<SweepRecord>& records);

std::string format_records(const std::vector<SweepRecord>& records, OutputFormat format);

/// State at one grid time: the covariance plus the log-negativity of every pair.
std::string state_to_json(double tau, const Covariance& v);
std::string state_to_csv(double tau, const Covariance& v);

/// Writes text to path, or to out when path is empty.
void write_output(const std::string& text, const std::string& path, std::ostream& out);

/// Reads a whole file.
std::string read_file(const std::string& path);

}  // namespace gausschain
