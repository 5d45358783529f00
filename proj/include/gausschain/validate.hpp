#pragma once

#include <string>
#include <vector>

#include "gausschain/protocols.hpp"

namespace gausschain {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  /// "PASS  name  max_error=..  (threshold ..)" per check.
  std::string format() const;
};

/// Property suite for one configured chain, sampled at `samples` evenly
/// spaced grid times over the sweep window:
/// stability, oracle equivalence (< 1e-9), symplecticity (< 1e-10),
/// purity (< 1e-9), mirror symmetry (< 1e-10), palindromic circuit layout,
/// and for the rotating-wave model with vacuum input, Lambda = 0 for every pair.
ValidationReport validate_chain(const SweepConfig& config, int samples = 41);

}  // namespace gausschain
