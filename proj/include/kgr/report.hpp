#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kgr {

// One verified relation family / invariant: how many instances were
// tested, the worst residual seen, and an explicit verdict.  The witness
// names the offending tuple on failure.
struct CheckResult {
  std::string name;
  std::size_t instances = 0;
  double max_residual = 0.0;
  bool pass = true;
  std::string witness;

  void record(double residual, double tol, const std::string& who) {
    ++instances;
    if (residual > max_residual) max_residual = residual;
    if (residual > tol && pass) {
      pass = false;
      witness = who;
    }
  }
};

struct RunReport {
  std::string command;
  std::string input_path;
  std::string input_digest;
  std::vector<CheckResult> results;
  std::vector<std::pair<std::string, double>> timing;  // phase -> seconds

  bool all_pass() const;
  // Structured report; timing is excluded from golden comparisons.
  std::string to_json(bool include_timing = true) const;
};

std::string fnv1a_digest(const std::string& bytes);
std::string digest_file(const std::string& path);

}  // namespace kgr
