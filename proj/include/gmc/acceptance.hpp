#pragma once

// The acceptance suite, shared by the acceptance test binary and the
// `selftest` command. Each criterion carries its own pinned thresholds.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gmc::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // runtime ceiling in seconds; 0 when none is pinned
};

struct Options {
  std::uint64_t seed = 20240601;
  std::string golden_dir;  // criterion 10 fails when empty or unreadable
  std::vector<int> only;   // empty = all ten
};

std::vector<Result> run(const Options& opt, const std::function<void(const Result&)>& each = {});

// "CRITERION 3 PASS free-category-axioms 5210 instances, 0 failures (4.1s < 60s)"
std::string render(const Result& r, bool timing = true);

}  // namespace gmc::acceptance
