#pragma once

// The gmc command line. Exit codes: 0 success, 1 negative verdict (law
// failure, NOT EQUAL, an ill-graded term), 2 usage or input errors.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gmc::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr std::size_t kDefaultBudget = 10000;

// args excludes the program name. GMC_SEED, when set, replaces the default
// seed of every randomized command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmc::cli
