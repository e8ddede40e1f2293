#pragma once

// A second, deliberately simple interpreter for the reference machine, used
// as a test oracle. It shares only the outcome types with the library: no
// decoding helpers, no block skipping in SEARCH_GE, control flow through
// exceptions. Slow, but easy to audit against the instruction table.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ait/machine.hpp"
#include "ait/profile.hpp"

namespace naive {

ait::RunOutcome run(ait::Mode mode, const ait::MachineProfile& profile, const std::string& bits,
                    std::uint64_t budget);

struct Tables {
  std::map<std::string, std::uint64_t> K;  // output -> min |p|, prefix mode
  std::map<std::string, std::uint64_t> C;  // output -> min |p|, plain mode
  std::vector<std::string> domain;         // prefix-mode halting programs
  // Omega numerator over 2^stage.
  std::uint64_t omega_numerator = 0;
};

// Runs every bit string of length <= stage with budget `stage`.
Tables brute_force(const ait::MachineProfile& profile, unsigned stage);

}  // namespace naive
