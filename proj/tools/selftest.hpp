#pragma once

#include <string>
#include <vector>

#include "ostmix/group.hpp"

namespace ostmix::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // filled in on failure
};

/// Runs the group-axiom, indexing, projection, and move-set normalization
/// checks on each group. Associativity is exhaustive for orders <= 8 and
/// sampled (fixed seed) above that; all other checks cover every element.
std::vector<CheckResult> run(const std::vector<GroupParams>& groups);

}  // namespace ostmix::selftest
