#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sysk {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  std::uint64_t seed = 0;
};

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

inline void append(std::vector<Check>& dst, const std::vector<Check>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace sysk
