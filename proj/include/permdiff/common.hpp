#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace permdiff {

// A permutation of [n] = {1..n}, stored one value per position.
using Perm = std::vector<int>;

// Placeholder symbol that ranks after every integer (used by hooked-up
// half-permutations before the second half is attached).
inline constexpr int kStar = std::numeric_limits<int>::max();

// Thrown when a requested materialization would exceed a hard size cap.
class cap_exceeded : public std::runtime_error {
public:
  cap_exceeded(const std::string& what, unsigned long long cap)
      : std::runtime_error(what), cap_(cap) {}
  unsigned long long cap() const { return cap_; }

private:
  unsigned long long cap_;
};

}  // namespace permdiff
