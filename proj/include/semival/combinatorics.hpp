#pragma once

#include <cstdint>

#include "semival/errors.hpp"

namespace semival {

// Binomial coefficient as a double. Exact whenever the true value fits in the
// 53-bit mantissa, which covers every cardinality this library enumerates.
inline double binom(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) {
    r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  // The running product can leave tiny dust; snap to the nearest integer,
  // which is the exact value while it is representable.
  if (r < 4.6e18) {
    r = static_cast<double>(static_cast<std::int64_t>(r + 0.5));
  }
  return r;
}

// Number of subsets of an n-element ground set, as uint64. n must stay small
// enough for full enumeration; callers gate on the exact-mode cap.
inline std::uint64_t subset_count(int n) {
  if (n < 0 || n > 62) throw DomainError("subset_count: n out of range");
  return std::uint64_t{1} << n;
}

}  // namespace semival
