#include "semival/coalition.hpp"

namespace semival {

std::vector<Coalition> enumerate_coalitions(int n, int cap) {
  if (n < 0) throw DomainError("enumerate_coalitions: negative n");
  if (n > cap) {
    throw DomainError("enumerate_coalitions: n = " + std::to_string(n) +
                      " exceeds the exact-mode cap " + std::to_string(cap) +
                      "; use sampling or raise the cap explicitly");
  }
  std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Coalition> out;
  out.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    out.push_back(Coalition::from_mask(n, mask));
  }
  return out;
}

}  // namespace semival
