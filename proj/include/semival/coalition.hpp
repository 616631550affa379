#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "semival/errors.hpp"

namespace semival {

// Subset of data points {0, ..., n-1}, stored as a bitset. The first 64 bits
// live inline so the common case never touches the heap; larger ground sets
// spill into a vector. Value type, hashable for memo caches.
class Coalition {
 public:
  Coalition() : n_(0), count_(0), w0_(0) {}

  explicit Coalition(int n) : n_(n), count_(0), w0_(0) {
    if (n < 0) throw DomainError("coalition: negative ground-set size");
    if (n > 64) rest_.assign(static_cast<std::size_t>((n - 1) / 64), 0);
  }

  Coalition(int n, const std::vector<int>& members) : Coalition(n) {
    for (int i : members) add(i);
  }

  // Low n bits of an enumeration mask; only valid when n <= 64.
  static Coalition from_mask(int n, std::uint64_t mask) {
    if (n > 64) throw DomainError("coalition: mask form needs n <= 64");
    if (n < 64 && (mask >> n) != 0) {
      throw DomainError("coalition: mask has bits outside the ground set");
    }
    Coalition c(n);
    c.w0_ = mask;
    c.count_ = popcount64(mask);
    return c;
  }

  int ground_size() const { return n_; }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(int i) const {
    check_index(i);
    return (word(i) >> (i & 63)) & 1u;
  }

  void add(int i) {
    check_index(i);
    std::uint64_t& w = word(i);
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  void remove(int i) {
    check_index(i);
    std::uint64_t& w = word(i);
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }

  Coalition with(int i) const {
    Coalition c = *this;
    c.add(i);
    return c;
  }

  Coalition without(int i) const {
    Coalition c = *this;
    c.remove(i);
    return c;
  }

  // Ascending member indices.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count_));
    append_bits(out, w0_, 0);
    for (std::size_t w = 0; w < rest_.size(); ++w) {
      append_bits(out, rest_[w], static_cast<int>((w + 1) * 64));
    }
    return out;
  }

  std::uint64_t mask() const {
    if (n_ > 64) throw DomainError("coalition: mask form needs n <= 64");
    return w0_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : members()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    s += "}";
    return s;
  }

  bool operator==(const Coalition& o) const {
    return n_ == o.n_ && w0_ == o.w0_ && rest_ == o.rest_;
  }
  bool operator!=(const Coalition& o) const { return !(*this == o); }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n_);
    h = mix(h, w0_);
    for (std::uint64_t w : rest_) h = mix(h, w);
    return h;
  }

 private:
  static std::uint64_t mix(std::uint64_t h, std::uint64_t w) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
    return h ^ (h >> 29);
  }
  static int popcount64(std::uint64_t x) {
    int c = 0;
    while (x) {
      x &= x - 1;
      ++c;
    }
    return c;
  }
  static void append_bits(std::vector<int>& out, std::uint64_t bits, int base) {
    while (bits) {
      std::uint64_t low = bits & (~bits + 1);
      int b = 0;
      while ((std::uint64_t{1} << b) != low) ++b;
      out.push_back(base + b);
      bits &= bits - 1;
    }
  }
  std::uint64_t& word(int i) {
    std::size_t w = static_cast<std::size_t>(i) >> 6;
    return w == 0 ? w0_ : rest_[w - 1];
  }
  const std::uint64_t& word(int i) const {
    std::size_t w = static_cast<std::size_t>(i) >> 6;
    return w == 0 ? w0_ : rest_[w - 1];
  }
  void check_index(int i) const {
    if (i < 0 || i >= n_) {
      throw DomainError("coalition: index " + std::to_string(i) +
                        " outside ground set of size " + std::to_string(n_));
    }
  }

  int n_;
  int count_;
  std::uint64_t w0_;
  std::vector<std::uint64_t> rest_;
};

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const {
    return static_cast<std::size_t>(c.hash());
  }
};

// Ground sets above this size refuse full enumeration unless the caller
// raises the cap explicitly.
inline constexpr int kDefaultExactCap = 20;

// All 2^n subsets in ascending mask order (empty set first, full set last).
std::vector<Coalition> enumerate_coalitions(int n, int cap = kDefaultExactCap);

}  // namespace semival
