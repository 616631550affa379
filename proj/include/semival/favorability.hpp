#pragma once

#include <string>
#include <vector>

#include "semival/dataset.hpp"

namespace semival {

// The data points whose valuation outcome is being measured.
struct TargetGroup {
  std::vector<int> members;  // ascending, no duplicates

  static TargetGroup single(int i) { return TargetGroup{{i}}; }
  void validate(int n) const;
};

// How a provider turns a value vector into the number they care about.
struct FavorabilitySpec {
  enum class Kind { kAggregate, kRank, kFiltered, kPayout, kScaledRank };
  Kind kind = Kind::kAggregate;
  double alpha = 0.1;  // filtered: survive when rank exceeds alpha * n

  std::string id() const;
  void validate() const;
  // Affine in the value vector; only these are certified for endpoint
  // shortcuts over utility parameters the values are affine in.
  bool linear() const { return kind == Kind::kAggregate; }
};

FavorabilitySpec favorability_from_string(const std::string& kind,
                                          double alpha = 0.1);

// Competition rank: the number of entries strictly below x[i]. Ties share the
// lower rank; range is [0, n-1] with higher meaning better.
int rank_of(int i, const Vector& x);

double favorability(const FavorabilitySpec& spec, const Vector& psi,
                    const TargetGroup& group);

struct RangeEntry {
  std::string id;
  double value;
};

// Best and worst over a finite candidate list. Ties keep the first candidate
// encountered, so results are reproducible for a fixed enumeration order.
struct RangeResult {
  std::string best_id;
  std::string worst_id;
  double best_value = 0.0;
  double worst_value = 0.0;
  double range() const { return best_value - worst_value; }
};

RangeResult range_over(const std::vector<RangeEntry>& entries);

}  // namespace semival
