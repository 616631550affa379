#include "semival/favorability.hpp"

#include <cmath>

#include "semival/errors.hpp"

namespace semival {

void TargetGroup::validate(int n) const {
  if (members.empty()) throw ConfigError("target group must not be empty");
  int prev = -1;
  for (int i : members) {
    if (i < 0 || i >= n) {
      throw ConfigError("target group index " + std::to_string(i) +
                        " outside the data pool of size " + std::to_string(n));
    }
    if (i <= prev) {
      throw ConfigError("target group indices must be ascending and unique");
    }
    prev = i;
  }
}

std::string FavorabilitySpec::id() const {
  switch (kind) {
    case Kind::kAggregate: return "agg";
    case Kind::kRank: return "rank";
    case Kind::kFiltered: return "filtered(alpha=" + std::to_string(alpha) + ")";
    case Kind::kPayout: return "payout";
    case Kind::kScaledRank: return "scaled-rank";
  }
  return "?";
}

void FavorabilitySpec::validate() const {
  if (kind == Kind::kFiltered && !(alpha >= 0.0 && alpha < 1.0)) {
    throw ConfigError("filtered favorability needs alpha in [0, 1)");
  }
}

FavorabilitySpec favorability_from_string(const std::string& kind,
                                          double alpha) {
  FavorabilitySpec f;
  f.alpha = alpha;
  if (kind == "agg") f.kind = FavorabilitySpec::Kind::kAggregate;
  else if (kind == "rank") f.kind = FavorabilitySpec::Kind::kRank;
  else if (kind == "filtered") f.kind = FavorabilitySpec::Kind::kFiltered;
  else if (kind == "payout") f.kind = FavorabilitySpec::Kind::kPayout;
  else if (kind == "scaled-rank") f.kind = FavorabilitySpec::Kind::kScaledRank;
  else throw ConfigError("unknown favorability '" + kind + "'");
  f.validate();
  return f;
}

int rank_of(int i, const Vector& x) {
  if (i < 0 || i >= x.size()) throw DomainError("rank_of: index out of range");
  int below = 0;
  for (int j = 0; j < x.size(); ++j) {
    if (x[i] > x[j]) ++below;
  }
  return below;
}

double favorability(const FavorabilitySpec& spec, const Vector& psi,
                    const TargetGroup& group) {
  group.validate(static_cast<int>(psi.size()));
  const int n = static_cast<int>(psi.size());
  switch (spec.kind) {
    case FavorabilitySpec::Kind::kAggregate: {
      double s = 0.0;
      for (int i : group.members) s += psi[i];
      return s;
    }
    case FavorabilitySpec::Kind::kRank: {
      if (group.members.size() != 1) {
        throw DomainError("rank favorability needs a single target point");
      }
      return static_cast<double>(rank_of(group.members[0], psi));
    }
    case FavorabilitySpec::Kind::kScaledRank: {
      if (group.members.size() != 1) {
        throw DomainError("scaled-rank favorability needs a single target point");
      }
      return static_cast<double>(rank_of(group.members[0], psi)) /
             static_cast<double>(n);
    }
    case FavorabilitySpec::Kind::kFiltered: {
      // Strict comparison against the unrounded threshold alpha * n.
      double threshold = spec.alpha * static_cast<double>(n);
      double kept = 0.0;
      for (int i : group.members) {
        if (static_cast<double>(rank_of(i, psi)) > threshold) kept += 1.0;
      }
      return kept / static_cast<double>(group.members.size());
    }
    case FavorabilitySpec::Kind::kPayout: {
      double total = psi.sum();
      if (std::abs(total) < 1e-12) {
        throw DomainError(
            "payout favorability undefined: degenerate budget, semivalue total "
            "is below 1e-12 in magnitude");
      }
      double s = 0.0;
      for (int i : group.members) s += psi[i];
      return s * static_cast<double>(n) / total;
    }
  }
  throw DomainError("favorability: unknown kind");
}

RangeResult range_over(const std::vector<RangeEntry>& entries) {
  if (entries.empty()) {
    throw DomainError("range needs at least one candidate");
  }
  RangeResult r;
  r.best_id = entries[0].id;
  r.worst_id = entries[0].id;
  r.best_value = entries[0].value;
  r.worst_value = entries[0].value;
  for (const RangeEntry& e : entries) {
    if (!std::isfinite(e.value)) {
      throw DomainError("candidate '" + e.id + "' has a non-finite score");
    }
    if (e.value > r.best_value) {
      r.best_value = e.value;
      r.best_id = e.id;
    }
    if (e.value < r.worst_value) {
      r.worst_value = e.value;
      r.worst_id = e.id;
    }
  }
  return r;
}

}  // namespace semival
