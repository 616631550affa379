#pragma once

#include <cstdint>
#include <string>

#include "semival/dataset.hpp"
#include "semival/utility.hpp"

namespace semival {

using BudgetMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Per-cardinality weights w_k (k = 0..n-1) for a ground set of n points,
// together with the per-stratum mass w_k * C(n-1, k). Valid schemes have
// nonnegative weights whose masses sum to 1, so each point's value is a
// convex combination of its marginal contributions across cardinalities.
struct WeightScheme {
  std::string name;
  int n = 0;
  Vector w;
  Vector mass;

  void validate(double tol = 1e-9) const;

  static WeightScheme shapley(int n);
  static WeightScheme banzhaf(int n);
  static WeightScheme loo(int n);
  static WeightScheme custom(std::string name, int n, Vector w);
};

// Builds one of the named schemes ("shapley", "banzhaf", "loo").
WeightScheme make_weights(const std::string& name, int n);

// Sampling budget: how many coalitions to draw from each stratum (focal
// point i, cardinality k). The uniform form assigns the same count to every
// stratum whose cardinality carries nonzero weight and skips the rest.
struct BudgetSpec {
  enum class Kind { kUniform, kPerStratum };
  Kind kind = Kind::kUniform;
  long long per_stratum = 64;
  BudgetMatrix table;

  static BudgetSpec uniform(long long per_stratum);
  static BudgetSpec per_stratum_table(BudgetMatrix table);
  long long at(int i, int k, const WeightScheme& scheme) const;
  void validate(const WeightScheme& scheme) const;
};

// Per-stratum sample means: xminus(i, k) averages U(S) over drawn S of size k
// avoiding i, xplus(i, k) averages U(S + i) over the same draws. budgets
// records the number of draws. With exact = true the means are full stratum
// averages from enumeration instead of samples.
struct StrataStats {
  int n = 0;
  std::uint64_t seed = 0;
  std::string utility_id;
  bool exact = false;
  double u_empty = 0.0;
  Matrix xminus;
  Matrix xplus;
  BudgetMatrix budgets;
};

// Recombines strata means into semivalues:
//   psi_i = sum_k mass_k * (xplus(i,k) - xminus(i,k)).
// Every cardinality with nonzero mass must be covered by draws (or by exact
// enumeration); an uncovered one is a domain error, not a silent zero.
Vector reweigh(const StrataStats& stats, const WeightScheme& scheme);

// Exact semivalues by full enumeration: every coalition is evaluated once and
// its score is routed to every point's sum with the appropriate sign.
Vector exact_semivalues(const Utility& u, const WeightScheme& scheme,
                        int cap = kDefaultExactCap,
                        long long* evaluations = nullptr);

// Exact per-stratum means by full enumeration. Budgets are set to the true
// stratum sizes.
StrataStats exact_strata_stats(const Utility& u, int cap = kDefaultExactCap,
                               long long* evaluations = nullptr);

struct SampleResult {
  Vector psi;
  StrataStats stats;
  long long evaluations = 0;
};

// Stratified sampler: draws m_ik coalitions per stratum with replacement,
// using an independent random stream per (i, k) derived from the root seed,
// and evaluates each draw with and without the focal point (coupled draws).
// The returned psi is exactly reweigh(stats, scheme).
SampleResult stratified_sample(const Utility& u, const WeightScheme& scheme,
                               const BudgetSpec& budget, std::uint64_t seed);

}  // namespace semival
