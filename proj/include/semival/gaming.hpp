#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "semival/favorability.hpp"
#include "semival/semivalues.hpp"
#include "semival/utility.hpp"

namespace semival {

// How candidate scores are computed: exact enumeration (within cap) or the
// stratified sampler with a uniform per-stratum budget. With shared_draws the
// same root seed (hence the same coalitions) is reused for every candidate;
// by default each candidate gets an independent derived stream.
struct SamplePlan {
  bool exact = false;
  long long budget = 64;
  std::uint64_t seed = 0;
  bool shared_draws = false;
  int cap = kDefaultExactCap;
};

struct GameResult {
  std::string algorithm;
  std::string best_id;
  std::string worst_id;
  double best_value = 0.0;
  double worst_value = 0.0;
  bool exact = false;
  std::uint64_t seed = 0;
  long long evaluations_used = 0;
  std::vector<RangeEntry> per_candidate;  // filled for explicit families

  // Algorithm-specific details.
  int best_k_min = -1;
  int worst_k_min = -1;
  std::vector<int> best_choice;
  std::vector<int> worst_choice;
  double best_p_t = std::numeric_limits<double>::quiet_NaN();
  double worst_p_t = std::numeric_limits<double>::quiet_NaN();

  double range() const { return best_value - worst_value; }
};

// Generic search: score every candidate utility separately and keep the
// favorability extremes. Cost grows linearly with the number of candidates.
GameResult game_discrete(const std::vector<const Utility*>& candidates,
                         const WeightScheme& scheme,
                         const FavorabilitySpec& fav, const TargetGroup& group,
                         const SamplePlan& plan);

// Minimum-cardinality search: one sampler pass (or one enumeration) on the
// base game, then every k_min in [0, k_star] is replayed from the recorded
// strata means by substituting the empty-coalition score below the cutoff.
// No further utility evaluations are spent on the replays.
GameResult game_kmin(const Utility& base, int k_star,
                     const WeightScheme& scheme, const FavorabilitySpec& fav,
                     const TargetGroup& group, const SamplePlan& plan);

// Small-cardinality behavior search for the aggregate favorability. The
// aggregate decomposes over (coalition size, overlap with the group) strata,
// so the best and worst training options are selected independently per
// cardinality from shared stratified draws; the candidate product is never
// materialized. plan.budget is the per-cardinality draw count, split across
// overlap substrata proportionally to their share (at least one draw each).
GameResult game_behaviors(const CandidateSet& family,
                          const WeightScheme& scheme, const TargetGroup& group,
                          const SamplePlan& plan);

// Cost-threshold search for the aggregate favorability. The aggregate is
// affine in the odds p_t / (1 - p_t), so over p_t in [a, b] it is extremal at
// the interval endpoints: two semivalue computations (true-positive-rate and
// false-positive-rate games, coupled draws and shared trained models) decide
// the whole continuum.
GameResult game_cost(const std::string& base_id, const Learner& classifier,
                     double a, double b, const WeightScheme& scheme,
                     const FavorabilitySpec& fav, const TargetGroup& group,
                     const SamplePlan& plan, std::shared_ptr<EvalContext> ctx);

struct OracleResult {
  std::string best_id;
  std::string worst_id;
  double best_value = 0.0;
  double worst_value = 0.0;
  long long evaluations_used = 0;
};

// Brute-force reference: exact semivalues and favorability recomputed from
// first principles (own binomials, own weight formulas, own rank logic, plain
// per-point subset sums) for every candidate. Shares nothing with the search
// algorithms above except the utility objects being measured.
OracleResult oracle_argmax(const std::vector<const Utility*>& candidates,
                           const WeightScheme& scheme,
                           const FavorabilitySpec& fav,
                           const TargetGroup& group,
                           int cap = kDefaultExactCap);

}  // namespace semival
