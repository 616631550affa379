#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semival/favorability.hpp"
#include "semival/learners.hpp"
#include "semival/scoring.hpp"
#include "semival/utility.hpp"

namespace semival {

using Json = nlohmann::ordered_json;

// One explicitly declared candidate utility.
struct CustomMember {
  std::string id;
  Learner learner;
  ScoreMetric metric;
};

// Everything a run needs, parsed and validated from a JSON config file.
// Unknown keys are rejected so typos fail loudly with exit code 2.
struct RunConfig {
  Task task = Task::kRegression;

  // Data source: a CSV path or an inline table.
  std::string csv_path;
  std::string label_column = "y";
  bool has_inline = false;
  Matrix inline_features;
  Vector inline_labels;
  double test_fraction = 0.25;
  std::uint64_t split_seed = 1;

  Learner learner;
  ScoreMetric metric;
  bool explicit_clip = false;

  std::string weights_name = "shapley";
  Vector custom_w;

  bool exact = false;
  long long budget = 64;
  std::uint64_t seed = 0;
  int exact_cap = kDefaultExactCap;
  bool cache = true;
  int threads = 1;

  // Candidate family (range / game / filter-flips).
  bool has_candidates = false;
  Family family = Family::kCustom;
  int k_star = -1;  // family default: max(1, floor(0.1 * n))
  std::vector<Transform> transforms;
  double cost_a = 0.5;
  double cost_b = 0.6;
  int cost_grid = 2;
  BehaviorTable behavior_table;
  std::vector<CustomMember> custom_members;

  FavorabilitySpec fav;
  std::vector<int> target_indices;
  bool all_singletons = false;
  bool has_groups = false;
  int group_count = 100;
  double group_fraction = 0.1;
  std::uint64_t group_seed = 0;

  std::string algorithm = "auto";  // or "discrete"
  bool shared_draws = false;
  std::string out_dir = "out";

  // Parsed input, echoed verbatim into reports so a run can be replayed.
  Json raw;

  int resolved_k_star(int n) const;
};

RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

}  // namespace semival
