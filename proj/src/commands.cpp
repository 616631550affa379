#include "semival/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semival/errors.hpp"
#include "semival/gaming.hpp"
#include "semival/report.hpp"

namespace semival {

namespace {

constexpr double kMaterializeLimit = 4096.0;

struct Prepared {
  RunConfig cfg;
  SplitData split;
  std::shared_ptr<EvalContext> ctx;
  std::shared_ptr<UtilitySpec> base;
  WeightScheme scheme;
  int n = 0;
};

Prepared prepare(const RunConfig& cfg_in) {
  Prepared p;
  p.cfg = cfg_in;
  RunConfig& cfg = p.cfg;

  p.split = cfg.has_inline
                ? split_table(cfg.inline_features, cfg.inline_labels,
                              cfg.test_fraction, cfg.split_seed, cfg.task)
                : load_csv(cfg.csv_path, cfg.label_column, cfg.test_fraction,
                           cfg.split_seed, cfg.task);
  p.n = p.split.train.n();

  if (cfg.metric.classification() != (cfg.task == Task::kClassification)) {
    throw ConfigError("metric '" + cfg.metric.id() + "' does not fit a " +
                      to_string(cfg.task) + " task");
  }
  if ((cfg.learner.base.kind == LearnerBase::Kind::kLogistic) !=
      (cfg.task == Task::kClassification)) {
    throw ConfigError("learner and task disagree: use ridge for regression "
                      "and logistic for classification");
  }

  // Default clip for regression scores: the untrained model is the natural
  // zero point, so four times its error bounds the penalty from below.
  if (cfg.task == Task::kRegression && !cfg.explicit_clip) {
    double naive = p.split.test.labels.array().square().mean();
    if (naive > 0.0) {
      if (cfg.metric.kind == ScoreMetric::Kind::kNegMse) {
        cfg.metric.clip_bounds = {-4.0 * naive, 0.0};
      } else if (cfg.metric.kind == ScoreMetric::Kind::kNegRmse) {
        cfg.metric.clip_bounds = {-2.0 * std::sqrt(naive), 0.0};
      }
    }
  }

  if (cfg.exact && p.n > cfg.exact_cap) {
    throw ConfigError("exact mode with " + std::to_string(p.n) +
                      " training points exceeds exact_cap = " +
                      std::to_string(cfg.exact_cap) +
                      "; sample instead or raise the cap");
  }

  p.ctx = std::make_shared<EvalContext>(p.split.train, p.split.test, cfg.cache);
  p.base = std::make_shared<UtilitySpec>("base", cfg.learner, cfg.metric, p.ctx);
  p.scheme = cfg.weights_name == "custom"
                 ? WeightScheme::custom("custom", p.n, cfg.custom_w)
                 : make_weights(cfg.weights_name, p.n);
  return p;
}

CandidateSet build_candidates(const Prepared& p) {
  const RunConfig& cfg = p.cfg;
  if (!cfg.has_candidates) {
    throw ConfigError("this command needs a 'candidates' section");
  }
  switch (cfg.family) {
    case Family::kMinCardinality:
      return build_u0(*p.base, cfg.resolved_k_star(p.n));
    case Family::kMonotone:
      return build_mono(*p.base, cfg.transforms);
    case Family::kCost:
      return build_cost("base", p.base->learner(), cfg.cost_a, cfg.cost_b,
                        cfg.cost_grid, p.ctx);
    case Family::kBehaviors: {
      BehaviorTable table = cfg.behavior_table;
      return build_small_behaviors(*p.base, table);
    }
    case Family::kCustom: {
      CandidateSet set;
      set.family = Family::kCustom;
      for (const CustomMember& m : cfg.custom_members) {
        if (m.metric.classification() !=
            (cfg.task == Task::kClassification)) {
          throw ConfigError("candidate '" + m.id + "': metric does not fit a " +
                            to_string(cfg.task) + " task");
        }
        set.members.push_back(std::make_shared<UtilitySpec>(
            m.id, m.learner, m.metric, p.ctx));
      }
      return set;
    }
  }
  throw ConfigError("candidates: unknown family");
}

std::vector<std::shared_ptr<UtilitySpec>> explicit_members(
    const Prepared& p, const CandidateSet& set) {
  if (set.implicit()) return set.materialize(kMaterializeLimit);
  (void)p;
  return set.members;
}

Vector psi_for(const Utility& u, const Prepared& p, std::uint64_t seed,
               long long* evaluations) {
  if (p.cfg.exact) {
    return exact_semivalues(u, p.scheme, p.cfg.exact_cap, evaluations);
  }
  SampleResult r = stratified_sample(u, p.scheme,
                                     BudgetSpec::uniform(p.cfg.budget), seed);
  if (evaluations) *evaluations += r.evaluations;
  return r.psi;
}

TargetGroup group_from_indices(std::vector<int> indices, int n) {
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] == indices[i - 1]) {
      throw ConfigError("target indices contain a duplicate: " +
                        std::to_string(indices[i]));
    }
  }
  TargetGroup g{std::move(indices)};
  g.validate(n);
  return g;
}

Json counters_json(const EvalContext& ctx) {
  EvalContext::Counters c = ctx.counters();
  Json j;
  j["requests"] = c.requests;
  j["fresh_scores"] = c.fresh_scores;
  j["models_trained"] = c.models_trained;
  return j;
}

Json group_json(const TargetGroup& g) {
  Json arr = Json::array();
  for (int i : g.members) arr.push_back(i);
  return arr;
}

struct NamedGroup {
  std::string label;
  TargetGroup group;
};

}  // namespace

Json cmd_value(const RunConfig& cfg_in, const std::string& out_dir) {
  Prepared p = prepare(cfg_in);
  long long evaluations = 0;
  Vector psi = psi_for(*p.base, p, p.cfg.seed, &evaluations);

  Json report = report_header("value", p.cfg, p.n, p.split.test.n());
  report["utility"] = {{"id", p.base->id()},
                       {"learner", p.cfg.learner.base.fingerprint()},
                       {"metric", p.cfg.metric.id()}};
  report["psi"] = vector_to_json(psi);
  report["evaluations"] = evaluations;
  report["counters"] = counters_json(*p.ctx);
  write_report(out_dir, report);
  write_text_file(out_dir + "/psi.csv", psi_csv(psi));
  return report;
}

namespace {

Json summary_json(std::vector<double> ranges) {
  Json s;
  s["count"] = ranges.size();
  if (ranges.empty()) return s;
  std::sort(ranges.begin(), ranges.end());
  std::size_t m = ranges.size();
  double median = m % 2 ? ranges[m / 2]
                        : 0.5 * (ranges[m / 2 - 1] + ranges[m / 2]);
  s["min"] = ranges.front();
  s["median"] = median;
  s["max"] = ranges.back();
  return s;
}

}  // namespace

Json cmd_range(const RunConfig& cfg_in, const std::string& out_dir) {
  Prepared p = prepare(cfg_in);
  CandidateSet set = build_candidates(p);
  auto members = explicit_members(p, set);
  if (members.empty()) throw ConfigError("candidate family is empty");

  long long evaluations = 0;
  std::vector<Vector> psis;
  psis.reserve(members.size());
  for (const auto& m : members) {
    // Common random numbers: every candidate sees the same coalitions, so
    // the reported spread comes from the utilities, not the draws.
    psis.push_back(psi_for(*m, p, p.cfg.seed, &evaluations));
  }

  std::string csv = "target,favorability,best_id,worst_id,best,worst,range\n";

  // A degenerate payout budget under one candidate is recorded against that
  // candidate and voids the range for this target; other targets and the
  // scaled-rank column still go through.
  auto range_block = [&](const std::string& label, const TargetGroup& group,
                         const FavorabilitySpec& fav, double* range_out) {
    Json tj;
    Json values = Json::array();
    std::vector<RangeEntry> entries;
    entries.reserve(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
      try {
        double v = favorability(fav, psis[c], group);
        entries.push_back(RangeEntry{members[c]->id(), v});
        values.push_back({{"id", members[c]->id()}, {"value", v}});
      } catch (const DomainError& e) {
        values.push_back({{"id", members[c]->id()}, {"error", e.what()}});
      }
    }
    tj["values"] = std::move(values);
    if (entries.size() == members.size()) {
      RangeResult r = range_over(entries);
      tj["best_id"] = r.best_id;
      tj["worst_id"] = r.worst_id;
      tj["best"] = r.best_value;
      tj["worst"] = r.worst_value;
      tj["range"] = r.range();
      *range_out = r.range();
      csv += label + "," + fav.id() + "," + r.best_id + "," + r.worst_id +
             "," + format_double(r.best_value) + "," +
             format_double(r.worst_value) + "," + format_double(r.range()) +
             "\n";
    } else {
      tj["degenerate"] = true;
      *range_out = std::numeric_limits<double>::quiet_NaN();
      csv += label + "," + fav.id() + ",,,nan,nan,nan\n";
    }
    return tj;
  };

  FavorabilitySpec payout;
  payout.kind = FavorabilitySpec::Kind::kPayout;
  FavorabilitySpec scaled_rank;
  scaled_rank.kind = FavorabilitySpec::Kind::kScaledRank;

  std::vector<double> singleton_payout_ranges;
  std::vector<double> singleton_rank_ranges;
  std::vector<double> group_payout_ranges;
  auto keep = [](std::vector<double>& dst, double r) {
    if (!std::isnan(r)) dst.push_back(r);
  };

  Json singletons = Json::array();
  for (int i = 0; i < p.n; ++i) {
    TargetGroup g = TargetGroup::single(i);
    std::string label = "point-" + std::to_string(i);
    double rp = 0.0, rr = 0.0;
    Json tj;
    tj["index"] = i;
    tj["payout"] = range_block(label, g, payout, &rp);
    tj["scaled_rank"] = range_block(label, g, scaled_rank, &rr);
    keep(singleton_payout_ranges, rp);
    keep(singleton_rank_ranges, rr);
    singletons.push_back(std::move(tj));
  }

  std::vector<NamedGroup> groups;
  if (!p.cfg.target_indices.empty()) {
    groups.push_back({"target", group_from_indices(p.cfg.target_indices, p.n)});
  }
  if (p.cfg.has_groups) {
    int size = std::max(
        1, static_cast<int>(std::floor(p.cfg.group_fraction * p.n)));
    for (int g = 0; g < p.cfg.group_count; ++g) {
      Rng rng(derive_seed(p.cfg.group_seed,
                          {0x9409, static_cast<std::uint64_t>(g)}));
      Coalition members_g = draw_subset(p.n, size, -1, rng);
      groups.push_back({"group-" + std::to_string(g),
                        TargetGroup{members_g.members()}});
    }
  }

  Json groups_json = Json::array();
  for (const NamedGroup& t : groups) {
    double rp = 0.0;
    Json tj;
    tj["label"] = t.label;
    tj["members"] = group_json(t.group);
    tj["payout"] = range_block(t.label, t.group, payout, &rp);
    keep(group_payout_ranges, rp);
    groups_json.push_back(std::move(tj));
  }

  Json report = report_header("range", p.cfg, p.n, p.split.test.n());
  report["family"] = to_string(set.family);
  Json ids = Json::array();
  for (const auto& m : members) ids.push_back(m->id());
  report["candidates"] = std::move(ids);
  report["singletons"] = std::move(singletons);
  if (!groups.empty()) report["groups"] = std::move(groups_json);
  Json summary;
  summary["singleton_payout"] = summary_json(std::move(singleton_payout_ranges));
  summary["singleton_scaled_rank"] =
      summary_json(std::move(singleton_rank_ranges));
  if (!groups.empty()) {
    summary["group_payout"] = summary_json(std::move(group_payout_ranges));
  }
  report["summary"] = std::move(summary);
  report["evaluations"] = evaluations;
  report["counters"] = counters_json(*p.ctx);
  write_report(out_dir, report);
  write_text_file(out_dir + "/ranges.csv", csv);
  return report;
}

Json cmd_game(const RunConfig& cfg_in, const std::string& out_dir,
              bool with_oracle) {
  Prepared p = prepare(cfg_in);
  if (!p.cfg.has_candidates) {
    throw ConfigError("game needs a 'candidates' section");
  }
  if (p.cfg.target_indices.empty()) {
    throw ConfigError("game needs target.indices (one group per run)");
  }
  TargetGroup group = group_from_indices(p.cfg.target_indices, p.n);
  p.cfg.fav.validate();

  SamplePlan plan;
  plan.exact = p.cfg.exact;
  plan.budget = p.cfg.budget;
  plan.seed = p.cfg.seed;
  plan.shared_draws = p.cfg.shared_draws;
  plan.cap = p.cfg.exact_cap;

  CandidateSet set = build_candidates(p);
  const bool force_discrete = p.cfg.algorithm == "discrete";
  const bool aggregate = p.cfg.fav.kind == FavorabilitySpec::Kind::kAggregate;

  GameResult result;
  if (!force_discrete && set.family == Family::kMinCardinality) {
    result = game_kmin(*p.base, p.cfg.resolved_k_star(p.n), p.scheme,
                       p.cfg.fav, group, plan);
  } else if (!force_discrete && set.family == Family::kBehaviors && aggregate) {
    result = game_behaviors(set, p.scheme, group, plan);
  } else if (!force_discrete && set.family == Family::kCost && aggregate) {
    result = game_cost("base", p.base->learner(), p.cfg.cost_a, p.cfg.cost_b,
                       p.scheme, p.cfg.fav, group, plan, p.ctx);
  } else {
    auto members = explicit_members(p, set);
    std::vector<const Utility*> views;
    views.reserve(members.size());
    for (const auto& m : members) views.push_back(m.get());
    result = game_discrete(views, p.scheme, p.cfg.fav, group, plan);
  }

  Json report = report_header("game", p.cfg, p.n, p.split.test.n());
  report["favorability"] = p.cfg.fav.id();
  report["family"] = to_string(set.family);
  report["target"] = group_json(group);
  report["algorithm"] = result.algorithm;
  Json best;
  best["id"] = result.best_id;
  best["value"] = result.best_value;
  if (result.best_k_min >= 0) best["k_min"] = result.best_k_min;
  if (!result.best_choice.empty()) best["choice"] = result.best_choice;
  if (!std::isnan(result.best_p_t)) best["p_t"] = result.best_p_t;
  Json worst;
  worst["id"] = result.worst_id;
  worst["value"] = result.worst_value;
  if (result.worst_k_min >= 0) worst["k_min"] = result.worst_k_min;
  if (!result.worst_choice.empty()) worst["choice"] = result.worst_choice;
  if (!std::isnan(result.worst_p_t)) worst["p_t"] = result.worst_p_t;
  report["best"] = std::move(best);
  report["worst"] = std::move(worst);
  report["range"] = result.range();
  report["evaluations_used"] = result.evaluations_used;
  if (!result.per_candidate.empty()) {
    Json values = Json::array();
    for (const RangeEntry& e : result.per_candidate) {
      values.push_back({{"id", e.id}, {"value", e.value}});
    }
    report["per_candidate"] = std::move(values);
    std::string csv = "id,value\n";
    for (const RangeEntry& e : result.per_candidate) {
      csv += e.id + "," + format_double(e.value) + "\n";
    }
    write_text_file(out_dir + "/candidates.csv", csv);
  }

  if (with_oracle) {
    auto members = explicit_members(p, set);
    std::vector<const Utility*> views;
    views.reserve(members.size());
    for (const auto& m : members) views.push_back(m.get());
    OracleResult oracle =
        oracle_argmax(views, p.scheme, p.cfg.fav, group, p.cfg.exact_cap);
    Json oj;
    oj["best_id"] = oracle.best_id;
    oj["worst_id"] = oracle.worst_id;
    oj["best_value"] = oracle.best_value;
    oj["worst_value"] = oracle.worst_value;
    oj["evaluations_used"] = oracle.evaluations_used;
    oj["agrees_best"] = oracle.best_id == result.best_id;
    oj["agrees_worst"] = oracle.worst_id == result.worst_id;
    report["oracle"] = std::move(oj);
  }

  report["counters"] = counters_json(*p.ctx);
  write_report(out_dir, report);
  return report;
}

Json cmd_filter_flips(const RunConfig& cfg_in, const std::string& out_dir) {
  Prepared p = prepare(cfg_in);
  CandidateSet set = build_candidates(p);
  auto members = explicit_members(p, set);
  if (members.size() < 2) {
    throw ConfigError("filter-flips needs at least two candidates");
  }

  long long evaluations = 0;
  std::vector<Vector> psis;
  psis.reserve(members.size());
  for (const auto& m : members) {
    psis.push_back(psi_for(*m, p, p.cfg.seed, &evaluations));
  }

  const double alpha = p.cfg.fav.alpha;
  const double threshold = alpha * static_cast<double>(p.n);
  Json flips = Json::array();
  std::string csv = "index,min_rank,max_rank,survives_under,filtered_under\n";
  int flip_count = 0;
  for (int i = 0; i < p.n; ++i) {
    int min_rank = p.n;
    int max_rank = -1;
    std::string survives_under;
    std::string filtered_under;
    for (std::size_t c = 0; c < members.size(); ++c) {
      int r = rank_of(i, psis[c]);
      min_rank = std::min(min_rank, r);
      max_rank = std::max(max_rank, r);
      bool survives = static_cast<double>(r) > threshold;
      if (survives && survives_under.empty()) survives_under = members[c]->id();
      if (!survives && filtered_under.empty()) filtered_under = members[c]->id();
    }
    if (!survives_under.empty() && !filtered_under.empty()) {
      ++flip_count;
      Json f;
      f["index"] = i;
      f["min_rank"] = min_rank;
      f["max_rank"] = max_rank;
      f["survives_under"] = survives_under;
      f["filtered_under"] = filtered_under;
      flips.push_back(std::move(f));
      csv += std::to_string(i) + "," + std::to_string(min_rank) + "," +
             std::to_string(max_rank) + "," + survives_under + "," +
             filtered_under + "\n";
    }
  }

  Json report = report_header("filter-flips", p.cfg, p.n, p.split.test.n());
  report["family"] = to_string(set.family);
  Json ids = Json::array();
  for (const auto& m : members) ids.push_back(m->id());
  report["candidates"] = std::move(ids);
  report["alpha"] = alpha;
  report["threshold"] = threshold;
  report["flips"] = std::move(flips);
  report["flip_count"] = flip_count;
  report["flip_fraction"] =
      static_cast<double>(flip_count) / static_cast<double>(p.n);
  report["any_flip"] = flip_count > 0;
  report["evaluations"] = evaluations;
  report["counters"] = counters_json(*p.ctx);
  write_report(out_dir, report);
  write_text_file(out_dir + "/flips.csv", csv);
  return report;
}

}  // namespace semival
