#include "semival/gaming.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "semival/combinatorics.hpp"
#include "semival/errors.hpp"

namespace semival {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Vector candidate_psi(const Utility& u, const WeightScheme& scheme,
                     const SamplePlan& plan, std::uint64_t seed,
                     long long* evaluations) {
  if (plan.exact) {
    return exact_semivalues(u, scheme, plan.cap, evaluations);
  }
  SampleResult r =
      stratified_sample(u, scheme, BudgetSpec::uniform(plan.budget), seed);
  if (evaluations) *evaluations += r.evaluations;
  return r.psi;
}

}  // namespace

GameResult game_discrete(const std::vector<const Utility*>& candidates,
                         const WeightScheme& scheme,
                         const FavorabilitySpec& fav, const TargetGroup& group,
                         const SamplePlan& plan) {
  if (candidates.empty()) {
    throw DomainError("discrete game needs at least one candidate");
  }
  fav.validate();
  GameResult result;
  result.algorithm = "discrete";
  result.exact = plan.exact;
  result.seed = plan.seed;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Utility& u = *candidates[c];
    std::uint64_t seed =
        plan.shared_draws
            ? plan.seed
            : derive_seed(plan.seed, {0xd15c, static_cast<std::uint64_t>(c)});
    Vector psi =
        candidate_psi(u, scheme, plan, seed, &result.evaluations_used);
    result.per_candidate.push_back(
        RangeEntry{u.id(), favorability(fav, psi, group)});
  }
  RangeResult r = range_over(result.per_candidate);
  result.best_id = r.best_id;
  result.worst_id = r.worst_id;
  result.best_value = r.best_value;
  result.worst_value = r.worst_value;
  return result;
}

GameResult game_kmin(const Utility& base, int k_star,
                     const WeightScheme& scheme, const FavorabilitySpec& fav,
                     const TargetGroup& group, const SamplePlan& plan) {
  const int n = scheme.n;
  if (k_star < 0 || k_star >= n) {
    throw DomainError("min-cardinality game needs k_star in [0, n)");
  }
  fav.validate();

  GameResult result;
  result.algorithm = "min-cardinality";
  result.exact = plan.exact;
  result.seed = plan.seed;

  StrataStats stats;
  if (plan.exact) {
    stats = exact_strata_stats(base, plan.cap, &result.evaluations_used);
  } else {
    SampleResult r = stratified_sample(
        base, scheme, BudgetSpec::uniform(plan.budget), plan.seed);
    result.evaluations_used = r.evaluations;
    stats = std::move(r.stats);
  }

  // Replay: a cutoff at k_min freezes every stratum mean whose coalitions
  // fall below it at the empty-coalition score. The adjoined side keeps one
  // extra cardinality because |S + i| = k + 1.
  StrataStats replay = stats;
  for (int t = 0; t <= k_star; ++t) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        replay.xplus(i, k) = k >= t - 1 ? stats.xplus(i, k) : stats.u_empty;
        replay.xminus(i, k) = k >= t ? stats.xminus(i, k) : stats.u_empty;
      }
    }
    Vector psi = reweigh(replay, scheme);
    result.per_candidate.push_back(RangeEntry{
        base.id() + "|kmin=" + std::to_string(t), favorability(fav, psi, group)});
  }

  RangeResult r = range_over(result.per_candidate);
  result.best_id = r.best_id;
  result.worst_id = r.worst_id;
  result.best_value = r.best_value;
  result.worst_value = r.worst_value;
  for (int t = 0; t <= k_star; ++t) {
    if (result.per_candidate[static_cast<std::size_t>(t)].id == r.best_id &&
        result.best_k_min < 0) {
      result.best_k_min = t;
    }
    if (result.per_candidate[static_cast<std::size_t>(t)].id == r.worst_id &&
        result.worst_k_min < 0) {
      result.worst_k_min = t;
    }
  }
  return result;
}

namespace {

// A learner that applies one behavior option at the cardinality being
// evaluated. Only ever called on coalitions of that cardinality.
Learner learner_for_option(const Learner& base, const BehaviorOption& opt) {
  Learner l = base;
  l.small.clear();
  if (opt.untrained) {
    l.k_min = std::numeric_limits<int>::max();
  } else {
    l.base = opt.base;
    l.k_min = 0;
  }
  return l;
}

// Aggregate-favorability coefficient of a coalition with k members, l of
// them in the group: each group member inside contributes w_{k-1} (it sees
// the coalition as "its set plus itself"), each one outside loses w_k.
double overlap_coefficient(int k, int l, int group_size,
                           const WeightScheme& scheme) {
  double c = 0.0;
  if (k >= 1) c += static_cast<double>(l) * scheme.w[k - 1];
  if (k <= scheme.n - 1) c -= static_cast<double>(group_size - l) * scheme.w[k];
  return c;
}

Coalition draw_with_overlap(int n, int k, int l, const std::vector<int>& in_p,
                            const std::vector<int>& out_p, Rng& rng) {
  Coalition S(n);
  std::vector<int> pool = in_p;
  for (int j = 0; j < l; ++j) {
    int pick = j + static_cast<int>(
                       rng.below(static_cast<std::uint64_t>(pool.size()) - j));
    std::swap(pool[static_cast<std::size_t>(j)],
              pool[static_cast<std::size_t>(pick)]);
    S.add(pool[static_cast<std::size_t>(j)]);
  }
  pool = out_p;
  for (int j = 0; j < k - l; ++j) {
    int pick = j + static_cast<int>(
                       rng.below(static_cast<std::uint64_t>(pool.size()) - j));
    std::swap(pool[static_cast<std::size_t>(j)],
              pool[static_cast<std::size_t>(pick)]);
    S.add(pool[static_cast<std::size_t>(j)]);
  }
  return S;
}

}  // namespace

GameResult game_behaviors(const CandidateSet& family,
                          const WeightScheme& scheme, const TargetGroup& group,
                          const SamplePlan& plan) {
  if (family.family != Family::kBehaviors || !family.behavior_base) {
    throw DomainError("behavior game needs a behavior candidate family");
  }
  const UtilitySpec& base = *family.behavior_base;
  const BehaviorTable& table = family.behavior_table;
  const int n = scheme.n;
  if (base.ground_size() != n) {
    throw DomainError("behavior game: utility and weights disagree on n");
  }
  group.validate(n);
  const int p = static_cast<int>(group.members.size());

  std::vector<int> in_p = group.members;
  std::vector<int> out_p;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(in_p.begin(), in_p.end(), i)) out_p.push_back(i);
  }

  GameResult result;
  result.algorithm = "behaviors";
  result.exact = plan.exact;
  result.seed = plan.seed;

  auto& ctx = *base.context();
  double best_total = 0.0;
  double worst_total = 0.0;
  result.best_choice.assign(static_cast<std::size_t>(table.k_star), 0);
  result.worst_choice.assign(static_cast<std::size_t>(table.k_star), 0);

  if (plan.exact && n > plan.cap) {
    throw DomainError("behavior game: n exceeds the exact-mode cap");
  }

  for (int k = 0; k <= n; ++k) {
    const bool selectable = k < table.k_star;
    std::vector<BehaviorOption> options;
    if (selectable) {
      options = table.at(k);
    } else {
      BehaviorOption base_opt;
      base_opt.untrained = false;
      base_opt.base = base.learner().base;
      base_opt.label = "base";
      options = {base_opt};
    }

    // Mean utility per (overlap l, option), with the stratum coefficient and
    // count; strata whose coefficient vanishes are skipped outright.
    const int l_lo = std::max(0, k - static_cast<int>(out_p.size()));
    const int l_hi = std::min(k, p);
    std::vector<double> contribution(options.size(), 0.0);
    for (int l = l_lo; l <= l_hi; ++l) {
      double coeff = overlap_coefficient(k, l, p, scheme);
      if (coeff == 0.0) continue;
      double count = binom(p, l) * binom(n - p, k - l);
      if (count == 0.0) continue;

      std::vector<double> mean(options.size(), 0.0);
      if (plan.exact) {
        // Enumerate the stratum: l group members and k - l outsiders.
        long long seen = 0;
        std::uint64_t in_total = std::uint64_t{1} << in_p.size();
        for (std::uint64_t mi = 0; mi < in_total; ++mi) {
          if (static_cast<int>(std::popcount(mi)) != l) continue;
          std::uint64_t out_total = std::uint64_t{1} << out_p.size();
          for (std::uint64_t mo = 0; mo < out_total; ++mo) {
            if (static_cast<int>(std::popcount(mo)) != k - l) continue;
            Coalition S(n);
            for (std::size_t b = 0; b < in_p.size(); ++b) {
              if ((mi >> b) & 1) S.add(in_p[b]);
            }
            for (std::size_t b = 0; b < out_p.size(); ++b) {
              if ((mo >> b) & 1) S.add(out_p[b]);
            }
            ++seen;
            for (std::size_t o = 0; o < options.size(); ++o) {
              Learner l_opt = learner_for_option(base.learner(), options[o]);
              double v = ctx.evaluate(l_opt, base.metric(), S);
              ++result.evaluations_used;
              mean[o] += (v - mean[o]) / static_cast<double>(seen);
            }
          }
        }
      } else {
        double share = count / binom(n, k);
        long long m = std::max<long long>(
            1, std::llround(static_cast<double>(plan.budget) * share));
        Rng rng(derive_seed(plan.seed, {0xbe4a, static_cast<std::uint64_t>(k),
                                        static_cast<std::uint64_t>(l)}));
        for (long long t = 1; t <= m; ++t) {
          Coalition S = draw_with_overlap(n, k, l, in_p, out_p, rng);
          for (std::size_t o = 0; o < options.size(); ++o) {
            Learner l_opt = learner_for_option(base.learner(), options[o]);
            double v = ctx.evaluate(l_opt, base.metric(), S);
            ++result.evaluations_used;
            mean[o] += (v - mean[o]) / static_cast<double>(t);
          }
        }
      }
      for (std::size_t o = 0; o < options.size(); ++o) {
        contribution[o] += coeff * count * mean[o];
      }
    }

    std::size_t arg_best = 0;
    std::size_t arg_worst = 0;
    for (std::size_t o = 1; o < options.size(); ++o) {
      if (contribution[o] > contribution[arg_best]) arg_best = o;
      if (contribution[o] < contribution[arg_worst]) arg_worst = o;
    }
    best_total += contribution[arg_best];
    worst_total += contribution[arg_worst];
    if (selectable) {
      result.best_choice[static_cast<std::size_t>(k)] =
          static_cast<int>(arg_best);
      result.worst_choice[static_cast<std::size_t>(k)] =
          static_cast<int>(arg_worst);
    }
  }

  auto choice_id = [&](const std::vector<int>& choice) {
    std::string tag = "[";
    for (std::size_t k = 0; k < choice.size(); ++k) {
      if (k) tag += ",";
      tag += std::to_string(choice[k]);
    }
    return base.id() + "|b=" + tag + "]";
  };
  result.best_id = choice_id(result.best_choice);
  result.worst_id = choice_id(result.worst_choice);
  result.best_value = best_total;
  result.worst_value = worst_total;
  return result;
}

GameResult game_cost(const std::string& base_id, const Learner& classifier,
                     double a, double b, const WeightScheme& scheme,
                     const FavorabilitySpec& fav, const TargetGroup& group,
                     const SamplePlan& plan, std::shared_ptr<EvalContext> ctx) {
  if (!(a > 0.0 && b < 1.0 && a < b)) {
    throw DomainError("cost game needs threshold probabilities 0 < a < b < 1");
  }
  if (!fav.linear()) {
    throw DomainError(
        "cost game endpoint reduction holds for the aggregate favorability "
        "only; route other favorabilities through the discrete game");
  }
  if (!ctx) throw DomainError("cost game needs an evaluation context");
  group.validate(scheme.n);

  ScoreMetric tpr_metric;
  tpr_metric.kind = ScoreMetric::Kind::kTpr;
  ScoreMetric fpr_metric;
  fpr_metric.kind = ScoreMetric::Kind::kFpr;
  UtilitySpec u_tpr(base_id + "|tpr", classifier, tpr_metric, ctx);
  UtilitySpec u_fpr(base_id + "|fpr", classifier, fpr_metric, ctx);

  GameResult result;
  result.algorithm = "cost";
  result.exact = plan.exact;
  result.seed = plan.seed;

  // Coupled runs: the same seed reproduces the same coalitions, and the
  // shared context trains each coalition's model once for both games.
  Vector psi_tpr = candidate_psi(u_tpr, scheme, plan, plan.seed,
                                 &result.evaluations_used);
  Vector psi_fpr = candidate_psi(u_fpr, scheme, plan, plan.seed,
                                 &result.evaluations_used);

  double agg_tpr = 0.0;
  double agg_fpr = 0.0;
  for (int i : group.members) {
    agg_tpr += psi_tpr[i];
    agg_fpr += psi_fpr[i];
  }
  auto value_at = [&](double p_t) {
    return agg_tpr - (p_t / (1.0 - p_t)) * agg_fpr;
  };
  double at_a = value_at(a);
  double at_b = value_at(b);

  result.best_p_t = at_a >= at_b ? a : b;
  result.worst_p_t = at_a >= at_b ? b : a;
  result.best_value = std::max(at_a, at_b);
  result.worst_value = std::min(at_a, at_b);
  result.best_id = base_id + "|p_t=" + fmt(result.best_p_t);
  result.worst_id = base_id + "|p_t=" + fmt(result.worst_p_t);
  result.per_candidate.push_back(RangeEntry{base_id + "|p_t=" + fmt(a), at_a});
  result.per_candidate.push_back(RangeEntry{base_id + "|p_t=" + fmt(b), at_b});
  return result;
}

namespace {

// The oracle rebuilds everything it needs locally so a defect in the search
// code cannot hide in a shared helper.
struct OracleMath {
  std::vector<std::vector<double>> choose;  // Pascal's triangle

  explicit OracleMath(int n) {
    choose.assign(static_cast<std::size_t>(n) + 1,
                  std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
    for (int row = 0; row <= n; ++row) {
      choose[static_cast<std::size_t>(row)][0] = 1.0;
      for (int col = 1; col <= row; ++col) {
        choose[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
            choose[static_cast<std::size_t>(row - 1)]
                  [static_cast<std::size_t>(col - 1)] +
            (col <= row - 1
                 ? choose[static_cast<std::size_t>(row - 1)]
                         [static_cast<std::size_t>(col)]
                 : 0.0);
      }
    }
  }

  std::vector<double> weights(const WeightScheme& scheme) const {
    int n = scheme.n;
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    if (scheme.name == "shapley") {
      for (int k = 0; k < n; ++k) {
        w[static_cast<std::size_t>(k)] =
            1.0 / (static_cast<double>(n) *
                   choose[static_cast<std::size_t>(n - 1)]
                         [static_cast<std::size_t>(k)]);
      }
    } else if (scheme.name == "banzhaf") {
      double unit = 1.0;
      for (int j = 0; j < n - 1; ++j) unit /= 2.0;
      for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = unit;
    } else if (scheme.name == "loo") {
      w[static_cast<std::size_t>(n - 1)] = 1.0;
    } else {
      for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = scheme.w[k];
    }
    return w;
  }
};

double oracle_favorability(const FavorabilitySpec& fav,
                           const std::vector<double>& psi,
                           const TargetGroup& group) {
  const int n = static_cast<int>(psi.size());
  auto rank = [&](int i) {
    int below = 0;
    for (int j = 0; j < n; ++j) {
      if (psi[static_cast<std::size_t>(i)] > psi[static_cast<std::size_t>(j)]) {
        ++below;
      }
    }
    return below;
  };
  switch (fav.kind) {
    case FavorabilitySpec::Kind::kAggregate: {
      double s = 0.0;
      for (int i : group.members) s += psi[static_cast<std::size_t>(i)];
      return s;
    }
    case FavorabilitySpec::Kind::kRank:
      if (group.members.size() != 1) {
        throw DomainError("oracle: rank favorability needs one target");
      }
      return static_cast<double>(rank(group.members[0]));
    case FavorabilitySpec::Kind::kScaledRank:
      if (group.members.size() != 1) {
        throw DomainError("oracle: scaled rank needs one target");
      }
      return static_cast<double>(rank(group.members[0])) /
             static_cast<double>(n);
    case FavorabilitySpec::Kind::kFiltered: {
      double kept = 0.0;
      for (int i : group.members) {
        if (static_cast<double>(rank(i)) > fav.alpha * static_cast<double>(n)) {
          kept += 1.0;
        }
      }
      return kept / static_cast<double>(group.members.size());
    }
    case FavorabilitySpec::Kind::kPayout: {
      double total = 0.0;
      for (double v : psi) total += v;
      if (total == 0.0) throw DomainError("oracle: zero total value");
      double s = 0.0;
      for (int i : group.members) s += psi[static_cast<std::size_t>(i)];
      return s * static_cast<double>(n) / total;
    }
  }
  throw DomainError("oracle: unknown favorability");
}

}  // namespace

OracleResult oracle_argmax(const std::vector<const Utility*>& candidates,
                           const WeightScheme& scheme,
                           const FavorabilitySpec& fav,
                           const TargetGroup& group, int cap) {
  if (candidates.empty()) throw DomainError("oracle: no candidates");
  const int n = scheme.n;
  if (n > cap) throw DomainError("oracle: n exceeds the exact-mode cap");
  if (n > 30) throw DomainError("oracle: n too large to enumerate");
  group.validate(n);

  OracleMath math(n);
  std::vector<double> w = math.weights(scheme);

  OracleResult result;
  bool first = true;
  for (const Utility* cand : candidates) {
    std::vector<double> psi(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      std::uint64_t total = std::uint64_t{1} << n;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        if ((mask >> j) & 1) continue;
        Coalition S = Coalition::from_mask(n, mask);
        double with = cand->value(S.with(j));
        double without = cand->value(S);
        result.evaluations_used += 2;
        sum += w[static_cast<std::size_t>(S.size())] * (with - without);
      }
      psi[static_cast<std::size_t>(j)] = sum;
    }
    double f = oracle_favorability(fav, psi, group);
    if (first || f > result.best_value) {
      result.best_value = f;
      result.best_id = cand->id();
    }
    if (first || f < result.worst_value) {
      result.worst_value = f;
      result.worst_id = cand->id();
    }
    first = false;
  }
  return result;
}

}  // namespace semival
