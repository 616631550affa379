// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check recomputes its expectations from first principles
// (mask loops, defining formulas, enumerated stratum variances) rather than
// trusting the code paths under test.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "semival/commands.hpp"
#include "semival/errors.hpp"
#include "semival/gaming.hpp"
#include "semival/semivalues.hpp"
#include "semival/utility.hpp"
#include "support.hpp"

using namespace semival;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void line(int idx, const std::string& what, bool ok,
          const std::string& detail) {
  std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<double> random_values(std::uint64_t count, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(count);
  for (auto& x : v) x = u(gen);
  return v;
}

FavorabilitySpec agg_spec() { return FavorabilitySpec{}; }

// |S| below the cutoff scores like the empty coalition; the from-scratch
// reference for the min-cardinality replay.
class CutoffUtility : public Utility {
 public:
  CutoffUtility(const Utility& inner, int cutoff)
      : inner_(inner),
        cutoff_(cutoff),
        id_(inner.id() + "|cut=" + std::to_string(cutoff)),
        empty_(inner.value(Coalition(inner.ground_size()))) {}

  double value(const Coalition& S) const override {
    return S.size() < cutoff_ ? empty_ : inner_.value(S);
  }
  const std::string& id() const override { return id_; }
  int ground_size() const override { return inner_.ground_size(); }

 private:
  const Utility& inner_;
  int cutoff_;
  std::string id_;
  double empty_;
};

// ---------------------------------------------------------------------------

bool axiom_suite(std::string* detail) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(11);
  double worst_eff = 0.0, worst_dummy = 0.0, worst_sym = 0.0, worst_lin = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + trial % 11;
    std::uint64_t full = (std::uint64_t{1} << n) - 1;
    WeightScheme scheme = WeightScheme::shapley(n);

    TableUtility u = testsup::random_table(n, 1000 + trial);
    auto fn = testsup::as_fn(u);
    Vector psi = exact_semivalues(u, scheme);
    double eff = std::abs(psi.sum() - (fn(full) - fn(0)));
    worst_eff = std::max(worst_eff, eff / (1e-9 * (1.0 + std::abs(fn(full)))));

    // Dummy: lift an (n-1)-player game by ignoring the top player's bit.
    std::vector<double> inner = random_values(std::uint64_t{1} << (n - 1), gen);
    std::vector<double> lifted(std::uint64_t{1} << n);
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      lifted[mask] = inner[mask & (full >> 1)];
    }
    Vector psi_dummy =
        exact_semivalues(TableUtility("dummy", n, lifted), scheme);
    worst_dummy = std::max(worst_dummy, std::abs(psi_dummy[n - 1]));

    // Symmetry: value depends on players 0 and 1 only through their count.
    std::vector<double> g = random_values((std::uint64_t{1} << n) * 3, gen);
    std::vector<double> sym(std::uint64_t{1} << n);
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      std::uint64_t rest = mask >> 2;
      int count = static_cast<int>(mask & 1) + static_cast<int>((mask >> 1) & 1);
      sym[mask] = g[rest * 3 + count];
    }
    Vector psi_sym = exact_semivalues(TableUtility("sym", n, sym), scheme);
    worst_sym = std::max(worst_sym, std::abs(psi_sym[0] - psi_sym[1]));

    // Linearity in the utility.
    std::vector<double> va = random_values(std::uint64_t{1} << n, gen);
    std::vector<double> vb = random_values(std::uint64_t{1} << n, gen);
    std::vector<double> vc(va.size());
    const double a = 0.7, b = -1.3;
    for (std::size_t m = 0; m < va.size(); ++m) vc[m] = a * va[m] + b * vb[m];
    Vector pa = exact_semivalues(TableUtility("a", n, va), scheme);
    Vector pb = exact_semivalues(TableUtility("b", n, vb), scheme);
    Vector pc = exact_semivalues(TableUtility("c", n, vc), scheme);
    worst_lin =
        std::max(worst_lin, (pc - (a * pa + b * pb)).cwiseAbs().maxCoeff());
  }

  double elapsed = seconds_since(t0);
  bool ok = worst_eff <= 1.0 && worst_dummy <= 1e-12 && worst_sym <= 1e-9 &&
            worst_lin <= 1e-9 && elapsed < 60.0;
  *detail = fmt("eff margin %.2g, dummy %.2g, sym %.2g, lin %.2g, %.1fs",
                worst_eff, worst_dummy, worst_sym, worst_lin, elapsed);
  return ok;
}

bool weight_families(std::string* detail) {
  double worst_mass = 0.0;
  for (int n = 2; n <= 16; ++n) {
    for (const char* name : {"shapley", "banzhaf", "loo"}) {
      WeightScheme s = make_weights(name, n);
      double mass = 0.0;
      for (int k = 0; k < n; ++k) {
        double c = static_cast<double>(oracle::pascal(n - 1, k));
        double want;
        if (s.name == "shapley") {
          want = 1.0 / (static_cast<double>(n) * c);
        } else if (s.name == "banzhaf") {
          want = std::ldexp(1.0, 1 - n);
        } else {
          want = k == n - 1 ? 1.0 : 0.0;
        }
        if (s.w[k] != want) {
          *detail = fmt("%s n=%d k=%d: got %.17g want %.17g", name, n, k,
                        s.w[k], want);
          return false;
        }
        mass += c * s.w[k];
      }
      worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    }
  }
  *detail = fmt("exact match n=2..16, worst mass error %.2g", worst_mass);
  return worst_mass <= 1e-12;
}

bool sampler_soundness(std::string* detail) {
  auto t0 = std::chrono::steady_clock::now();
  const int n = 8;
  const long long B = 200;
  const int reps = 500;
  TableUtility u = testsup::random_table(n, 2024, "soundness");
  auto fn = testsup::as_fn(u);
  WeightScheme scheme = WeightScheme::shapley(n);
  Vector exact = exact_semivalues(u, scheme);

  // Enumerated stratum variances of the coupled marginal contribution.
  Matrix sigma2 = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double sum = 0.0, sumsq = 0.0;
      long long count = 0;
      std::uint64_t total = std::uint64_t{1} << n;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        if ((mask >> i) & 1) continue;
        if (__builtin_popcountll(mask) != k) continue;
        double d = fn(mask | (std::uint64_t{1} << i)) - fn(mask);
        sum += d;
        sumsq += d * d;
        ++count;
      }
      double mean = sum / count;
      sigma2(i, k) = sumsq / count - mean * mean;
    }
  }
  Vector var_theory = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double c = static_cast<double>(oracle::pascal(n - 1, k));
      var_theory[i] +=
          c * c * scheme.w[k] * scheme.w[k] * sigma2(i, k) / static_cast<double>(B);
    }
  }

  Matrix draws(reps, n);
  for (int r = 0; r < reps; ++r) {
    draws.row(r) =
        stratified_sample(u, scheme, BudgetSpec::uniform(B), 3000 + r)
            .psi.transpose();
  }
  double worst_bias = 0.0, worst_var = 0.0;
  for (int i = 0; i < n; ++i) {
    double mean = draws.col(i).mean();
    double var =
        (draws.col(i).array() - mean).square().sum() / (reps - 1);
    double stderr_mean = std::sqrt(var / reps);
    worst_bias = std::max(worst_bias,
                          std::abs(mean - exact[i]) / (3.0 * stderr_mean));
    worst_var = std::max(worst_var,
                         std::abs(var - var_theory[i]) / var_theory[i]);
  }
  double elapsed = seconds_since(t0);
  bool ok = worst_bias <= 1.0 && worst_var <= 0.20 && elapsed < 300.0;
  *detail = fmt("bias margin %.2f, var error %.1f%%, %.1fs", worst_bias,
                100.0 * worst_var, elapsed);
  return ok;
}

bool replay_exactness(std::string* detail) {
  const int n = 10, k_star = 4;
  TableUtility u = testsup::random_table(n, 77, "replay");
  WeightScheme scheme = WeightScheme::shapley(n);
  SamplePlan plan;
  plan.budget = 32;
  plan.seed = 99;

  // psi-hat per cutoff, recovered coordinate by coordinate through the
  // aggregate favorability of singleton groups.
  Matrix replayed(k_star + 1, n);
  long long evals = -1;
  for (int i = 0; i < n; ++i) {
    GameResult r = game_kmin(u, k_star, scheme, agg_spec(),
                             TargetGroup::single(i), plan);
    if (static_cast<int>(r.per_candidate.size()) != k_star + 1) {
      *detail = "unexpected candidate count";
      return false;
    }
    for (int t = 0; t <= k_star; ++t) replayed(t, i) = r.per_candidate[t].value;
    if (evals < 0) evals = r.evaluations_used;
  }

  long long mismatches = 0;
  for (int t = 0; t <= k_star; ++t) {
    CutoffUtility cut(u, t);
    Vector fresh =
        stratified_sample(cut, scheme, BudgetSpec::uniform(plan.budget),
                          plan.seed)
            .psi;
    for (int i = 0; i < n; ++i) {
      if (fresh[i] != replayed(t, i)) ++mismatches;
    }
  }
  *detail = fmt("%d cutoffs x %d points, %lld mismatched bits", k_star + 1, n,
                mismatches);
  return mismatches == 0;
}

bool behavior_certification(std::string* detail) {
  auto ridge_option = [](double lambda) {
    BehaviorOption o;
    o.untrained = false;
    o.base.kind = LearnerBase::Kind::kRidge;
    o.base.ridge.lambda = lambda;
    o.label = o.base.fingerprint();
    return o;
  };
  std::mt19937_64 gen(5);
  int agreed = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    Matrix X;
    Vector y;
    testsup::linear_regression_data(11, 2, 0.4, 400 + trial, &X, &y);
    SplitData s = split_table(X, y, 0.25, 1, Task::kRegression);
    auto ctx = std::make_shared<EvalContext>(s.train, s.test, true);
    Learner learner;
    learner.base.ridge.lambda = 0.1;
    UtilitySpec base("base", learner, metric_from_kind("neg-mse"), ctx);

    BehaviorTable table;
    table.k_star = 3;
    table.options.resize(3);
    table.options[0] = {BehaviorOption{}, BehaviorOption{}};
    table.options[1] = {BehaviorOption{}, ridge_option(5.0)};
    table.options[2] = {ridge_option(1e-4), ridge_option(5.0)};
    CandidateSet family = build_small_behaviors(base, table);

    int n = s.train.n();
    std::uniform_int_distribution<int> pick(0, n - 1);
    int p0 = pick(gen), p1 = pick(gen);
    while (p1 == p0) p1 = pick(gen);
    TargetGroup group{{std::min(p0, p1), std::max(p0, p1)}};

    SamplePlan plan;
    plan.exact = true;
    GameResult r =
        game_behaviors(family, WeightScheme::shapley(n), group, plan);

    auto members = family.materialize(16.0);
    std::vector<const Utility*> views;
    for (const auto& m : members) views.push_back(m.get());
    OracleResult o = oracle_argmax(views, WeightScheme::shapley(n), agg_spec(),
                                   group);
    bool match = r.best_id == o.best_id && r.worst_id == o.worst_id &&
                 std::abs(r.best_value - o.best_value) <= 1e-9 &&
                 std::abs(r.worst_value - o.worst_value) <= 1e-9;
    if (match) ++agreed;
  }
  *detail = fmt("%d/%d trials matched the 8-vector oracle", agreed, trials);
  return agreed == trials;
}

bool cost_endpoints(std::string* detail) {
  std::mt19937_64 gen(6);
  double worst_excess = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix X;
    Vector y;
    testsup::blob_classification_data(11, 1, 0.8, 100 + trial, &X, &y);
    SplitData s;
    // The shuffle decides which labels reach the test set, so search over
    // split seeds until both classes are held out.
    for (std::uint64_t split_seed = 1;; ++split_seed) {
      s = split_table(X, y, 0.25, split_seed, Task::kClassification);
      double lo = s.test.labels.minCoeff(), hi = s.test.labels.maxCoeff();
      if (lo == 0.0 && hi == 1.0) break;
    }
    int n = s.train.n();
    auto ctx = std::make_shared<EvalContext>(s.train, s.test, true);
    Learner learner;
    learner.base.kind = LearnerBase::Kind::kLogistic;
    learner.base.logistic.steps = 40;

    std::uniform_int_distribution<int> pick(0, n - 1);
    int p0 = pick(gen), p1 = pick(gen);
    while (p1 == p0) p1 = pick(gen);
    TargetGroup group{{std::min(p0, p1), std::max(p0, p1)}};

    WeightScheme scheme = WeightScheme::shapley(n);
    SamplePlan plan;
    plan.exact = true;
    GameResult r = game_cost("base", learner, 0.5, 0.6, scheme, agg_spec(),
                             group, plan, ctx);

    CandidateSet grid = build_cost("base", learner, 0.5, 0.6, 101, ctx);
    for (const auto& m : grid.members) {
      double f = favorability(agg_spec(), exact_semivalues(*m, scheme), group);
      worst_excess = std::max(worst_excess, f - r.best_value);
      worst_excess = std::max(worst_excess, r.worst_value - f);
    }
  }
  *detail = fmt("20 groups, worst grid excess over endpoints %.2g",
                worst_excess);
  return worst_excess <= 1e-12;
}

bool budget_trend(std::string* detail) {
  const int n = 8;
  std::mt19937_64 gen(7);
  std::vector<double> base = random_values(std::uint64_t{1} << n, gen);
  TargetGroup group{{0, 1}};
  const std::uint64_t pmask = 0b11;

  // Additive bonus on the target pair shifts its aggregate value by an
  // exactly known amount per candidate.
  std::vector<TableUtility> tables;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> v = base;
    double bonus = 0.04 * c;
    for (std::uint64_t mask = 0; mask < v.size(); ++mask) {
      v[mask] += bonus * __builtin_popcountll(mask & pmask);
    }
    tables.emplace_back("c" + std::to_string(c), n, v);
  }
  std::vector<const Utility*> candidates;
  for (const auto& t : tables) candidates.push_back(&t);

  WeightScheme scheme = WeightScheme::shapley(n);
  std::vector<double> exact_f;
  for (const auto* c : candidates) {
    exact_f.push_back(
        favorability(agg_spec(), exact_semivalues(*c, scheme), group));
  }
  if (!(exact_f[2] > exact_f[1] + 0.07 && exact_f[1] > exact_f[0] + 0.07)) {
    *detail = "crafted gaps missing";
    return false;
  }

  const long long budgets[3] = {50, 200, 800};
  double p95[3];
  int recovered_at_800 = 0;
  for (int b = 0; b < 3; ++b) {
    std::vector<double> subopt;
    for (int seed = 0; seed < 200; ++seed) {
      SamplePlan plan;
      plan.budget = budgets[b];
      plan.seed = 5000 + seed;
      GameResult r =
          game_discrete(candidates, scheme, agg_spec(), group, plan);
      int chosen = r.best_id[1] - '0';
      subopt.push_back(exact_f[2] - exact_f[chosen]);
      if (b == 2 && chosen == 2) ++recovered_at_800;
    }
    std::sort(subopt.begin(), subopt.end());
    p95[b] = subopt[189];
  }
  bool ok = p95[0] >= p95[1] && p95[1] >= p95[2] && recovered_at_800 >= 190;
  *detail = fmt("p95 suboptimality %.3f / %.3f / %.3f, recovery %d/200 at 800",
                p95[0], p95[1], p95[2], recovered_at_800);
  return ok;
}

bool loo_robustness(std::string* detail) {
  const int n = 10;
  std::mt19937_64 gen(8);
  std::vector<double> values = random_values(std::uint64_t{1} << n, gen);
  WeightScheme scheme = WeightScheme::loo(n);
  Vector psi = exact_semivalues(TableUtility("base", n, values), scheme);

  std::vector<double> affine(values.size());
  for (std::size_t m = 0; m < values.size(); ++m) {
    affine[m] = 2.5 * values[m] - 0.7;
  }
  Vector psi_affine =
      exact_semivalues(TableUtility("affine", n, affine), scheme);
  bool ranks_equal = true;
  for (int i = 0; i < n; ++i) {
    ranks_equal = ranks_equal && rank_of(i, psi) == rank_of(i, psi_affine);
  }

  // Garbage on every coalition of size <= n-2 must not move a single bit.
  std::vector<double> mangled = values;
  std::uniform_real_distribution<double> wild(-1e6, 1e6);
  for (std::uint64_t mask = 0; mask < mangled.size(); ++mask) {
    if (__builtin_popcountll(mask) <= n - 2) mangled[mask] = wild(gen);
  }
  Vector psi_mangled =
      exact_semivalues(TableUtility("mangled", n, mangled), scheme);
  bool invariant = (psi_mangled.array() == psi.array()).all();

  *detail = fmt("affine ranks %s, small-coalition invariance %s",
                ranks_equal ? "equal" : "DIFFER",
                invariant ? "exact" : "BROKEN");
  return ranks_equal && invariant;
}

bool pipeline_desk_scale(std::string* detail) {
  auto t0 = std::chrono::steady_clock::now();

  Matrix X;
  Vector y;
  testsup::blob_classification_data(50, 2, 1.2, 42, &X, &y);
  std::uint64_t split_seed = 1;
  for (;; ++split_seed) {
    SplitData probe = split_table(X, y, 0.2, split_seed, Task::kClassification);
    double lo = probe.test.labels.minCoeff(), hi = probe.test.labels.maxCoeff();
    if (probe.train.n() == 40 && lo == 0.0 && hi == 1.0) break;
  }

  Json features = Json::array();
  Json labels = Json::array();
  for (int r = 0; r < X.rows(); ++r) {
    features.push_back(Json::array({X(r, 0), X(r, 1)}));
    labels.push_back(y[r]);
  }
  Json j = {
      {"task", "classification"},
      {"data",
       {{"inline", {{"features", features}, {"labels", labels}}},
        {"test_fraction", 0.2},
        {"split_seed", split_seed}}},
      {"learner", {{"kind", "logistic"}, {"steps", 25}}},
      {"metric", {{"kind", "accuracy"}}},
      {"mode", {{"kind", "sampled"}, {"budget", 2}, {"seed", 123}}},
      {"candidates",
       {{"family", "cost"}, {"a", 0.5}, {"b", 0.6}, {"grid", 100}}},
      {"target",
       {{"groups", {{"count", 100}, {"fraction", 0.1}, {"seed", 7}}}}},
  };
  RunConfig cfg = parse_config(j);

  Json first = cmd_range(cfg, testsup::temp_dir("acc-range1"));
  Json second = cmd_range(cfg, testsup::temp_dir("acc-range2"));
  first.erase("generated_at");
  second.erase("generated_at");
  bool deterministic = first == second;
  bool shape = first["candidates"].size() == 100 &&
               first["singletons"].size() == 40 &&
               first["groups"].size() == 100 &&
               first["groups"][0]["members"].size() == 4 &&
               first["singletons"][0].contains("payout") &&
               first["singletons"][0].contains("scaled_rank");

  Json fj = j;
  fj["favorability"] = {{"kind", "filtered"}, {"alpha", 0.2}};
  Json flips = cmd_filter_flips(parse_config(fj), testsup::temp_dir("acc-fl"));
  double fraction = flips["flip_fraction"].get<double>();
  bool fraction_ok = fraction >= 0.0 && fraction <= 1.0;

  // Crafted instance: a small exact family where some point's filter
  // survival depends on the candidate.
  bool crafted = false;
  for (int seed = 1; seed <= 20 && !crafted; ++seed) {
    Json small = {
        {"task", "regression"},
        {"data",
         {{"inline",
           {{"features", Json::parse("[[0],[1],[2],[3],[4],[5],[6],[7]]")},
            {"labels",
             Json::parse("[0.3, 1.1, 1.7, 3.2, 3.8, 5.1, 6.2, 6.8]")}}},
          {"split_seed", seed}}},
        {"learner", {{"kind", "ridge"}, {"lambda", 0.5}}},
        {"metric", {{"kind", "neg-mse"}}},
        {"mode", {{"kind", "exact"}}},
        {"candidates", {{"family", "u0"}, {"k_star", 4}}},
        {"favorability", {{"kind", "filtered"}, {"alpha", 0.34}}},
    };
    Json r = cmd_filter_flips(parse_config(small),
                              testsup::temp_dir("acc-craft"));
    crafted = r["any_flip"] == true;
  }

  double elapsed = seconds_since(t0);
  bool ok = deterministic && shape && fraction_ok && crafted &&
            elapsed < 600.0;
  *detail = fmt("rerun %s, flip fraction %.3f, crafted flip %s, %.1fs",
                deterministic ? "identical" : "DIFFERS", fraction,
                crafted ? "found" : "MISSING", elapsed);
  return ok;
}

bool cost_accounting(std::string* detail) {
  const int n = 9;
  TableUtility u = testsup::random_table(n, 31, "acct");
  WeightScheme scheme = WeightScheme::shapley(n);
  SamplePlan plan;
  plan.budget = 24;
  plan.seed = 4;
  long long one_run =
      stratified_sample(u, scheme, BudgetSpec::uniform(plan.budget), plan.seed)
          .evaluations;
  bool kmin_flat = true;
  for (int k_star : {2, 4, 6}) {
    GameResult r = game_kmin(u, k_star, scheme, agg_spec(),
                             TargetGroup::single(0), plan);
    kmin_flat = kmin_flat && r.evaluations_used == one_run;
  }
  bool sampler_count = one_run == 2 * (static_cast<long long>(n) * n * 24) + 1;

  Matrix X;
  Vector y;
  testsup::linear_regression_data(11, 2, 0.4, 9, &X, &y);
  SplitData s = split_table(X, y, 0.25, 1, Task::kRegression);
  auto ctx = std::make_shared<EvalContext>(s.train, s.test, true);
  Learner learner;
  learner.base.ridge.lambda = 0.1;
  UtilitySpec base("base", learner, metric_from_kind("neg-mse"), ctx);
  CandidateSet family = build_u0(base, 3);
  ctx->reset_counters();

  int m = s.train.n();
  SamplePlan exact_plan;
  exact_plan.exact = true;
  GameResult r = game_discrete(family.views(), WeightScheme::shapley(m),
                               agg_spec(), TargetGroup{{0, 1}}, exact_plan);
  auto c = ctx->counters();
  long long masks = 1LL << m;
  bool discrete_count = r.evaluations_used == 4 * masks &&
                        c.requests == 4 * masks && c.fresh_scores == masks &&
                        c.models_trained == masks - 1;

  *detail = fmt(
      "kmin %lld evals for every k*, discrete %lld requests / %lld fresh / "
      "%lld trained",
      one_run, c.requests, c.fresh_scores, c.models_trained);
  return kmin_flat && sampler_count && discrete_count;
}

}  // namespace

int main() {
  struct Criterion {
    const char* what;
    bool (*run)(std::string*);
  };
  const Criterion criteria[] = {
      {"semivalue axioms on random games", axiom_suite},
      {"weight families match their defining formulas", weight_families},
      {"sampler is unbiased with the predicted variance", sampler_soundness},
      {"min-cardinality replay is bit-exact", replay_exactness},
      {"behavior search matches the brute-force oracle", behavior_certification},
      {"cost extrema sit at the interval endpoints", cost_endpoints},
      {"suboptimality shrinks with budget", budget_trend},
      {"leave-one-out ranks ignore small coalitions", loo_robustness},
      {"desk-scale pipeline is deterministic and flips", pipeline_desk_scale},
      {"evaluation accounting is exact", cost_accounting},
  };
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(&detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    line(idx, c.what, ok, detail);
  }
  if (failures) {
    std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return 1;
  }
  std::printf("acceptance: 10/10 criteria passed\n");
  return 0;
}
