#include "semival/utility.hpp"

#include <cmath>
#include <cstdio>

#include "semival/errors.hpp"

namespace semival {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

TableUtility::TableUtility(std::string id, int n, std::vector<double> values)
    : id_(std::move(id)), n_(n), values_(std::move(values)) {
  if (n_ < 0 || n_ > 30) throw DomainError("table utility: n out of range");
  if (values_.size() != (std::size_t{1} << n_)) {
    throw DomainError("table utility: need exactly 2^n values");
  }
}

double TableUtility::value(const Coalition& S) const {
  if (S.ground_size() != n_) {
    throw DomainError("table utility '" + id_ + "': coalition ground size " +
                      std::to_string(S.ground_size()) + ", expected " +
                      std::to_string(n_));
  }
  return values_[S.mask()];
}

EvalContext::EvalContext(Dataset train, TestSet test, bool cache_enabled)
    : train_(std::move(train)),
      test_(std::move(test)),
      cache_enabled_(cache_enabled) {
  train_.validate();
  test_.validate();
  if (train_.task != test_.task) {
    throw DataError("train and test splits disagree on the task");
  }
  if (train_.dim() != test_.dim()) {
    throw DataError("train and test splits disagree on feature dimension");
  }
}

int EvalContext::intern(std::unordered_map<std::string, int>& table,
                        const std::string& s) {
  auto it = table.find(s);
  if (it != table.end()) return it->second;
  int id = static_cast<int>(table.size());
  table.emplace(s, id);
  return id;
}

const EvalContext::RawScore& EvalContext::raw_for(int proc_id,
                                                  const LearnerBase* base,
                                                  const Coalition& S) {
  if (base == nullptr) {
    // Untrained predictions ignore the coalition entirely.
    if (!untrained_ready_) {
      Model m = untrained_model();
      if (test_.task == Task::kRegression) {
        untrained_raw_.mse = mean_squared_error(m, test_);
      } else {
        untrained_raw_.stats = binary_stats(m, test_);
      }
      untrained_ready_ = true;
    }
    return untrained_raw_;
  }

  Key key{proc_id, -1, S};
  if (cache_enabled_) {
    auto it = raws_.find(key);
    if (it != raws_.end()) return it->second;
  }
  Model m = train_base(*base, train_.rows(S), train_.label_rows(S));
  ++counters_.models_trained;
  RawScore raw;
  if (test_.task == Task::kRegression) {
    raw.mse = mean_squared_error(m, test_);
  } else {
    raw.stats = binary_stats(m, test_);
  }
  if (!cache_enabled_) {
    static thread_local RawScore scratch;
    scratch = raw;
    return scratch;
  }
  return raws_.emplace(std::move(key), raw).first->second;
}

double EvalContext::compute(const Learner& learner, const ScoreMetric& metric,
                            const Coalition& S) {
  Learner::Resolved r = learner.resolve(S.size());
  const LearnerBase* base = r.untrained ? nullptr : r.base;
  int proc_id = intern(proc_ids_, r.fingerprint());
  const RawScore& raw = raw_for(proc_id, base, S);
  ++counters_.fresh_scores;
  if (metric.classification()) return metric.from_stats(raw.stats);
  return metric.from_mse(raw.mse);
}

double EvalContext::evaluate(const Learner& learner, const ScoreMetric& metric,
                             const Coalition& S) {
  ++counters_.requests;
  if (metric.classification() != (train_.task == Task::kClassification)) {
    throw DomainError("metric '" + metric.id() + "' does not fit a " +
                      to_string(train_.task) + " task");
  }
  if (!cache_enabled_) return compute(learner, metric, S);

  Learner::Resolved r = learner.resolve(S.size());
  int proc_id = intern(proc_ids_, r.fingerprint());
  int metric_id = intern(metric_ids_, metric.id());
  // All untrained evaluations share one canonical key: the score cannot
  // depend on the coalition.
  Key key{proc_id, metric_id, r.untrained ? Coalition() : S};
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  double v = compute(learner, metric, S);
  values_.emplace(std::move(key), v);
  return v;
}

UtilitySpec::UtilitySpec(std::string id, Learner learner, ScoreMetric metric,
                         std::shared_ptr<EvalContext> ctx)
    : id_(std::move(id)),
      learner_(std::move(learner)),
      metric_(std::move(metric)),
      ctx_(std::move(ctx)) {
  if (!ctx_) throw DomainError("utility '" + id_ + "' needs a context");
  learner_.base.validate();
  metric_.validate();
}

double UtilitySpec::value(const Coalition& S) const {
  try {
    return ctx_->evaluate(learner_, metric_, S);
  } catch (const DomainError& e) {
    throw DomainError("utility '" + id_ + "', coalition of size " +
                      std::to_string(S.size()) + ": " + e.what());
  }
}

int UtilitySpec::ground_size() const { return ctx_->data().n(); }

std::string to_string(Family f) {
  switch (f) {
    case Family::kCustom: return "custom";
    case Family::kMinCardinality: return "min-cardinality";
    case Family::kBehaviors: return "behaviors";
    case Family::kMonotone: return "monotone";
    case Family::kCost: return "cost";
  }
  return "?";
}

double CandidateSet::size() const {
  if (implicit()) return behavior_table.combinations();
  return static_cast<double>(members.size());
}

std::vector<const Utility*> CandidateSet::views() const {
  if (implicit()) {
    throw DomainError(
        "behavior family is implicit; materialize it before enumerating");
  }
  std::vector<const Utility*> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.get());
  return out;
}

std::shared_ptr<UtilitySpec> CandidateSet::behavior_member(
    const std::vector<int>& choice) const {
  if (!implicit()) {
    throw DomainError("behavior_member applies to the behavior family only");
  }
  const BehaviorTable& table = behavior_table;
  if (static_cast<int>(choice.size()) != table.k_star) {
    throw DomainError("behavior choice must pick one option per cardinality");
  }
  Learner learner = behavior_base->learner();
  learner.small.clear();
  learner.small.reserve(choice.size());
  std::string tag = "[";
  for (int k = 0; k < table.k_star; ++k) {
    const auto& opts = table.at(k);
    int c = choice[static_cast<std::size_t>(k)];
    if (c < 0 || c >= static_cast<int>(opts.size())) {
      throw DomainError("behavior choice out of range at cardinality " +
                        std::to_string(k));
    }
    learner.small.push_back(opts[static_cast<std::size_t>(c)]);
    if (k) tag += ",";
    tag += std::to_string(c);
  }
  tag += "]";
  return std::make_shared<UtilitySpec>(behavior_base->id() + "|b=" + tag,
                                       std::move(learner),
                                       behavior_base->metric(),
                                       behavior_base->context());
}

std::vector<std::shared_ptr<UtilitySpec>> CandidateSet::materialize(
    double limit) const {
  if (!implicit()) return members;
  double count = behavior_table.combinations();
  if (count > limit) {
    throw DomainError("behavior family has " + fmt(count) +
                      " members, above the materialization limit " +
                      fmt(limit));
  }
  std::vector<std::shared_ptr<UtilitySpec>> out;
  std::vector<int> choice(static_cast<std::size_t>(behavior_table.k_star), 0);
  for (;;) {
    out.push_back(behavior_member(choice));
    int k = behavior_table.k_star - 1;
    for (; k >= 0; --k) {
      auto& c = choice[static_cast<std::size_t>(k)];
      if (c + 1 < static_cast<int>(behavior_table.at(k).size())) {
        ++c;
        break;
      }
      c = 0;
    }
    if (k < 0) break;
  }
  return out;
}

CandidateSet build_u0(const UtilitySpec& base, int k_star) {
  int n = base.ground_size();
  if (k_star < 0 || k_star >= n) {
    throw DomainError("min-cardinality family needs k_star in [0, n)");
  }
  CandidateSet set;
  set.family = Family::kMinCardinality;
  for (int t = 0; t <= k_star; ++t) {
    Learner learner = base.learner();
    learner.small.clear();
    learner.k_min = t;
    set.members.push_back(std::make_shared<UtilitySpec>(
        base.id() + "|kmin=" + std::to_string(t), std::move(learner),
        base.metric(), base.context()));
  }
  return set;
}

CandidateSet build_small_behaviors(const UtilitySpec& base,
                                   BehaviorTable table) {
  // Cardinality 0 is implicitly the single untrained option when omitted.
  if (table.options.empty()) {
    table.options.push_back({BehaviorOption{}});
  } else if (table.options[0].empty()) {
    table.options[0] = {BehaviorOption{}};
  }
  if (static_cast<int>(table.options.size()) < table.k_star) {
    throw ConfigError("behavior table: missing options for cardinality " +
                      std::to_string(table.options.size()));
  }
  table.validate(base.ground_size());
  CandidateSet set;
  set.family = Family::kBehaviors;
  set.behavior_base = std::make_shared<UtilitySpec>(
      base.id(), base.learner(), base.metric(), base.context());
  set.behavior_table = std::move(table);
  return set;
}

CandidateSet build_mono(const UtilitySpec& base,
                        const std::vector<Transform>& transforms) {
  if (transforms.empty()) {
    throw ConfigError("monotone family needs at least one transform");
  }
  if (!base.metric().transform.is_identity()) {
    throw ConfigError(
        "monotone family must start from an untransformed base metric");
  }
  CandidateSet set;
  set.family = Family::kMonotone;
  for (const Transform& t : transforms) {
    t.validate();
    ScoreMetric metric = base.metric();
    if (t.kind == Transform::Kind::kNegSqrt) {
      // -sqrt(-x) is increasing only on x <= 0, so the base score must be
      // pinned nonpositive, either by metric sign or by an upper clip at 0.
      bool nonpositive = metric.clip_bounds
                             ? metric.clip_bounds->second <= 0.0
                             : (metric.kind == ScoreMetric::Kind::kNegMse ||
                                metric.kind == ScoreMetric::Kind::kNegRmse);
      if (!nonpositive) {
        throw ConfigError(
            "neg-sqrt transform needs a nonpositive base score range; clip the "
            "metric at 0 or use a neg-* metric");
      }
    }
    metric.transform = t;
    set.members.push_back(std::make_shared<UtilitySpec>(
        base.id() + "|" + t.id(), base.learner(), std::move(metric),
        base.context()));
  }
  return set;
}

CandidateSet build_cost(const std::string& base_id, const Learner& classifier,
                        double a, double b, int grid_points,
                        std::shared_ptr<EvalContext> ctx) {
  if (!(a > 0.0 && b < 1.0 && a < b)) {
    throw ConfigError("cost family needs 0 < a < b < 1");
  }
  if (grid_points < 2) {
    throw ConfigError("cost family needs at least the two endpoints");
  }
  CandidateSet set;
  set.family = Family::kCost;
  for (int g = 0; g < grid_points; ++g) {
    // Endpoints are pinned exactly so their ids match endpoint shortcuts.
    double p = g == 0 ? a
               : g == grid_points - 1
                   ? b
                   : a + (b - a) * static_cast<double>(g) /
                             static_cast<double>(grid_points - 1);
    ScoreMetric metric;
    metric.kind = ScoreMetric::Kind::kNetBenefit;
    metric.p_t = p;
    set.members.push_back(std::make_shared<UtilitySpec>(
        base_id + "|p_t=" + fmt(p), classifier, metric, ctx));
  }
  return set;
}

}  // namespace semival
