#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "semival/dataset.hpp"
#include "semival/learners.hpp"
#include "semival/scoring.hpp"

namespace semival {

// A cooperative game: coalition in, score out. Everything downstream
// (semivalues, favorability, gaming) sees only this interface.
class Utility {
 public:
  virtual ~Utility() = default;
  virtual double value(const Coalition& S) const = 0;
  virtual const std::string& id() const = 0;
  virtual int ground_size() const = 0;
};

// Mask-indexed score table; used for synthetic games where every coalition
// value is written down explicitly.
class TableUtility : public Utility {
 public:
  TableUtility(std::string id, int n, std::vector<double> values);

  double value(const Coalition& S) const override;
  const std::string& id() const override { return id_; }
  int ground_size() const override { return n_; }

 private:
  std::string id_;
  int n_;
  std::vector<double> values_;
};

// Shared scoring state for a family of composed utilities over one train/test
// pair. Caches raw test-set statistics per (training procedure, coalition) so
// family members that differ only in the metric never retrain, and final
// values per (procedure, metric, coalition). Also keeps the books:
//   requests       every value() call on any attached utility
//   fresh_scores   distinct (procedure, metric, coalition) evaluations
//   models_trained actual training runs
class EvalContext {
 public:
  EvalContext(Dataset train, TestSet test, bool cache_enabled = true);

  const Dataset& data() const { return train_; }
  const TestSet& test() const { return test_; }

  struct Counters {
    long long requests = 0;
    long long fresh_scores = 0;
    long long models_trained = 0;
  };
  Counters counters() const { return counters_; }
  void reset_counters() { counters_ = Counters{}; }

  double evaluate(const Learner& learner, const ScoreMetric& metric,
                  const Coalition& S);

 private:
  struct RawScore {
    double mse = 0.0;
    BinaryStats stats;
  };
  struct Key {
    int proc = 0;
    int metric = 0;
    Coalition coalition;
    bool operator==(const Key& o) const {
      return proc == o.proc && metric == o.metric && coalition == o.coalition;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.coalition.hash();
      h ^= (static_cast<std::uint64_t>(k.proc) << 32) ^
           static_cast<std::uint64_t>(k.metric + 0x9e37);
      h *= 0xbf58476d1ce4e5b9ULL;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };

  int intern(std::unordered_map<std::string, int>& table,
             const std::string& s);
  const RawScore& raw_for(int proc_id, const LearnerBase* base,
                          const Coalition& S);
  double compute(const Learner& learner, const ScoreMetric& metric,
                 const Coalition& S);

  Dataset train_;
  TestSet test_;
  bool cache_enabled_;
  Counters counters_;
  std::unordered_map<std::string, int> proc_ids_;
  std::unordered_map<std::string, int> metric_ids_;
  std::unordered_map<Key, double, KeyHash> values_;
  std::unordered_map<Key, RawScore, KeyHash> raws_;  // metric field unused
  bool untrained_ready_ = false;
  RawScore untrained_raw_;
};

// Composed utility: a training procedure and a test-set metric evaluated
// through a shared context.
class UtilitySpec : public Utility {
 public:
  UtilitySpec(std::string id, Learner learner, ScoreMetric metric,
              std::shared_ptr<EvalContext> ctx);

  double value(const Coalition& S) const override;
  const std::string& id() const override { return id_; }
  int ground_size() const override;

  const Learner& learner() const { return learner_; }
  const ScoreMetric& metric() const { return metric_; }
  const std::shared_ptr<EvalContext>& context() const { return ctx_; }

 private:
  std::string id_;
  Learner learner_;
  ScoreMetric metric_;
  std::shared_ptr<EvalContext> ctx_;
};

enum class Family { kCustom, kMinCardinality, kBehaviors, kMonotone, kCost };

std::string to_string(Family f);

// A finite ambiguity set of utilities. Explicit families list their members;
// the behavior family is kept implicit (one member per assignment of training
// options to small cardinalities) because its size is a product that should
// not be materialized by default.
struct CandidateSet {
  Family family = Family::kCustom;
  std::vector<std::shared_ptr<UtilitySpec>> members;

  // Implicit behavior product (family == kBehaviors).
  std::shared_ptr<UtilitySpec> behavior_base;
  BehaviorTable behavior_table;

  double size() const;
  bool implicit() const { return family == Family::kBehaviors; }
  std::vector<const Utility*> views() const;

  // Member for one behavior assignment (indices into the option lists).
  std::shared_ptr<UtilitySpec> behavior_member(
      const std::vector<int>& choice) const;

  // Expands the behavior product into explicit members; refuses products
  // larger than `limit`.
  std::vector<std::shared_ptr<UtilitySpec>> materialize(double limit) const;
};

// Minimum-cardinality family: one member per k_min in [0, k_star], each
// falling back to the untrained score below its k_min.
CandidateSet build_u0(const UtilitySpec& base, int k_star);

// Behavior family over a declared option table (implicit representation).
CandidateSet build_small_behaviors(const UtilitySpec& base,
                                   BehaviorTable table);

// Monotone family: one member per strictly increasing transform of the base
// metric.
CandidateSet build_mono(const UtilitySpec& base,
                        const std::vector<Transform>& transforms);

// Cost-sensitive family: net-benefit utilities for a grid of threshold
// probabilities in [a, b] around one fixed classifier.
CandidateSet build_cost(const std::string& base_id, const Learner& classifier,
                        double a, double b, int grid_points,
                        std::shared_ptr<EvalContext> ctx);

}  // namespace semival
