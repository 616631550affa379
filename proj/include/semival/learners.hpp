#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semival/dataset.hpp"

namespace semival {

// A fitted predictor. Untrained models exist so the empty coalition (and any
// coalition below a minimum-cardinality rule) still yields predictions: the
// constant 0 for regression, probability 0.5 for classification.
struct Model {
  enum class Kind { kUntrained, kRidge, kLogistic };
  Kind kind = Kind::kUntrained;
  Vector weights;
  double intercept = 0.0;

  bool trained() const { return kind != Kind::kUntrained; }
};

Model untrained_model();

// Regression predictions (untrained: all zeros).
Vector predict_values(const Model& m, const Matrix& X);

// Class-1 probabilities (untrained: all 0.5).
Vector predict_proba(const Model& m, const Matrix& X);

// Hard labels at the fixed 0.5 threshold; ties go to class 0.
Eigen::VectorXi predict_classes(const Model& m, const Matrix& X);

struct RidgeParams {
  double lambda = 1e-3;
};

struct LogisticParams {
  int steps = 300;
  double lr = 0.5;
  double l2 = 1e-3;
};

// The base training procedure, before any small-coalition rule.
struct LearnerBase {
  enum class Kind { kRidge, kLogistic };
  Kind kind = Kind::kRidge;
  RidgeParams ridge;
  LogisticParams logistic;

  std::string fingerprint() const;
  void validate() const;
};

// Ridge with an unpenalized intercept (features and labels are centered, so
// only the slope coordinates feel lambda). lambda > 0 keeps the normal matrix
// invertible for arbitrarily small coalitions.
Model train_ridge(const Matrix& X, const Vector& y, double lambda);

// Logistic regression by full-batch gradient descent: zero initialization,
// fixed step count, optional l2 on the slopes. Deterministic by construction.
Model train_logistic(const Matrix& X, const Vector& y, int steps, double lr,
                     double l2);

Model train_base(const LearnerBase& base, const Matrix& X, const Vector& y);

// One way to handle a given small cardinality: skip training or substitute a
// different base procedure.
struct BehaviorOption {
  bool untrained = true;
  LearnerBase base;
  std::string label = "untrained";

  std::string fingerprint() const {
    return untrained ? "untrained" : base.fingerprint();
  }
};

// Declared training options for every cardinality below k_star. Cardinality 0
// may be omitted (it is implicitly the single untrained option) and may only
// ever contain untrained options: no procedure can fit an empty sample.
struct BehaviorTable {
  int k_star = 0;
  std::vector<std::vector<BehaviorOption>> options;  // index = cardinality

  void validate(int n) const;
  const std::vector<BehaviorOption>& at(int k) const;
  // Number of behavior assignments (product of option counts per cardinality).
  double combinations() const;
};

// Training procedure with its small-coalition handling resolved per
// cardinality: an explicit behavior choice first, then the minimum-
// cardinality fallback, then the base. Cardinality 0 is always untrained.
struct Learner {
  LearnerBase base;
  int k_min = 0;                       // below this: untrained
  std::vector<BehaviorOption> small;   // chosen option per cardinality < size

  struct Resolved {
    bool untrained = true;
    const LearnerBase* base = nullptr;  // set when !untrained
    std::string fingerprint() const {
      return untrained ? "untrained" : base->fingerprint();
    }
  };
  Resolved resolve(int cardinality) const;
};

// Trains for the coalition with the learner's small-coalition rule applied.
Model train_coalition(const Learner& learner, const Coalition& S,
                      const Dataset& data);

}  // namespace semival
