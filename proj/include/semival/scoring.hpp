#pragma once

#include <optional>
#include <string>
#include <utility>

#include "semival/dataset.hpp"
#include "semival/learners.hpp"

namespace semival {

// Strictly increasing map applied to a raw score. The registered forms keep
// candidate families easy to declare from config.
struct Transform {
  enum class Kind { kIdentity, kNegSqrt, kAffine, kSignedLog };
  Kind kind = Kind::kIdentity;
  double a = 1.0;  // affine slope, must be > 0
  double b = 0.0;  // affine offset

  double apply(double x) const;
  std::string id() const;
  bool is_identity() const { return kind == Kind::kIdentity; }
  void validate() const;

  static Transform identity();
  static Transform neg_sqrt();
  static Transform affine(double a, double b);
  static Transform signed_log();
  static Transform from_id(const std::string& id, double a = 1.0,
                           double b = 0.0);
};

// Confusion counts of hard predictions at the fixed 0.5 threshold.
struct BinaryStats {
  long long tp = 0;
  long long fp = 0;
  long long tn = 0;
  long long fn = 0;

  long long positives() const { return tp + fn; }
  long long negatives() const { return fp + tn; }
  long long total() const { return tp + fp + tn + fn; }

  double accuracy() const;
  double tpr() const;  // undefined without positives
  double fpr() const;  // undefined without negatives
};

BinaryStats binary_stats(const Model& m, const TestSet& test);

// Mean squared prediction error on the test set.
double mean_squared_error(const Model& m, const TestSet& test);

// Clinical-style net benefit at threshold probability p_t: the true-positive
// rate minus the false-positive rate weighted by the odds p_t/(1-p_t).
double net_benefit(double tpr_value, double fpr_value, double p_t);

double clip(double x, double lo, double hi);

// Test-set performance functional. Pipeline: raw metric, then optional
// clipping into [lo, hi], then the monotone transform. Clipping before the
// transform keeps every family member a strictly increasing function of the
// same clipped base score.
struct ScoreMetric {
  enum class Kind { kNegMse, kNegRmse, kAccuracy, kTpr, kFpr, kNetBenefit };
  Kind kind = Kind::kNegMse;
  double p_t = 0.5;  // net benefit only
  Transform transform;
  std::optional<std::pair<double, double>> clip_bounds;

  bool classification() const {
    return kind != Kind::kNegMse && kind != Kind::kNegRmse;
  }
  std::string id() const;
  void validate() const;

  double from_mse(double mse) const;               // regression kinds
  double from_stats(const BinaryStats& st) const;  // classification kinds
};

ScoreMetric metric_from_kind(const std::string& kind);

// Full scoring path: predict on the test set, apply the metric.
double score(const ScoreMetric& metric, const Model& m, const TestSet& test);

}  // namespace semival
