#include "semival/scoring.hpp"

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

double Transform::apply(double x) const {
  switch (kind) {
    case Kind::kIdentity:
      return x;
    case Kind::kNegSqrt:
      // Strictly increasing on (-inf, 0]; maps -mse to -rmse.
      if (x > 0.0) {
        throw DomainError("neg-sqrt transform needs a nonpositive score, got " +
                          fmt(x));
      }
      return -std::sqrt(-x);
    case Kind::kAffine:
      return a * x + b;
    case Kind::kSignedLog:
      return x >= 0.0 ? std::log1p(x) : -std::log1p(-x);
  }
  throw DomainError("transform: unknown kind");
}

std::string Transform::id() const {
  switch (kind) {
    case Kind::kIdentity:
      return "identity";
    case Kind::kNegSqrt:
      return "neg-sqrt";
    case Kind::kAffine:
      return "affine(a=" + fmt(a) + ",b=" + fmt(b) + ")";
    case Kind::kSignedLog:
      return "signed-log";
  }
  return "?";
}

void Transform::validate() const {
  if (kind == Kind::kAffine && !(a > 0.0)) {
    throw ConfigError("affine transform needs slope a > 0 to stay increasing");
  }
}

Transform Transform::identity() { return Transform{}; }

Transform Transform::neg_sqrt() {
  Transform t;
  t.kind = Kind::kNegSqrt;
  return t;
}

Transform Transform::affine(double a, double b) {
  Transform t;
  t.kind = Kind::kAffine;
  t.a = a;
  t.b = b;
  t.validate();
  return t;
}

Transform Transform::signed_log() {
  Transform t;
  t.kind = Kind::kSignedLog;
  return t;
}

Transform Transform::from_id(const std::string& id, double a, double b) {
  if (id == "identity") return identity();
  if (id == "neg-sqrt") return neg_sqrt();
  if (id == "affine") return affine(a, b);
  if (id == "signed-log") return signed_log();
  throw ConfigError("unknown transform '" + id + "'");
}

double BinaryStats::accuracy() const {
  long long t = total();
  if (t == 0) throw DomainError("accuracy undefined on an empty test set");
  return static_cast<double>(tp + tn) / static_cast<double>(t);
}

double BinaryStats::tpr() const {
  long long p = positives();
  if (p == 0) {
    throw DomainError("true-positive rate undefined: test set has no positives");
  }
  return static_cast<double>(tp) / static_cast<double>(p);
}

double BinaryStats::fpr() const {
  long long n = negatives();
  if (n == 0) {
    throw DomainError("false-positive rate undefined: test set has no negatives");
  }
  return static_cast<double>(fp) / static_cast<double>(n);
}

BinaryStats binary_stats(const Model& m, const TestSet& test) {
  if (test.task != Task::kClassification) {
    throw DomainError("binary_stats needs a classification test set");
  }
  Eigen::VectorXi pred = predict_classes(m, test.features);
  BinaryStats st;
  for (int i = 0; i < pred.size(); ++i) {
    bool truth = test.labels[i] != 0.0;
    bool hat = pred[i] != 0;
    if (truth && hat) ++st.tp;
    else if (!truth && hat) ++st.fp;
    else if (!truth && !hat) ++st.tn;
    else ++st.fn;
  }
  return st;
}

double mean_squared_error(const Model& m, const TestSet& test) {
  if (test.task != Task::kRegression) {
    throw DomainError("mean_squared_error needs a regression test set");
  }
  Vector pred = predict_values(m, test.features);
  return (pred - test.labels).squaredNorm() /
         static_cast<double>(test.labels.size());
}

double net_benefit(double tpr_value, double fpr_value, double p_t) {
  if (!(p_t > 0.0 && p_t < 1.0)) {
    throw DomainError("net benefit needs threshold probability in (0, 1)");
  }
  return tpr_value - (p_t / (1.0 - p_t)) * fpr_value;
}

double clip(double x, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("clip needs lo < hi");
  if (x < lo) return lo;
  if (x > hi) return hi;
  return x;
}

std::string ScoreMetric::id() const {
  std::string base;
  switch (kind) {
    case Kind::kNegMse: base = "neg-mse"; break;
    case Kind::kNegRmse: base = "neg-rmse"; break;
    case Kind::kAccuracy: base = "accuracy"; break;
    case Kind::kTpr: base = "tpr"; break;
    case Kind::kFpr: base = "fpr"; break;
    case Kind::kNetBenefit: base = "net-benefit(p_t=" + fmt(p_t) + ")"; break;
  }
  if (clip_bounds) {
    base += "|clip[" + fmt(clip_bounds->first) + "," +
            fmt(clip_bounds->second) + "]";
  }
  if (!transform.is_identity()) base += "|" + transform.id();
  return base;
}

void ScoreMetric::validate() const {
  transform.validate();
  if (kind == Kind::kNetBenefit && !(p_t > 0.0 && p_t < 1.0)) {
    throw ConfigError("net-benefit threshold p_t must lie in (0, 1)");
  }
  if (clip_bounds && !(clip_bounds->first < clip_bounds->second)) {
    throw ConfigError("clip bounds must satisfy lo < hi");
  }
}

ScoreMetric metric_from_kind(const std::string& kind) {
  ScoreMetric m;
  if (kind == "neg-mse") m.kind = ScoreMetric::Kind::kNegMse;
  else if (kind == "neg-rmse") m.kind = ScoreMetric::Kind::kNegRmse;
  else if (kind == "accuracy") m.kind = ScoreMetric::Kind::kAccuracy;
  else if (kind == "tpr") m.kind = ScoreMetric::Kind::kTpr;
  else if (kind == "fpr") m.kind = ScoreMetric::Kind::kFpr;
  else if (kind == "net-benefit") m.kind = ScoreMetric::Kind::kNetBenefit;
  else throw ConfigError("unknown metric '" + kind + "'");
  return m;
}

namespace {

// Clip first, then transform: a family member f(V) must see the same base
// score V (including its clip) that the untransformed metric reports.
double finish(const ScoreMetric& metric, double raw) {
  double v = raw;
  if (metric.clip_bounds) {
    v = clip(v, metric.clip_bounds->first, metric.clip_bounds->second);
  }
  v = metric.transform.apply(v);
  if (!std::isfinite(v)) {
    throw DomainError("metric '" + metric.id() + "' produced a non-finite score");
  }
  return v;
}

}  // namespace

double ScoreMetric::from_mse(double mse) const {
  switch (kind) {
    case Kind::kNegMse:
      return finish(*this, -mse);
    case Kind::kNegRmse:
      return finish(*this, -std::sqrt(mse));
    default:
      throw DomainError("metric '" + id() + "' is not mse-based");
  }
}

double ScoreMetric::from_stats(const BinaryStats& st) const {
  switch (kind) {
    case Kind::kAccuracy:
      return finish(*this, st.accuracy());
    case Kind::kTpr:
      return finish(*this, st.tpr());
    case Kind::kFpr:
      return finish(*this, st.fpr());
    case Kind::kNetBenefit:
      return finish(*this, net_benefit(st.tpr(), st.fpr(), p_t));
    default:
      throw DomainError("metric '" + id() + "' is not confusion-based");
  }
}

double score(const ScoreMetric& metric, const Model& m, const TestSet& test) {
  if (metric.classification()) {
    return metric.from_stats(binary_stats(m, test));
  }
  return metric.from_mse(mean_squared_error(m, test));
}

}  // namespace semival
