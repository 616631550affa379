#include "semival/learners.hpp"

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

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Model untrained_model() { return Model{}; }

Vector predict_values(const Model& m, const Matrix& X) {
  if (!m.trained()) return Vector::Zero(X.rows());
  if (m.weights.size() != X.cols()) {
    throw DomainError("predict: model dimension != feature dimension");
  }
  return (X * m.weights).array() + m.intercept;
}

Vector predict_proba(const Model& m, const Matrix& X) {
  if (!m.trained()) return Vector::Constant(X.rows(), 0.5);
  if (m.weights.size() != X.cols()) {
    throw DomainError("predict: model dimension != feature dimension");
  }
  Vector z = (X * m.weights).array() + m.intercept;
  Vector p(z.size());
  for (int i = 0; i < z.size(); ++i) p[i] = sigmoid(z[i]);
  return p;
}

Eigen::VectorXi predict_classes(const Model& m, const Matrix& X) {
  Vector p = predict_proba(m, X);
  Eigen::VectorXi c(p.size());
  for (int i = 0; i < p.size(); ++i) c[i] = p[i] > 0.5 ? 1 : 0;
  return c;
}

std::string LearnerBase::fingerprint() const {
  if (kind == Kind::kRidge) {
    return "ridge;lambda=" + fmt(ridge.lambda);
  }
  return "logistic;steps=" + std::to_string(logistic.steps) +
         ";lr=" + fmt(logistic.lr) + ";l2=" + fmt(logistic.l2);
}

void LearnerBase::validate() const {
  if (kind == Kind::kRidge) {
    if (ridge.lambda < 0.0 || !std::isfinite(ridge.lambda)) {
      throw ConfigError("ridge lambda must be a nonnegative finite number");
    }
  } else {
    if (logistic.steps < 0) throw ConfigError("logistic steps must be >= 0");
    if (!(logistic.lr > 0.0)) throw ConfigError("logistic lr must be positive");
    if (logistic.l2 < 0.0) throw ConfigError("logistic l2 must be >= 0");
  }
}

Model train_ridge(const Matrix& X, const Vector& y, double lambda) {
  if (X.rows() < 1) throw DomainError("train_ridge: empty sample");
  if (X.rows() != y.size()) throw DomainError("train_ridge: shape mismatch");
  if (lambda < 0.0) throw DomainError("train_ridge: lambda must be >= 0");

  Eigen::RowVectorXd xmean = X.colwise().mean();
  double ymean = y.mean();
  Matrix Xc = X.rowwise() - xmean;
  Vector yc = y.array() - ymean;

  Matrix A = Xc.transpose() * Xc;
  A.diagonal().array() += lambda;
  Vector w;
  if (lambda == 0.0) {
    Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible()) {
      throw DomainError("train_ridge: singular system with lambda=0");
    }
    w = lu.solve(Xc.transpose() * yc);
  } else {
    w = A.ldlt().solve(Xc.transpose() * yc);
  }

  Model m;
  m.kind = Model::Kind::kRidge;
  m.weights = w;
  m.intercept = ymean - xmean.dot(w);
  return m;
}

Model train_logistic(const Matrix& X, const Vector& y, int steps, double lr,
                     double l2) {
  if (X.rows() < 1) throw DomainError("train_logistic: empty sample");
  if (X.rows() != y.size()) throw DomainError("train_logistic: shape mismatch");
  if (steps < 0) throw DomainError("train_logistic: steps must be >= 0");

  const double inv_m = 1.0 / static_cast<double>(X.rows());
  Vector w = Vector::Zero(X.cols());
  double b = 0.0;
  for (int it = 0; it < steps; ++it) {
    Vector z = (X * w).array() + b;
    Vector p(z.size());
    for (int i = 0; i < z.size(); ++i) p[i] = sigmoid(z[i]);
    Vector r = p - y;
    Vector grad_w = X.transpose() * r * inv_m + l2 * w;
    double grad_b = r.sum() * inv_m;
    w -= lr * grad_w;
    b -= lr * grad_b;
  }

  Model m;
  m.kind = Model::Kind::kLogistic;
  m.weights = w;
  m.intercept = b;
  return m;
}

Model train_base(const LearnerBase& base, const Matrix& X, const Vector& y) {
  if (base.kind == LearnerBase::Kind::kRidge) {
    return train_ridge(X, y, base.ridge.lambda);
  }
  return train_logistic(X, y, base.logistic.steps, base.logistic.lr,
                        base.logistic.l2);
}

void BehaviorTable::validate(int n) const {
  if (k_star < 1 || k_star > n) {
    throw ConfigError("behavior table: k_star must lie in [1, n]");
  }
  if (static_cast<int>(options.size()) > k_star) {
    throw ConfigError("behavior table: options listed past k_star");
  }
  for (std::size_t k = 0; k < options.size(); ++k) {
    if (options[k].empty()) {
      throw ConfigError("behavior table: no options for cardinality " +
                        std::to_string(k));
    }
    for (const BehaviorOption& opt : options[k]) {
      if (k == 0 && !opt.untrained) {
        throw ConfigError(
            "behavior table: cardinality 0 admits only the untrained option");
      }
      if (!opt.untrained) opt.base.validate();
    }
  }
}

const std::vector<BehaviorOption>& BehaviorTable::at(int k) const {
  static const std::vector<BehaviorOption> kUntrainedOnly{BehaviorOption{}};
  if (k == 0 && options.empty()) return kUntrainedOnly;
  if (k < 0 || k >= static_cast<int>(options.size())) {
    if (k == 0) return kUntrainedOnly;
    throw DomainError("behavior table: no options for cardinality " +
                      std::to_string(k));
  }
  return options[static_cast<std::size_t>(k)];
}

double BehaviorTable::combinations() const {
  double prod = 1.0;
  for (const auto& opts : options) {
    prod *= static_cast<double>(opts.size());
  }
  return prod;
}

Learner::Resolved Learner::resolve(int cardinality) const {
  Resolved r;
  if (cardinality <= 0) return r;  // empty coalition: never trained
  if (cardinality < static_cast<int>(small.size())) {
    const BehaviorOption& opt = small[static_cast<std::size_t>(cardinality)];
    if (opt.untrained) return r;
    r.untrained = false;
    r.base = &opt.base;
    return r;
  }
  if (cardinality < k_min) return r;
  r.untrained = false;
  r.base = &base;
  return r;
}

Model train_coalition(const Learner& learner, const Coalition& S,
                      const Dataset& data) {
  Learner::Resolved r = learner.resolve(S.size());
  if (r.untrained) return untrained_model();
  return train_base(*r.base, data.rows(S), data.label_rows(S));
}

}  // namespace semival
