#include "semival/semivalues.hpp"

#include <cmath>

#include "semival/combinatorics.hpp"
#include "semival/errors.hpp"

namespace semival {

void WeightScheme::validate(double tol) const {
  if (n < 1) throw DomainError("weight scheme: n must be >= 1");
  if (w.size() != n || mass.size() != n) {
    throw DomainError("weight scheme: need one weight per cardinality 0..n-1");
  }
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    if (!(w[k] >= 0.0)) {
      throw DomainError("weight scheme '" + name +
                        "': negative weight at cardinality " +
                        std::to_string(k));
    }
    total += mass[k];
  }
  if (std::abs(total - 1.0) > tol) {
    throw DomainError("weight scheme '" + name +
                      "': per-subset masses must sum to 1");
  }
}

WeightScheme WeightScheme::shapley(int n) {
  if (n < 1) throw DomainError("shapley weights: n must be >= 1");
  WeightScheme s;
  s.name = "shapley";
  s.n = n;
  s.w.resize(n);
  s.mass.resize(n);
  for (int k = 0; k < n; ++k) {
    s.w[k] = 1.0 / (static_cast<double>(n) * binom(n - 1, k));
    s.mass[k] = 1.0 / static_cast<double>(n);
  }
  return s;
}

WeightScheme WeightScheme::banzhaf(int n) {
  if (n < 1) throw DomainError("banzhaf weights: n must be >= 1");
  WeightScheme s;
  s.name = "banzhaf";
  s.n = n;
  s.w = Vector::Constant(n, std::ldexp(1.0, 1 - n));
  s.mass.resize(n);
  for (int k = 0; k < n; ++k) s.mass[k] = binom(n - 1, k) * s.w[k];
  return s;
}

WeightScheme WeightScheme::loo(int n) {
  if (n < 1) throw DomainError("leave-one-out weights: n must be >= 1");
  WeightScheme s;
  s.name = "loo";
  s.n = n;
  s.w = Vector::Zero(n);
  s.mass = Vector::Zero(n);
  s.w[n - 1] = 1.0;
  s.mass[n - 1] = 1.0;
  return s;
}

WeightScheme WeightScheme::custom(std::string name, int n, Vector w) {
  WeightScheme s;
  s.name = std::move(name);
  s.n = n;
  s.w = std::move(w);
  if (s.w.size() != n) {
    throw ConfigError("custom weights: need exactly n entries");
  }
  s.mass.resize(n);
  for (int k = 0; k < n; ++k) s.mass[k] = s.w[k] * binom(n - 1, k);
  s.validate();
  return s;
}

WeightScheme make_weights(const std::string& name, int n) {
  if (name == "shapley") return WeightScheme::shapley(n);
  if (name == "banzhaf") return WeightScheme::banzhaf(n);
  if (name == "loo") return WeightScheme::loo(n);
  throw ConfigError("unknown weight scheme '" + name + "'");
}

BudgetSpec BudgetSpec::uniform(long long per_stratum) {
  BudgetSpec b;
  b.kind = Kind::kUniform;
  b.per_stratum = per_stratum;
  return b;
}

BudgetSpec BudgetSpec::per_stratum_table(BudgetMatrix table) {
  BudgetSpec b;
  b.kind = Kind::kPerStratum;
  b.table = std::move(table);
  return b;
}

long long BudgetSpec::at(int i, int k, const WeightScheme& scheme) const {
  if (kind == Kind::kUniform) {
    return scheme.w[k] != 0.0 ? per_stratum : 0;
  }
  return table(i, k);
}

void BudgetSpec::validate(const WeightScheme& scheme) const {
  if (kind == Kind::kUniform) {
    if (per_stratum < 1) {
      throw ConfigError("budget: per-stratum draw count must be >= 1");
    }
    return;
  }
  if (table.rows() != scheme.n || table.cols() != scheme.n) {
    throw ConfigError("budget: per-stratum table must be n x n");
  }
  for (int i = 0; i < scheme.n; ++i) {
    for (int k = 0; k < scheme.n; ++k) {
      if (table(i, k) < 0) throw ConfigError("budget: negative draw count");
      if (scheme.w[k] != 0.0 && table(i, k) == 0) {
        throw ConfigError("budget: stratum (" + std::to_string(i) + ", " +
                          std::to_string(k) +
                          ") carries weight but has no draws");
      }
    }
  }
}

Vector reweigh(const StrataStats& stats, const WeightScheme& scheme) {
  if (stats.n != scheme.n) {
    throw DomainError("reweigh: stats and weights disagree on n");
  }
  Vector psi = Vector::Zero(stats.n);
  for (int i = 0; i < stats.n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < stats.n; ++k) {
      if (scheme.mass[k] == 0.0) continue;
      if (stats.budgets(i, k) <= 0) {
        throw DomainError("reweigh: stratum (" + std::to_string(i) + ", " +
                          std::to_string(k) +
                          ") carries weight but was never sampled");
      }
      acc += scheme.mass[k] * (stats.xplus(i, k) - stats.xminus(i, k));
    }
    psi[i] = acc;
  }
  return psi;
}

Vector exact_semivalues(const Utility& u, const WeightScheme& scheme,
                        int cap, long long* evaluations) {
  const int n = scheme.n;
  if (u.ground_size() != n) {
    throw DomainError("exact_semivalues: utility and weights disagree on n");
  }
  if (n > cap) {
    throw DomainError("exact_semivalues: n = " + std::to_string(n) +
                      " exceeds the exact-mode cap " + std::to_string(cap));
  }
  if (n > 62) throw DomainError("exact_semivalues: n too large to enumerate");

  Vector psi = Vector::Zero(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  long long evals = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Coalition T = Coalition::from_mask(n, mask);
    double value = u.value(T);
    ++evals;
    int size = T.size();
    for (int j = 0; j < n; ++j) {
      if ((mask >> j) & 1) {
        psi[j] += scheme.w[size - 1] * value;
      } else {
        psi[j] -= scheme.w[size] * value;
      }
    }
  }
  if (evaluations) *evaluations += evals;
  return psi;
}

StrataStats exact_strata_stats(const Utility& u, int cap,
                               long long* evaluations) {
  const int n = u.ground_size();
  if (n < 1) throw DomainError("exact_strata_stats: empty ground set");
  if (n > cap) {
    throw DomainError("exact_strata_stats: n = " + std::to_string(n) +
                      " exceeds the exact-mode cap " + std::to_string(cap));
  }
  if (n > 62) throw DomainError("exact_strata_stats: n too large");

  StrataStats stats;
  stats.n = n;
  stats.exact = true;
  stats.utility_id = u.id();
  stats.xminus = Matrix::Zero(n, n);
  stats.xplus = Matrix::Zero(n, n);
  stats.budgets = BudgetMatrix::Zero(n, n);

  const std::uint64_t total = std::uint64_t{1} << n;
  long long evals = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Coalition T = Coalition::from_mask(n, mask);
    double value = u.value(T);
    ++evals;
    if (mask == 0) stats.u_empty = value;
    int size = T.size();
    for (int j = 0; j < n; ++j) {
      if ((mask >> j) & 1) {
        stats.xplus(j, size - 1) += value;
      } else {
        stats.xminus(j, size) += value;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double count = binom(n - 1, k);
      stats.xminus(i, k) /= count;
      stats.xplus(i, k) /= count;
      stats.budgets(i, k) = static_cast<long long>(count);
    }
  }
  if (evaluations) *evaluations += evals;
  return stats;
}

SampleResult stratified_sample(const Utility& u, const WeightScheme& scheme,
                               const BudgetSpec& budget, std::uint64_t seed) {
  const int n = scheme.n;
  if (n < 2) throw DomainError("stratified_sample needs n >= 2");
  if (u.ground_size() != n) {
    throw DomainError("stratified_sample: utility and weights disagree on n");
  }
  budget.validate(scheme);

  SampleResult result;
  StrataStats& stats = result.stats;
  stats.n = n;
  stats.seed = seed;
  stats.utility_id = u.id();
  stats.xminus = Matrix::Zero(n, n);
  stats.xplus = Matrix::Zero(n, n);
  stats.budgets = BudgetMatrix::Zero(n, n);

  long long evals = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      long long m = budget.at(i, k, scheme);
      stats.budgets(i, k) = m;
      if (m <= 0) continue;
      // One stream per stratum, derived from the root seed and the stratum
      // coordinates only, so a rerun (or a different utility) replays the
      // same coalitions.
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(k)}));
      double mean_minus = 0.0;
      double mean_plus = 0.0;
      for (long long t = 1; t <= m; ++t) {
        Coalition S = draw_subset(n, k, i, rng);
        double u_minus = u.value(S);
        double u_plus = u.value(S.with(i));
        evals += 2;
        // Running means: a constant stream stays bit-exact (single-member
        // strata in particular reproduce the enumerated value).
        mean_minus += (u_minus - mean_minus) / static_cast<double>(t);
        mean_plus += (u_plus - mean_plus) / static_cast<double>(t);
      }
      stats.xminus(i, k) = mean_minus;
      stats.xplus(i, k) = mean_plus;
    }
  }
  stats.u_empty = u.value(Coalition(n));
  ++evals;

  result.psi = reweigh(stats, scheme);
  result.evaluations = evals;
  return result;
}

}  // namespace semival
