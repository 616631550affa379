#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "semival/coalition.hpp"
#include "semival/rng.hpp"

namespace semival {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Task { kRegression, kClassification };

Task task_from_string(const std::string& s);
std::string to_string(Task t);

// Training pool: the points whose coalitions are valued.
struct Dataset {
  Matrix features;  // n x d
  Vector labels;    // n
  Task task = Task::kRegression;

  int n() const { return static_cast<int>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }

  // Rows of `features` selected by the coalition, in ascending index order.
  Matrix rows(const Coalition& S) const;
  Vector label_rows(const Coalition& S) const;

  void validate() const;
};

// Held-out points used only for scoring trained models.
struct TestSet {
  Matrix features;
  Vector labels;
  Task task = Task::kRegression;

  int n() const { return static_cast<int>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }

  void validate() const;
};

// One sampling stratum: coalitions of a fixed cardinality that exclude (or,
// after adjoining, include) a focal point.
struct Stratum {
  int focal = 0;
  int cardinality = 0;  // size of the excluded-side coalition
  enum class Side { kExcludesFocal, kIncludesFocal };
  Side side = Side::kExcludesFocal;
};

struct SplitData {
  Dataset train;
  TestSet test;
  std::vector<int> train_indices;  // rows of the source table, original order
  std::vector<int> test_indices;
};

// Reads a CSV with a header row, splits rows into train/test with a seeded
// shuffle, and prepares labels (standardization for regression, {0,1} check
// for classification). Pure function of the file bytes and the arguments.
SplitData load_csv(const std::string& path, const std::string& label_column,
                   double test_fraction, std::uint64_t seed, Task task);

// Same preparation for an in-memory table (tests and synthetic pipelines).
SplitData split_table(const Matrix& features, const Vector& labels,
                      double test_fraction, std::uint64_t seed, Task task);

// m coalitions drawn uniformly at random, with replacement, from the stratum.
// For the includes-focal side each draw is a k-subset avoiding the focal
// point with the focal point adjoined.
std::vector<Coalition> sample_stratum(const Stratum& stratum, int n, long long m,
                                      Rng& rng);

// One uniform k-subset of {0..n-1} \ {focal}; focal < 0 means no exclusion.
Coalition draw_subset(int n, int k, int focal, Rng& rng);

}  // namespace semival
