#include "semival/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "semival/errors.hpp"

namespace semival {

Task task_from_string(const std::string& s) {
  if (s == "regression") return Task::kRegression;
  if (s == "classification") return Task::kClassification;
  throw ConfigError("unknown task '" + s + "'");
}

std::string to_string(Task t) {
  return t == Task::kRegression ? "regression" : "classification";
}

Matrix Dataset::rows(const Coalition& S) const {
  std::vector<int> idx = S.members();
  Matrix out(static_cast<int>(idx.size()), dim());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    out.row(static_cast<int>(r)) = features.row(idx[r]);
  }
  return out;
}

Vector Dataset::label_rows(const Coalition& S) const {
  std::vector<int> idx = S.members();
  Vector out(static_cast<int>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    out[static_cast<int>(r)] = labels[idx[r]];
  }
  return out;
}

void Dataset::validate() const {
  if (features.rows() != labels.size()) {
    throw DataError("dataset: feature rows and labels disagree");
  }
  if (features.rows() < 1) throw DataError("dataset: empty");
  if (!features.allFinite() || !labels.allFinite()) {
    throw DataError("dataset: non-finite values");
  }
}

void TestSet::validate() const {
  if (features.rows() != labels.size()) {
    throw DataError("test set: feature rows and labels disagree");
  }
  if (features.rows() < 1) throw DataError("test set: empty");
  if (!features.allFinite() || !labels.allFinite()) {
    throw DataError("test set: non-finite values");
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_field(const std::string& field, int row, const std::string& col) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw DataError("csv row " + std::to_string(row) + ", column '" + col +
                    "': cannot parse '" + field + "' as a number");
  }
  return value;
}

void check_labels(const Vector& labels, Task task,
                  const std::vector<int>& source_rows) {
  if (task != Task::kClassification) return;
  for (int i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      std::string where = source_rows.empty()
                              ? "index " + std::to_string(i)
                              : "row " + std::to_string(source_rows[i]);
      throw DataError("classification labels must be 0 or 1; " + where +
                      " has " + std::to_string(labels[i]));
    }
  }
}

}  // namespace

SplitData split_table(const Matrix& features, const Vector& labels,
                      double test_fraction, std::uint64_t seed, Task task) {
  const int total = static_cast<int>(features.rows());
  if (features.rows() != labels.size()) {
    throw DataError("split: feature rows and labels disagree");
  }
  if (total < 2) throw DataError("split: need at least two rows");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie strictly between 0 and 1");
  }

  long long want = std::llround(test_fraction * total);
  int test_count = static_cast<int>(std::clamp<long long>(want, 1, total - 1));

  std::vector<int> order(total);
  for (int i = 0; i < total; ++i) order[i] = i;
  Rng rng(derive_seed(seed, {0x73706c6974ULL}));  // split stream
  for (int i = total - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }

  SplitData out;
  out.test_indices.assign(order.begin(), order.begin() + test_count);
  out.train_indices.assign(order.begin() + test_count, order.end());
  std::sort(out.test_indices.begin(), out.test_indices.end());
  std::sort(out.train_indices.begin(), out.train_indices.end());

  auto take = [&](const std::vector<int>& idx, Matrix& X, Vector& y) {
    X.resize(static_cast<int>(idx.size()), features.cols());
    y.resize(static_cast<int>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r) {
      X.row(static_cast<int>(r)) = features.row(idx[r]);
      y[static_cast<int>(r)] = labels[idx[r]];
    }
  };
  take(out.train_indices, out.train.features, out.train.labels);
  take(out.test_indices, out.test.features, out.test.labels);
  out.train.task = task;
  out.test.task = task;

  if (task == Task::kRegression) {
    // Standardize labels with training statistics so utility scales are
    // comparable across datasets. Population variance (divide by n).
    double mean = out.train.labels.mean();
    double var = (out.train.labels.array() - mean).square().mean();
    if (!(var > 0.0)) {
      throw DataError("regression labels are constant on the training split; "
                      "cannot standardize");
    }
    double sd = std::sqrt(var);
    out.train.labels = (out.train.labels.array() - mean) / sd;
    out.test.labels = (out.test.labels.array() - mean) / sd;
  } else {
    check_labels(out.train.labels, task, {});
    check_labels(out.test.labels, task, {});
  }

  out.train.validate();
  out.test.validate();
  return out;
}

SplitData load_csv(const std::string& path, const std::string& label_column,
                   double test_fraction, std::uint64_t seed, Task task) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open csv file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("csv '" + path + "' is empty");
  std::vector<std::string> header = split_line(line);
  int label_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == label_column) {
      label_col = static_cast<int>(c);
      break;
    }
  }
  if (label_col < 0) {
    throw DataError("csv '" + path + "' has no column named '" + label_column +
                    "'");
  }
  const int width = static_cast<int>(header.size());
  if (width < 2) throw DataError("csv '" + path + "' needs a feature column");

  std::vector<std::vector<double>> rows;
  int row_number = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields = split_line(line);
    if (static_cast<int>(fields.size()) != width) {
      throw DataError("csv row " + std::to_string(row_number) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(width));
    }
    std::vector<double> parsed(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      parsed[c] = parse_field(fields[c], row_number, header[c]);
    }
    rows.push_back(std::move(parsed));
  }
  if (rows.size() < 2) {
    throw DataError("csv '" + path + "' needs at least two data rows");
  }

  Matrix features(static_cast<int>(rows.size()), width - 1);
  Vector labels(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int fc = 0;
    for (int c = 0; c < width; ++c) {
      if (c == label_col) {
        labels[static_cast<int>(r)] = rows[r][static_cast<std::size_t>(c)];
      } else {
        features(static_cast<int>(r), fc++) =
            rows[r][static_cast<std::size_t>(c)];
      }
    }
  }

  if (task == Task::kClassification) {
    for (int i = 0; i < labels.size(); ++i) {
      if (labels[i] != 0.0 && labels[i] != 1.0) {
        throw DataError("csv row " + std::to_string(i + 2) +
                        ": classification label must be 0 or 1");
      }
    }
  }
  return split_table(features, labels, test_fraction, seed, task);
}

Coalition draw_subset(int n, int k, int focal, Rng& rng) {
  int pool_size = focal >= 0 ? n - 1 : n;
  if (k < 0 || k > pool_size) {
    throw DomainError("draw_subset: cardinality " + std::to_string(k) +
                      " impossible with pool of " + std::to_string(pool_size));
  }
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(pool_size));
  for (int i = 0; i < n; ++i) {
    if (i != focal) pool.push_back(i);
  }
  Coalition S(n);
  // Partial Fisher-Yates: after j swaps the prefix holds a uniform j-subset.
  for (int j = 0; j < k; ++j) {
    int pick = j + static_cast<int>(
                       rng.below(static_cast<std::uint64_t>(pool_size - j)));
    std::swap(pool[static_cast<std::size_t>(j)],
              pool[static_cast<std::size_t>(pick)]);
    S.add(pool[static_cast<std::size_t>(j)]);
  }
  return S;
}

std::vector<Coalition> sample_stratum(const Stratum& stratum, int n, long long m,
                                      Rng& rng) {
  if (stratum.focal < 0 || stratum.focal >= n) {
    throw DomainError("sample_stratum: focal index out of range");
  }
  if (stratum.cardinality < 0 || stratum.cardinality >= n) {
    throw DomainError("sample_stratum: cardinality " +
                      std::to_string(stratum.cardinality) +
                      " has no coalitions avoiding the focal point");
  }
  if (m < 0) throw DomainError("sample_stratum: negative sample count");
  std::vector<Coalition> out;
  out.reserve(static_cast<std::size_t>(m));
  for (long long t = 0; t < m; ++t) {
    Coalition S = draw_subset(n, stratum.cardinality, stratum.focal, rng);
    if (stratum.side == Stratum::Side::kIncludesFocal) S.add(stratum.focal);
    out.push_back(std::move(S));
  }
  return out;
}

}  // namespace semival
