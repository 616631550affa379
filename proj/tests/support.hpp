#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "semival/dataset.hpp"
#include "semival/utility.hpp"

// Test-side oracles. These recompute expected values from first principles
// (Pascal's triangle, factorials, raw bitmask loops) so they share no
// arithmetic with the library paths they check.
namespace oracle {

// Exact binomial coefficients via Pascal's triangle, n <= 62.
std::uint64_t pascal(int n, int k);

// Per-cardinality weights rebuilt from their defining formulas.
std::vector<double> weights(const std::string& name, int n);

// Textbook semivalue: loop every subset mask avoiding j, weight by |S|.
double semivalue(const std::function<double(std::uint64_t)>& u, int n, int j,
                 const std::vector<double>& w);

// Shapley via factorial weights k!(n-k-1)!/n!, a second independent route.
double shapley_factorial(const std::function<double(std::uint64_t)>& u, int n,
                         int j);

}  // namespace oracle

namespace testsup {

// Random bounded table game on n players, values uniform in [-1, 1].
semival::TableUtility random_table(int n, std::uint64_t seed,
                                   const std::string& id = "table");

std::function<double(std::uint64_t)> as_fn(const semival::TableUtility& u);

// y = X b + noise, features standard normal. Uses std::mt19937_64 so the
// generator is unrelated to the library's sampler streams.
void linear_regression_data(int rows, int dim, double noise,
                            std::uint64_t seed, semival::Matrix* X,
                            semival::Vector* y);

// Two gaussian blobs separated along the first axis, labels 0/1.
void blob_classification_data(int rows, int dim, double margin,
                              std::uint64_t seed, semival::Matrix* X,
                              semival::Vector* y);

struct CliResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed CLI binary with the given argument string.
CliResult run_cli(const std::string& args);

// Fresh scratch directory under the system temp root.
std::string temp_dir(const std::string& hint);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace testsup
