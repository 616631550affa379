#include "support.hpp"

#include <array>
#include <bit>
#include <sys/wait.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oracle {

std::uint64_t pascal(int n, int k) {
  if (n < 0 || n > 62) throw std::out_of_range("pascal: n out of range");
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  }
  return row[static_cast<std::size_t>(k)];
}

std::vector<double> weights(const std::string& name, int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    if (name == "shapley") {
      w[k] = 1.0 / (static_cast<double>(n) *
                    static_cast<double>(pascal(n - 1, k)));
    } else if (name == "banzhaf") {
      w[k] = std::pow(2.0, 1 - n);
    } else if (name == "loo") {
      w[k] = k == n - 1 ? 1.0 : 0.0;
    } else {
      throw std::invalid_argument("oracle::weights: unknown scheme " + name);
    }
  }
  return w;
}

double semivalue(const std::function<double(std::uint64_t)>& u, int n, int j,
                 const std::vector<double>& w) {
  double acc = 0.0;
  std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  std::uint64_t jbit = 1ull << j;
  for (std::uint64_t mask = 0;; ++mask) {
    if ((mask & jbit) == 0) {
      int k = std::popcount(mask);
      acc += w[static_cast<std::size_t>(k)] * (u(mask | jbit) - u(mask));
    }
    if (mask == full) break;
  }
  return acc;
}

double shapley_factorial(const std::function<double(std::uint64_t)>& u, int n,
                         int j) {
  std::array<long double, 64> fact{};
  fact[0] = 1.0L;
  for (int i = 1; i < 64; ++i) fact[i] = fact[i - 1] * i;
  long double acc = 0.0L;
  std::uint64_t full = (1ull << n) - 1;
  std::uint64_t jbit = 1ull << j;
  for (std::uint64_t mask = 0;; ++mask) {
    if ((mask & jbit) == 0) {
      int k = std::popcount(mask);
      long double weight = fact[k] * fact[n - k - 1] / fact[n];
      acc += weight * static_cast<long double>(u(mask | jbit) - u(mask));
    }
    if (mask == full) break;
  }
  return static_cast<double>(acc);
}

}  // namespace oracle

namespace testsup {

semival::TableUtility random_table(int n, std::uint64_t seed,
                                   const std::string& id) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(std::size_t{1} << n);
  for (double& v : values) v = dist(gen);
  return semival::TableUtility(id, n, std::move(values));
}

std::function<double(std::uint64_t)> as_fn(const semival::TableUtility& u) {
  int n = u.ground_size();
  return [&u, n](std::uint64_t mask) {
    return u.value(semival::Coalition::from_mask(n, mask));
  };
}

void linear_regression_data(int rows, int dim, double noise,
                            std::uint64_t seed, semival::Matrix* X,
                            semival::Vector* y) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  X->resize(rows, dim);
  y->resize(rows);
  std::vector<double> beta(static_cast<std::size_t>(dim));
  for (double& b : beta) b = normal(gen);
  for (int r = 0; r < rows; ++r) {
    double v = 0.5;
    for (int c = 0; c < dim; ++c) {
      double x = normal(gen);
      (*X)(r, c) = x;
      v += beta[static_cast<std::size_t>(c)] * x;
    }
    (*y)[r] = v + noise * normal(gen);
  }
}

void blob_classification_data(int rows, int dim, double margin,
                              std::uint64_t seed, semival::Matrix* X,
                              semival::Vector* y) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  X->resize(rows, dim);
  y->resize(rows);
  for (int r = 0; r < rows; ++r) {
    int label = r % 2;
    (*y)[r] = label;
    double shift = label ? margin : -margin;
    (*X)(r, 0) = shift + normal(gen);
    for (int c = 1; c < dim; ++c) (*X)(r, c) = normal(gen);
  }
}

CliResult run_cli(const std::string& args) {
#ifdef SEMIVAL_CLI_PATH
  std::string cmd = std::string(SEMIVAL_CLI_PATH) + " " + args + " 2>&1";
#else
  std::string cmd = "semival " + args + " 2>&1";
#endif
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    res.output.append(buf, got);
  }
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_dir(const std::string& hint) {
  std::string tmpl = "/tmp/semival-" + hint + "-XXXXXX";
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data())) {
    throw std::runtime_error("mkdtemp failed: " + std::string(strerror(errno)));
  }
  return std::string(buf.data());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace testsup
