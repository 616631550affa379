#include "semival/report.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "semival/errors.hpp"
#include "semival/version.hpp"

namespace semival {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string psi_csv(const Vector& psi) {
  std::string out = "index,psi\n";
  for (int i = 0; i < psi.size(); ++i) {
    out += std::to_string(i);
    out += ",";
    out += format_double(psi[i]);
    out += "\n";
  }
  return out;
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw DataError("expected a JSON array of numbers");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DataError("expected a JSON number");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw DataError("strata: malformed matrix");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw DataError("strata: malformed matrix row");
    }
    for (int k = 0; k < n; ++k) {
      m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
  }
  return m;
}

}  // namespace

Json strata_to_json(const StrataStats& stats) {
  Json j;
  j["n"] = stats.n;
  j["seed"] = stats.seed;
  j["utility_id"] = stats.utility_id;
  j["exact"] = stats.exact;
  j["u_empty"] = stats.u_empty;
  j["xminus"] = matrix_to_json(stats.xminus);
  j["xplus"] = matrix_to_json(stats.xplus);
  Json budgets = Json::array();
  for (int i = 0; i < stats.n; ++i) {
    Json row = Json::array();
    for (int k = 0; k < stats.n; ++k) row.push_back(stats.budgets(i, k));
    budgets.push_back(std::move(row));
  }
  j["budgets"] = std::move(budgets);
  return j;
}

StrataStats strata_from_json(const Json& j) {
  StrataStats stats;
  stats.n = j.at("n").get<int>();
  stats.seed = j.at("seed").get<std::uint64_t>();
  stats.utility_id = j.at("utility_id").get<std::string>();
  stats.exact = j.at("exact").get<bool>();
  stats.u_empty = j.at("u_empty").get<double>();
  stats.xminus = matrix_from_json(j.at("xminus"), stats.n);
  stats.xplus = matrix_from_json(j.at("xplus"), stats.n);
  const Json& budgets = j.at("budgets");
  if (!budgets.is_array() || static_cast<int>(budgets.size()) != stats.n) {
    throw DataError("strata: malformed budgets");
  }
  stats.budgets.resize(stats.n, stats.n);
  for (int i = 0; i < stats.n; ++i) {
    const Json& row = budgets[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != stats.n) {
      throw DataError("strata: malformed budgets row");
    }
    for (int k = 0; k < stats.n; ++k) {
      stats.budgets(i, k) = row[static_cast<std::size_t>(k)].get<long long>();
    }
  }
  return stats;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file '" + path + "'");
  out << content;
  if (!out) throw DataError("failed writing file '" + path + "'");
}

Json report_header(const std::string& command, const RunConfig& cfg,
                   int n_train, int n_test) {
  Json j;
  j["schema"] = kReportSchema;
  j["version"] = kVersion;
  j["command"] = command;
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  j["generated_at"] = stamp;
  j["task"] = to_string(cfg.task);
  j["n_train"] = n_train;
  j["n_test"] = n_test;
  j["weights"] = {{"name", cfg.weights_name}};
  if (cfg.exact) {
    j["mode"] = {{"kind", "exact"}};
  } else {
    j["mode"] = {{"kind", "sampled"}, {"budget", cfg.budget}, {"seed", cfg.seed}};
  }
  j["config_echo"] = cfg.raw;
  return j;
}

void write_report(const std::string& out_dir, const Json& report) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/report.json", report.dump(2) + "\n");
}

}  // namespace semival
