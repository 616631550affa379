#pragma once

#include <string>

#include "semival/config.hpp"
#include "semival/semivalues.hpp"

namespace semival {

// 17 significant digits: enough to reproduce any double exactly.
std::string format_double(double x);

// One CSV cell per value, exact round-trip formatting.
std::string psi_csv(const Vector& psi);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

// Lossless round-trip: numbers are serialized with shortest-exact
// representations, counts and seeds as integers.
Json strata_to_json(const StrataStats& stats);
StrataStats strata_from_json(const Json& j);

void write_text_file(const std::string& path, const std::string& content);

// Shared report skeleton: schema, version, command, timestamp, run shape.
// The timestamp is the only field allowed to differ between identical runs.
Json report_header(const std::string& command, const RunConfig& cfg,
                   int n_train, int n_test);

void write_report(const std::string& out_dir, const Json& report);

}  // namespace semival
