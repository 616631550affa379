#pragma once

#include <string>

#include "semival/config.hpp"

namespace semival {

// Each command loads the data, computes, writes report.json plus a CSV table
// into out_dir, and returns the report for callers that want to inspect it.

// Semivalues of the configured base utility.
Json cmd_value(const RunConfig& cfg, const std::string& out_dir);

// Favorability of every candidate utility, and the worst-case range, for one
// or many target groups.
Json cmd_range(const RunConfig& cfg, const std::string& out_dir);

// Most and least favorable candidate utility for one target group, using the
// family-specific search when one applies. with_oracle adds a brute-force
// cross-check to the report.
Json cmd_game(const RunConfig& cfg, const std::string& out_dir,
              bool with_oracle);

// Points whose survival under rank filtering differs between candidates.
Json cmd_filter_flips(const RunConfig& cfg, const std::string& out_dir);

}  // namespace semival
