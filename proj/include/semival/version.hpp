#pragma once

namespace semival {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "semival-report/1";
inline constexpr const char* kConfigSchema = "semival-config/1";

}  // namespace semival
