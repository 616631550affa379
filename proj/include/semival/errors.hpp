#pragma once

#include <stdexcept>
#include <string>

namespace semival {

// Config mistakes: unknown keys, bad values, inconsistent options (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Problems with input data: unreadable files, malformed rows, bad labels (exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric or domain violations at run time: undefined metrics, empty strata,
// out-of-range parameters (exit code 4).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semival
