#pragma once

#include <stdexcept>
#include <string>

namespace attrition {

/// Bad flags, bad configuration values, or misuse of an API contract.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (files, cohorts, shape mismatches).
/// The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerically degenerate input (e.g. too few distinct points to cluster).
/// The CLI maps this to exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace attrition
