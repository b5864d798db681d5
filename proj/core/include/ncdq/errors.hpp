#pragma once

#include <stdexcept>
#include <string>

namespace ncdq {

// Validation failures (dimension mismatches, incompatible geometry, malformed
// configs) all derive from std::invalid_argument so callers can map the whole
// family to one exit path.
struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct IncompatibilityError : std::invalid_argument {
  explicit IncompatibilityError(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncdq
