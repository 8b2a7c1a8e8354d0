#pragma once

#include <stdexcept>
#include <string>

namespace sing {

// Thrown on malformed caller input: dimension mismatches, bad indices, t=0.
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when JSON input does not match the documented schemas.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on invalid system assembly requests (unknown kind, non-square).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the tracker cannot produce any usable path.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency violations (e.g. a count formula not divisible by 6).
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sing
