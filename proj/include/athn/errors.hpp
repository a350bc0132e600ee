#pragma once

#include <stdexcept>
#include <string>

namespace athn {

/// Invalid configuration (non-positive dimensions, k > distinct points, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed instance file; the message names the offending field.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that violates a domain invariant (e.g. beta >= 1).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A schedule handed to a checker violates a model constraint.
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

/// Route expansion produced an empty start-time domain.
struct InfeasibleExpansionError : std::runtime_error {
  explicit InfeasibleExpansionError(const std::string& what) : std::runtime_error(what) {}
};

/// The brute-force oracle refuses instances beyond its size guard.
struct OracleRefusedError : std::runtime_error {
  explicit OracleRefusedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace athn
