#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

/// A query outside the validity domain of a field, profile or metric
/// (non-positive conformal factor, point past a half-line boundary, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Metric matrix not invertible to working precision (condition number
/// above the rejection threshold, or exactly singular).
class SingularMetricError : public std::runtime_error {
public:
    explicit SingularMetricError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value produced by a user-supplied field, an integrator
/// failure, or a quadrature that did not converge.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed run configuration (missing key, bad type, inconsistent
/// section). Maps to process exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation requested in a mode the library does not support
/// (e.g. a concrete-fiber check with a non-flat fiber).
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace soliton
