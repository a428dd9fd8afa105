#pragma once

#include <stdexcept>
#include <string>

namespace ahc {

/// Operands disagree on ambient dimension or jet order.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Value part of a linear system (or of a jet divisor) is singular.
class SingularSystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Metric is not positive definite at the base point.
class PositivityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input is not of pure bidegree, or J fails J^2 = -I beyond tolerance.
class BidegreeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration or unknown name (CLI usage error, exit code 2).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A system guaranteed consistent came out inconsistent: an operator bug.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace ahc
