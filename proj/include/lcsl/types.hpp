#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace lcsl {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Closed interval [lo, hi].
struct Interval {
  double lo{0.0};
  double hi{1.0};

  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Dimension or size mismatch between inputs.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument value outside its mathematical domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Cholesky factorization failed even at the maximum diagonal jitter.
struct ConditioningError : std::runtime_error {
  ConditioningError(const std::string& what, double jitter)
      : std::runtime_error(what), final_jitter(jitter) {}
  double final_jitter;
};

/// Every hyperparameter restart failed; carries per-restart diagnostics.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed CSV or model file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lcsl
