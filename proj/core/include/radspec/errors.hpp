#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radspec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symbol text could not be parsed. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition does not hold (e.g. ESR larger than the ball radius).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Series evaluation would lose more digits to cancellation than the error budget allows.
class AccuracyLossError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature stopped before reaching the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_log_abs, double log_abs_error)
      : Error(what), best_log_abs_(best_log_abs), log_abs_error_(log_abs_error) {}
  double best_log_abs() const noexcept { return best_log_abs_; }
  double log_abs_error() const noexcept { return log_abs_error_; }

 private:
  double best_log_abs_;
  double log_abs_error_;
};

/// A spectrum table is too short to answer a counting query.
class InsufficientKmaxError : public Error {
 public:
  InsufficientKmaxError(const std::string& what, long required_k_max)
      : Error(what), required_k_max_(required_k_max) {}
  /// Smallest k_max known to be sufficient, or -1 when unknown.
  long required_k_max() const noexcept { return required_k_max_; }

 private:
  long required_k_max_;
};

}  // namespace radspec
