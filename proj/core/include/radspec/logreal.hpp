#pragma once

#include <cmath>
#include <compare>
#include <iosfwd>
#include <limits>

namespace radspec {

/// Signed real number stored as (sign, natural log of magnitude).
///
/// Eigenvalues of the operators handled here range over thousands of decades
/// (|log Λ_k| grows like k log k), far outside what a double can represent.
/// Invariant: sign() == 0 exactly when log_abs() == -inf.
class LogReal {
 public:
  /// Zero.
  constexpr LogReal() noexcept = default;

  /// Exact conversion from a finite double.
  explicit LogReal(double x) noexcept;

  static LogReal from_log(int sign, double log_abs) noexcept;
  static constexpr LogReal zero() noexcept { return {}; }
  static LogReal one() noexcept { return from_log(1, 0.0); }
  /// exp(x) without overflow.
  static LogReal exp(double x) noexcept { return from_log(1, x); }

  int sign() const noexcept { return sign_; }
  double log_abs() const noexcept { return log_abs_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  /// Linear value; saturates to +-inf or 0 outside the double range.
  double to_double() const noexcept;

  LogReal abs() const noexcept { return from_log(sign_ == 0 ? 0 : 1, log_abs_); }
  LogReal operator-() const noexcept { return from_log(-sign_, log_abs_); }

  /// |x|^p for p real; sign is kept only for integral p.
  LogReal pow(double p) const;

  LogReal& operator*=(const LogReal& rhs) noexcept;
  LogReal& operator/=(const LogReal& rhs);
  LogReal& operator+=(const LogReal& rhs) noexcept;
  LogReal& operator-=(const LogReal& rhs) noexcept { return *this += -rhs; }

  friend LogReal operator*(LogReal a, const LogReal& b) noexcept { return a *= b; }
  friend LogReal operator/(LogReal a, const LogReal& b) { return a /= b; }
  friend LogReal operator+(LogReal a, const LogReal& b) noexcept { return a += b; }
  friend LogReal operator-(LogReal a, const LogReal& b) noexcept { return a -= b; }

  /// Ordering of the represented real numbers.
  friend std::partial_ordering operator<=>(const LogReal& a, const LogReal& b) noexcept;
  friend bool operator==(const LogReal& a, const LogReal& b) noexcept {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_abs_ == b.log_abs_);
  }

 private:
  int sign_ = 0;
  double log_abs_ = -std::numeric_limits<double>::infinity();
};

/// |a| < |b| comparison on magnitudes.
inline bool abs_less(const LogReal& a, const LogReal& b) noexcept {
  if (b.is_zero()) return false;
  if (a.is_zero()) return true;
  return a.log_abs() < b.log_abs();
}

/// Relative distance |a-b|/|b| computed without leaving the log domain where possible.
double relative_difference(const LogReal& a, const LogReal& b) noexcept;

std::ostream& operator<<(std::ostream& os, const LogReal& x);

}  // namespace radspec
