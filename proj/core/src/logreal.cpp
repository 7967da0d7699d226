#include "radspec/logreal.hpp"

#include <algorithm>
#include <ostream>

#include "radspec/errors.hpp"

namespace radspec {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogReal::LogReal(double x) noexcept {
  if (x > 0) {
    sign_ = 1;
    log_abs_ = std::log(x);
  } else if (x < 0) {
    sign_ = -1;
    log_abs_ = std::log(-x);
  }
}

LogReal LogReal::from_log(int sign, double log_abs) noexcept {
  LogReal r;
  if (sign == 0 || log_abs == kNegInf || std::isnan(log_abs)) return r;
  r.sign_ = sign > 0 ? 1 : -1;
  r.log_abs_ = log_abs;
  return r;
}

double LogReal::to_double() const noexcept {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs_);
}

LogReal LogReal::pow(double p) const {
  if (sign_ == 0) {
    if (p > 0) return zero();
    if (p == 0) return one();
    throw DomainError("LogReal::pow: zero to a non-positive power");
  }
  int s = 1;
  if (sign_ < 0) {
    if (std::floor(p) != p) throw DomainError("LogReal::pow: negative base with non-integral exponent");
    if (std::fmod(std::fabs(p), 2.0) == 1.0) s = -1;
  }
  return from_log(s, p * log_abs_);
}

LogReal& LogReal::operator*=(const LogReal& rhs) noexcept {
  if (sign_ == 0 || rhs.sign_ == 0) {
    *this = zero();
    return *this;
  }
  sign_ *= rhs.sign_;
  log_abs_ += rhs.log_abs_;
  return *this;
}

LogReal& LogReal::operator/=(const LogReal& rhs) {
  if (rhs.sign_ == 0) throw DomainError("LogReal: division by zero");
  if (sign_ == 0) return *this;
  sign_ *= rhs.sign_;
  log_abs_ -= rhs.log_abs_;
  return *this;
}

LogReal& LogReal::operator+=(const LogReal& rhs) noexcept {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) {
    *this = rhs;
    return *this;
  }
  const bool this_larger = log_abs_ >= rhs.log_abs_;
  const double hi = this_larger ? log_abs_ : rhs.log_abs_;
  const double lo = this_larger ? rhs.log_abs_ : log_abs_;
  const int hi_sign = this_larger ? sign_ : rhs.sign_;
  const double t = std::exp(lo - hi);
  if (sign_ == rhs.sign_) {
    log_abs_ = hi + std::log1p(t);
    sign_ = hi_sign;
    return *this;
  }
  if (lo == hi) {
    *this = zero();
    return *this;
  }
  log_abs_ = hi + std::log1p(-t);
  sign_ = hi_sign;
  return *this;
}

std::partial_ordering operator<=>(const LogReal& a, const LogReal& b) noexcept {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::partial_ordering::equivalent;
  if (a.sign_ > 0) return a.log_abs_ <=> b.log_abs_;
  return b.log_abs_ <=> a.log_abs_;
}

double relative_difference(const LogReal& a, const LogReal& b) noexcept {
  if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  const LogReal diff = a - b;
  if (diff.is_zero()) return 0.0;
  return std::exp(diff.log_abs() - b.log_abs());
}

std::ostream& operator<<(std::ostream& os, const LogReal& x) {
  if (x.is_zero()) return os << "0";
  return os << (x.sign() < 0 ? "-" : "") << "exp(" << x.log_abs() << ")";
}

}  // namespace radspec
