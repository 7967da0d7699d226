#include "radspec/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "radspec/errors.hpp"
#include "radspec/integrator.hpp"

namespace radspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesBudget = 1e-12;

struct SeriesSum {
  double sum;
  double loss;  // estimated relative rounding error of the sum
};

// Σ_m (∓x)^m / (m! (ν+1)_m), x = r²/4.
SeriesSum bessel_series(double nu, double x, bool alternating) {
  double term = 1.0;
  double sum = 1.0;
  double biggest = 1.0;
  int m = 0;
  for (;;) {
    ++m;
    term *= (alternating ? -x : x) / (m * (nu + m));
    sum += term;
    biggest = std::max(biggest, std::fabs(term));
    if (std::fabs(term) <= 0.5 * kEps * std::fabs(sum) && m > x) break;
    if (m > 100000) break;
  }
  const double abs_sum = std::fabs(sum);
  const double loss = abs_sum > 0 ? (m + 1) * kEps * biggest / abs_sum : std::numeric_limits<double>::infinity();
  return {sum, loss};
}

LogReal series_value(double nu, double r, double lg) {
  const SeriesSum s = bessel_series(nu, 0.25 * r * r, true);
  if (s.loss > kSeriesBudget) throw AccuracyLossError("bessel_j_log: series cancellation exceeds budget");
  return LogReal(s.sum) * LogReal::exp(nu * std::log(0.5 * r) - lg);
}

LogReal dispatch(double nu, double r, double lg) {
  if (r < 0 || nu < 0 || std::isnan(r) || std::isnan(nu)) throw DomainError("bessel_j: requires nu >= 0, r >= 0");
  if (r == 0) return nu == 0 ? LogReal::one() : LogReal::zero();
  // The alternating series loses roughly exp(r²/(2(ν+1))) relative to its sum.
  if (r * r <= 40.0 * (nu + 1.0)) {
    try {
      return series_value(nu, r, lg);
    } catch (const AccuracyLossError&) {
    }
  }
  return LogReal(boost::math::cyl_bessel_j(nu, r));
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive");
  return boost::math::lgamma(x);
}

LogReal bessel_j_log(double nu, double r, double r_max) {
  if (!(nu >= 0)) throw DomainError("bessel_j_log: order must be nonnegative");
  if (!(r >= 0) || r > r_max) throw DomainError("bessel_j_log: argument outside [0, r_max]");
  if (r == 0) return nu == 0 ? LogReal::one() : LogReal::zero();
  return series_value(nu, r, log_gamma(nu + 1.0));
}

LogReal bessel_j(double nu, double r) {
  if (!(nu >= 0)) throw DomainError("bessel_j: order must be nonnegative");
  return dispatch(nu, r, log_gamma(nu + 1.0));
}

BesselJ::BesselJ(double nu) : nu_(nu), log_gamma_nu1_(0.0) {
  if (!(nu >= 0)) throw DomainError("BesselJ: order must be nonnegative");
  log_gamma_nu1_ = log_gamma(nu + 1.0);
}

LogReal BesselJ::operator()(double r) const { return dispatch(nu_, r, log_gamma_nu1_); }

LogReal bessel_i_log(double nu, double x) {
  if (!(nu >= 0) || !(x >= 0)) throw DomainError("bessel_i: requires nu >= 0, x >= 0");
  if (x == 0) return nu == 0 ? LogReal::one() : LogReal::zero();
  const SeriesSum s = bessel_series(nu, 0.25 * x * x, false);
  return LogReal(s.sum) * LogReal::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0));
}

double bessel_i(double nu, double x) { return bessel_i_log(nu, x).to_double(); }

LogReal bessel_l2_ball_log(double nu, double R) {
  if (!(nu >= 0)) throw DomainError("bessel_l2_ball: order must be nonnegative");
  if (!(R >= 0)) throw DomainError("bessel_l2_ball: radius must be nonnegative");
  if (R == 0) return LogReal::zero();
  if (nu >= 1.0 && R * R <= 40.0 * nu) {
    // Common factor (R/2)^{2ν}/Γ(ν+1)² pulled out of all three products, so the
    // bracket only sees the normalized series sums: S_ν² − ν/(ν+1) S_{ν−1} S_{ν+1}.
    const double x = 0.25 * R * R;
    const SeriesSum a = bessel_series(nu, x, true);
    const SeriesSum b = bessel_series(nu - 1.0, x, true);
    const SeriesSum c = bessel_series(nu + 1.0, x, true);
    if (std::max({a.loss, b.loss, c.loss}) <= kSeriesBudget) {
      const double bracket = a.sum * a.sum - nu / (nu + 1.0) * b.sum * c.sum;
      return LogReal(0.5 * R * R * bracket) * LogReal::exp(2.0 * (nu * std::log(0.5 * R) - log_gamma(nu + 1.0)));
    }
  }
  if (nu >= 1.0) {
    const LogReal a = bessel_j(nu, R);
    const LogReal b = bessel_j(nu - 1.0, R);
    const LogReal c = bessel_j(nu + 1.0, R);
    return LogReal(0.5 * R * R) * (a * a - b * c);
  }
  const BesselJ j(nu);
  IntegrationOptions opt;
  opt.rel_tol = 1e-14;
  const auto f = [&](double r) {
    const LogReal v = j(r);
    return v * v * LogReal(r);
  };
  return integrate_log(f, 0.0, R, opt).value;
}

double bessel_l2_ball(double nu, double R) { return bessel_l2_ball_log(nu, R).to_double(); }

LogReal bessel_l2_gaussian_log(double nu) { return LogReal(0.5 * std::exp(-0.5)) * bessel_i_log(nu, 0.5); }

double power_from_bessel(unsigned m, double r, unsigned terms) {
  if (terms == 0) throw DomainError("power_from_bessel: terms must be positive");
  if (!(r >= 0)) throw DomainError("power_from_bessel: r must be nonnegative");
  double total = 0.0;
  if (m == 0) {
    for (unsigned j = 0; j < terms; ++j) {
      const double v = bessel_j(j, r).to_double();
      total += (j == 0 ? 1.0 : 2.0) * v * v;
    }
    return total;
  }
  const double mm = m;
  const double log_pre = (2 * mm + 1) * std::log(2.0) + 2 * log_gamma(mm + 1) - log_gamma(2 * mm + 1);
  for (unsigned i = 0; i < terms; ++i) {
    const double j = mm + i;
    const LogReal jv = bessel_j(j, r);
    if (jv.is_zero()) continue;
    const double log_c = std::log(j) + log_gamma(mm + j) - log_gamma(j - mm + 1);
    total += std::exp(log_pre + log_c + 2 * jv.log_abs());
  }
  return total;
}

}  // namespace radspec
