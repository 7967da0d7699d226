#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "radspec/errors.hpp"
#include "radspec/integrator.hpp"
#include "radspec/specialfn.hpp"

using namespace radspec;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// ln n for an arbitrary-size integer.
double log_big(const boost::multiprecision::cpp_int& n) {
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  const unsigned shift = bits > 60 ? bits - 60 : 0;
  const auto top = static_cast<double>(static_cast<unsigned long long>(n >> shift));
  return std::log(top) + shift * std::log(2.0);
}

double quad_l2(double nu, double R) {
  const BesselJ j(nu);
  IntegrationOptions opt;
  opt.rel_tol = 1e-14;
  return integrate_log(
             [&](double r) {
               const LogReal v = j(r);
               return v * v * LogReal(r);
             },
             0.0, R, opt)
      .value.to_double();
}

}  // namespace

TEST_CASE("log_gamma examples") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-15));
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= 170; ++i) f *= i;
  CHECK(rel(log_gamma(171.0), log_big(f)) <= 1e-13);
  CHECK(rel(log_gamma(0.01), 4.59947987804202172251394541101) <= 1e-13);
  CHECK(rel(log_gamma(12.5), 18.7343475119364457016341244572) <= 1e-13);
  CHECK(rel(log_gamma(1e6), 12815504.569147611659976971785) <= 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("log_gamma recurrence") {
  for (double x = 0.1; x <= 1e4; x *= 1.07)
    CHECK(std::fabs(log_gamma(x + 1) - log_gamma(x) - std::log(x)) <= 1e-12 * std::max(1.0, std::fabs(log_gamma(x + 1))));
}

TEST_CASE("bessel_j_log examples") {
  CHECK(bessel_j_log(0.5, 1.0).to_double() == doctest::Approx(std::sqrt(2 / M_PI) * std::sin(1.0)).epsilon(1e-14));
  const LogReal j0 = bessel_j_log(0.0, 1e-12);
  CHECK(j0.sign() == 1);
  CHECK(j0.to_double() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_j_log(0.0, 0.0).to_double() == 1.0);

  const LogReal j100 = bessel_j_log(100.0, 1.0);
  CHECK(rel(j100.to_double(), 8.431828789626708549235064e-189) <= 1e-11);
  const double leading = std::exp(100 * std::log(0.5) - log_gamma(101.0)) * (1 - 0.25 / 101);
  CHECK(rel(j100.to_double(), leading) <= 1e-5);

  CHECK(rel(bessel_j_log(30.0, 10.0).to_double(), 1.55109607825746700691214482422e-12) <= 1e-11);
  CHECK(rel(bessel_j_log(60.0, 20.0).to_double(), 2.28092638873355963949062998496e-23) <= 1e-11);
}

TEST_CASE("bessel_j_log refuses heavy cancellation") {
  CHECK_THROWS_AS(bessel_j_log(0.0, 50.0), AccuracyLossError);
  CHECK_THROWS_AS(bessel_j_log(1.0, 51.0), DomainError);
  // The dispatcher falls back to the standard evaluation instead.
  CHECK(bessel_j(0.0, 50.0).to_double() == doctest::Approx(boost::math::cyl_bessel_j(0.0, 50.0)).epsilon(1e-12));
}

TEST_CASE("bessel_j agrees with the reference implementation where both are accurate") {
  for (double nu : {0.0, 0.5, 1.0, 3.5, 10.0, 25.0})
    for (double r : {0.1, 1.0, 4.0, 9.0})
      CHECK(bessel_j(nu, r).to_double() ==
            doctest::Approx(boost::math::cyl_bessel_j(nu, r)).epsilon(1e-11).scale(1e-14));
}

TEST_CASE("bessel_i examples") {
  CHECK(bessel_i(0.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_i(0.5, 1.0) == doctest::Approx(std::sqrt(2 / M_PI) * std::sinh(1.0)).epsilon(1e-14));
  const double i20 = bessel_i(20.0, 0.5);
  CHECK(i20 > 0);
  CHECK(rel(i20, 3.749453848079019527764869e-31) <= 1e-12);
  CHECK(i20 < std::exp(20 * std::log(0.25) - log_gamma(21.0)) * std::exp(0.0625));
}

TEST_CASE("bessel_l2_ball examples") {
  CHECK(bessel_l2_ball(0.5, M_PI) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(bessel_l2_ball(2.0, 0.0) == 0.0);
  CHECK(bessel_l2_ball(3.0, 1e-8) < 1e-60);
  CHECK(rel(bessel_l2_ball(30.0, 10.0), 4.09165324659678248482380206074e-24) <= 1e-11);
  CHECK(rel(bessel_l2_ball(30.0, 10.0), quad_l2(30.0, 10.0)) <= 1e-9);
}

TEST_CASE("bessel_l2_ball identity matches quadrature on the grid") {
  double worst = 0.0;
  for (int nu = 1; nu <= 50; ++nu)
    for (int R = 1; R <= 20; ++R) worst = std::max(worst, rel(bessel_l2_ball(nu, R), quad_l2(nu, R)));
  CHECK(worst <= 1e-9);
}

TEST_CASE("bessel_l2_ball is positive and increasing in R") {
  for (double nu : {0.0, 0.25, 1.0, 7.5, 40.0}) {
    double prev = 0.0;
    for (double R = 0.25; R <= 20.0; R += 0.25) {
      const double v = bessel_l2_ball(nu, R);
      CHECK(v > 0);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("Gaussian Bessel norm: closed form uses the order of the Bessel function") {
  IntegrationOptions opt;
  opt.rel_tol = 1e-14;
  for (double nu : {0.0, 0.5, 1.0, 2.5, 10.0, 40.0}) {
    const BesselJ j(nu);
    const double q = integrate_log(
                         [&](double r) {
                           const LogReal v = j(r);
                           return v * v * LogReal(r) * LogReal::exp(-r * r);
                         },
                         0.0, 50.0, opt)
                         .value.to_double();
    CHECK(rel(bessel_l2_gaussian_log(nu).to_double(), q) <= 1e-12);
    // The index shifted by one half does not reproduce the integral.
    CHECK(rel(bessel_l2_gaussian_log(nu + 0.5).to_double(), q) > 1e-2);
  }
}

TEST_CASE("Neumann expansion reconstructs powers") {
  CHECK(power_from_bessel(3, 2.0, 40) == doctest::Approx(64.0).epsilon(1e-8));
  CHECK(rel(power_from_bessel(5, 0.1, 20), 1e-10) <= 1e-8);
  CHECK(power_from_bessel(0, 3.0, 40) == doctest::Approx(1.0).epsilon(1e-12));
  double worst = 0.0;
  for (unsigned m = 0; m <= 10; ++m)
    for (double r = 0.25; r <= 5.0; r += 0.25) worst = std::max(worst, rel(power_from_bessel(m, r, 60), std::pow(r, 2.0 * m)));
  CHECK(worst <= 1e-8);
  // Partial sums increase toward the limit.
  CHECK(power_from_bessel(2, 1.5, 2) < power_from_bessel(2, 1.5, 5));
  CHECK_THROWS_AS(power_from_bessel(2, 1.0, 0), DomainError);
}
