#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "radspec/errors.hpp"
#include "radspec/logreal.hpp"

using radspec::LogReal;

TEST_CASE("zero and sign invariants") {
  LogReal z;
  CHECK(z.is_zero());
  CHECK(z.sign() == 0);
  CHECK(z.log_abs() == -std::numeric_limits<double>::infinity());
  CHECK(LogReal(0.0).is_zero());
  CHECK(LogReal::from_log(1, -std::numeric_limits<double>::infinity()).is_zero());
  CHECK(LogReal::from_log(-1, std::nan("")).is_zero());
  CHECK(LogReal(-2.5).sign() == -1);
  CHECK(LogReal(-2.5).to_double() == doctest::Approx(-2.5).epsilon(1e-15));
}

TEST_CASE("arithmetic matches linear arithmetic on moderate values") {
  CHECK((LogReal(2.0) * LogReal(-4.0)).to_double() == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK((LogReal(1.0) / LogReal(8.0)).to_double() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK((LogReal(3.0) + LogReal(-3.0)).is_zero());
  CHECK((LogReal(3.0) - LogReal(5.0)).to_double() == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK((LogReal(-3.0) + LogReal(5.0)).to_double() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((LogReal(1e-300) * LogReal(1e-300)).log_abs() == doctest::Approx(-600 * std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("magnitudes far outside double range survive") {
  const LogReal tiny = LogReal::exp(-1e5);
  CHECK_FALSE(tiny.is_zero());
  CHECK(tiny.to_double() == 0.0);
  CHECK((tiny * LogReal::exp(1e5)).to_double() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((tiny + tiny).log_abs() == doctest::Approx(-1e5 + std::log(2.0)).epsilon(1e-15));
  CHECK(tiny < LogReal::exp(-9e4));
  CHECK(-tiny < tiny);
}

TEST_CASE("pow and its domain") {
  CHECK(LogReal(-2.0).pow(3).to_double() == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK(LogReal(4.0).pow(0.5).to_double() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(LogReal(-2.0).pow(0.5), radspec::DomainError);
  CHECK_THROWS_AS(LogReal().pow(-1.0), radspec::DomainError);
  CHECK_THROWS_AS(LogReal(1.0) / LogReal(), radspec::DomainError);
}

TEST_CASE("ordering is the order of the represented reals") {
  CHECK(LogReal(-3.0) < LogReal(-2.0));
  CHECK(LogReal(-2.0) < LogReal());
  CHECK(LogReal() < LogReal(1e-300));
  CHECK(LogReal(2.0) == LogReal(2.0));
  CHECK(radspec::abs_less(LogReal(-1.0), LogReal(2.0)));
  CHECK(radspec::relative_difference(LogReal(1.0), LogReal(1.0 + 1e-10)) == doctest::Approx(1e-10).epsilon(1e-5));
}

TEST_CASE("sums are associative to rounding") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(-50.0, 50.0);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int i = 0; i < 1000; ++i) {
    auto draw = [&] { return LogReal::from_log(sgn(rng) ? 1 : -1, mag(rng)); };
    const LogReal a = draw(), b = draw(), c = draw();
    const LogReal l = (a + b) + c;
    const LogReal r = a + (b + c);
    const double scale = std::max({a.log_abs(), b.log_abs(), c.log_abs()});
    const double diff = std::fabs((l - r).to_double() / std::exp(scale));
    CHECK(diff <= 1e-13);
  }
}

TEST_CASE("stream output") {
  std::ostringstream os;
  os << LogReal(-1.0);
  CHECK_FALSE(os.str().empty());
}
