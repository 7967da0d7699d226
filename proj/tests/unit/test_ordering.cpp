#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "radspec/errors.hpp"
#include "radspec/ordering.hpp"

using namespace radspec;

namespace {

SpectrumTable table_of(std::vector<std::pair<double, std::uint64_t>> values, double tail = 0.0) {
  SpectrumTable t;
  t.space = SpaceSpec::bergman(SpaceKind::BergmanComplex, 1, 1.0);
  t.tol = 1e-12;
  for (unsigned k = 0; k < values.size(); ++k)
    t.entries.push_back({k, LogReal(values[k].first), values[k].second, t.tol});
  t.k_max = static_cast<unsigned>(values.size()) - 1;
  t.tail_bound = LogReal(tail);
  return t;
}

BijectionPrefix random_permutation(std::size_t n, std::mt19937_64& rng) {
  BijectionPrefix b = BijectionPrefix::identity(n);
  std::shuffle(b.map.begin(), b.map.end(), rng);
  return b;
}

}  // namespace

TEST_CASE("order_spectrum examples") {
  const OrderedSpectrum o = order_spectrum(table_of({{0.3, 1}, {-0.4, 2}}));
  REQUIRE(o.s_runs.size() == 2);
  CHECK(o.s_runs[0].value.to_double() == doctest::Approx(0.4));
  CHECK(o.s_runs[0].length == 2);
  CHECK(o.s_runs[1].value.to_double() == doctest::Approx(0.3));
  CHECK(o.s_runs[1].length == 1);
  CHECK(o.pos_runs.size() == 1);
  CHECK(o.neg_runs.size() == 1);

  CHECK(order_spectrum(table_of({{0.0, 1}, {0.0, 3}})).s_runs.empty());

  SpectrumTable t;
  t.space = SpaceSpec::bergman(SpaceKind::BergmanComplex, 2, 1.0);
  for (unsigned k = 0; k <= 3; ++k) t.entries.push_back({k, LogReal(std::pow(0.5, 2 * k + 4)), k + 1ull, 1e-12});
  const OrderedSpectrum s = order_spectrum(t);
  REQUIRE(s.s_runs.size() == 4);
  for (unsigned k = 0; k <= 3; ++k) {
    CHECK(s.s_runs[k].value.to_double() == doctest::Approx(std::pow(0.5, 2 * k + 4)));
    CHECK(s.s_runs[k].length == k + 1);
  }
}

TEST_CASE("ties merge into one run") {
  const OrderedSpectrum o = order_spectrum(table_of({{0.5, 1}, {-0.5, 2}, {0.5 * (1 + 1e-13), 4}}), 1e-12);
  REQUIRE(o.s_runs.size() == 1);
  CHECK(o.s_runs[0].length == 7);
  CHECK(o.pos_runs[0].length == 5);
}

TEST_CASE("counting examples") {
  const SpectrumTable t = table_of({{0.5, 1}, {0.25, 2}, {-0.1, 3}});
  Counts c = counting(t, 0.2);
  CHECK(c.n == 3);
  CHECK(c.n_plus == 3);
  CHECK(c.n_minus == 0);
  c = counting(t, 0.05);
  CHECK(c.n == 6);
  CHECK(c.n_plus == 3);
  CHECK(c.n_minus == 3);
  c = counting(t, 0.25);
  CHECK(c.n == 1);
  CHECK(c.n_plus == 1);
  CHECK(c.n_minus == 0);
}

TEST_CASE("counting refuses uncertified levels") {
  SpectrumTable t = table_of({{0.5, 1}, {0.25, 1}, {0.125, 1}, {0.0625, 1}}, 0.0625);
  CHECK_NOTHROW(counting(t, 0.07));
  try {
    counting(t, 0.01);
    FAIL("expected InsufficientKmaxError");
  } catch (const InsufficientKmaxError& e) {
    CHECK(e.required_k_max() >= 6);
  }
  t.tail_bound.reset();
  CHECK_THROWS_AS(counting(t, 0.3), InsufficientKmaxError);
  CHECK_THROWS_AS(counting(table_of({{0.5, 1}}), 0.0), DomainError);
}

TEST_CASE("counting is monotone and constant between distinct magnitudes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<double, std::uint64_t>> vals;
  for (int i = 0; i < 200; ++i) vals.push_back({u(rng), 1 + static_cast<std::uint64_t>(i % 7)});
  const SpectrumTable t = table_of(vals);
  const auto grid = log_grid(-6, -0.01, 400);
  std::uint64_t prev = 0;
  for (double l : grid) {
    const Counts c = counting(t, l);
    CHECK(c.n >= prev);  // grid runs from large to small λ
    CHECK(c.n == c.n_plus + c.n_minus);
    prev = c.n;
  }
  const OrderedSpectrum o = order_spectrum(t);
  for (std::size_t i = 0; i + 1 < o.s_runs.size(); ++i) {
    const double hi = o.s_runs[i].value.to_double();
    const double lo = o.s_runs[i + 1].value.to_double();
    CHECK(counting(t, lo + 0.25 * (hi - lo)).n == counting(t, lo + 0.75 * (hi - lo)).n);
  }
}

TEST_CASE("run lengths conserve multiplicity") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<double, std::uint64_t>> vals;
  std::uint64_t total = 0;
  for (int i = 0; i < 300; ++i) {
    const double v = i % 10 == 0 ? 0.0 : std::round(u(rng) * 20) / 20;
    const std::uint64_t m = 1 + i % 5;
    vals.push_back({v, m});
    if (v != 0) total += m;
  }
  const OrderedSpectrum o = order_spectrum(table_of(vals));
  CHECK(o.total() == total);
  std::uint64_t signed_total = 0;
  for (const Run& r : o.pos_runs) signed_total += r.length;
  for (const Run& r : o.neg_runs) signed_total += r.length;
  CHECK(signed_total == total);
  for (std::size_t i = 0; i + 1 < o.s_runs.size(); ++i) CHECK(o.s_runs[i + 1].value < o.s_runs[i].value);
}

TEST_CASE("nonincreasing rearrangement is dominated by a dominating nonincreasing sequence") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> b(100), a(100);
    double cur = 1.0;
    for (auto& x : b) x = cur *= u(rng) * 0.2 + 0.8;
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = (u(rng) < 0.5 ? -1 : 1) * b[k] * u(rng);
    std::vector<double> star(a.size());
    std::transform(a.begin(), a.end(), star.begin(), [](double x) { return std::fabs(x); });
    std::sort(star.rbegin(), star.rend());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(star[k] <= b[k]);
  }
}

TEST_CASE("reorder_share examples") {
  CHECK(reorder_share(BijectionPrefix::identity(101), 2.0, 100) == 101);
  BijectionPrefix swap = BijectionPrefix::identity(11);
  std::swap(swap.map[0], swap.map[1]);
  CHECK(reorder_share(swap, 1.5, 10) == 10);
  const BijectionPrefix s = sharpness_bijection(2.0, 10000);
  const double ratio = reorder_share(s, 2.0, 10000) / 1e4;
  CHECK(ratio >= 0.49);
  CHECK(ratio <= 0.52);
  CHECK_THROWS_AS(reorder_share(BijectionPrefix::identity(10), 1.0, 5), DomainError);
  CHECK_THROWS_AS(reorder_share(BijectionPrefix::identity(10), 2.0, 100), DomainError);
}

TEST_CASE("reorder_share lower bound on random permutations") {
  std::mt19937_64 rng(9);
  const std::uint64_t N = 10000;
  for (int trial = 0; trial < 50; ++trial) {
    const BijectionPrefix b = random_permutation(N + 1, rng);
    for (double beta : {1.5, 2.0, 3.0}) CHECK(reorder_share(b, beta, N) >= (beta - 1) / beta * N - 1);
  }
}

TEST_CASE("sharpness bijection") {
  const BijectionPrefix s = sharpness_bijection(2.0, 1000);
  CHECK(s.map[3] == 7);
  CHECK(s.map[0] == 1);
  CHECK(s.map[4] != 9);
  CHECK(s.injective());
  // Powers of two take the smallest targets the others never reach, in order.
  CHECK(s.map[1] == 0);
  CHECK(s.map[2] == 2);
  CHECK(s.map[4] == 3);
  for (double beta : {1.5, 2.0, 3.0}) {
    const std::uint64_t N = 100000;
    const BijectionPrefix b = sharpness_bijection(beta, N);
    CHECK(b.injective());
    const double ratio = static_cast<double>(reorder_share(b, beta, N)) / N;
    CHECK(std::fabs(ratio - (beta - 1) / beta) <= 0.02 * (beta - 1) / beta);
  }
}

TEST_CASE("dense_subsequence examples") {
  std::vector<double> a(64), b(64);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = b[j] = std::pow(0.9, j);
  const auto idx = dense_subsequence(a, b, 2.0);
  REQUIRE(idx.size() == a.size());
  for (std::size_t l = 0; l < idx.size(); ++l) CHECK(idx[l] == l);

  // Reverse each block of 8 of a geometric sequence.
  std::vector<double> rev(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) rev[j] = a[(j / 8) * 8 + 7 - j % 8];
  const auto r = dense_subsequence(rev, b, 2.0);
  for (std::size_t l = 0; l < r.size(); ++l) {
    CHECK(std::fabs(rev[r[l]]) <= b[static_cast<std::size_t>(std::floor(r[l] / 2.0))]);
    CHECK(r[l] <= static_cast<std::size_t>(std::floor(2.0 * (l + 1))) + 1);
  }

  std::vector<double> one_swap(a);
  std::swap(one_swap[10], one_swap[11]);
  const auto s = dense_subsequence(one_swap, b, 1.5);
  CHECK(s.size() >= a.size() - 1);

  std::vector<double> bad(a);
  bad[5] = 2.0;
  CHECK_THROWS_AS(dense_subsequence(bad, b, 2.0), DomainError);
}

TEST_CASE("dense_subsequence conclusions on random instances") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 50 + trial % 150;
    std::vector<double> b(n);
    double cur = 1.0;
    for (auto& x : b) x = cur *= 0.7 + 0.3 * u(rng);
    std::vector<double> a(b);
    for (auto& x : a) x *= u(rng) < 0.5 ? -1 : 1;
    std::shuffle(a.begin(), a.end(), rng);
    for (double beta : {1.5, 2.0, 3.0}) {
      const auto idx = dense_subsequence(a, b, beta);
      for (std::size_t l = 0; l < idx.size(); ++l) {
        CHECK(std::fabs(a[idx[l]]) <= b[static_cast<std::size_t>(std::floor(idx[l] / beta))]);
        CHECK(idx[l] <= static_cast<std::size_t>(std::floor(beta / (beta - 1) * (l + 1))) + 1);
        if (l) CHECK(idx[l] > idx[l - 1]);
      }
    }
  }
}

TEST_CASE("inverse_sum_ratio examples") {
  const std::uint64_t N = 1000000;
  const double id = inverse_sum_ratio(BijectionPrefix::identity(N + 1), 2.0, N);
  CHECK(id == doctest::Approx(1.0).epsilon(0.05));
  const double sharp = inverse_sum_ratio(sharpness_bijection(2.0, N), 2.0, N);
  CHECK(sharp >= 0.5 * 0.95);
  std::mt19937_64 rng(4);
  CHECK(inverse_sum_ratio(random_permutation(1001, rng), 1.5, 1000) >= 0.0);
}
