#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <radspec/asymptotics.hpp>
#include <radspec/ordering.hpp>
#include <radspec/quadrature.hpp>
#include <radspec/specialfn.hpp>
#include <radspec/spectra.hpp>

using namespace radspec;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SpaceSpec unit_space(SpaceKind kind, int d) {
  return is_bergman(kind) ? SpaceSpec::bergman(kind, d, 1.0) : SpaceSpec::whole_space(kind, d);
}

Outcome closed_form_spectra() {
  const Clock clock;
  const double b = 0.5;
  double worst = 0;
  for (int d = 1; d <= 3; ++d)
    for (SpaceKind kind : {SpaceKind::BergmanComplex, SpaceKind::BergmanHarmonic}) {
      if (kind == SpaceKind::BergmanHarmonic && d == 1) continue;
      SpectrumOptions o;
      o.tail_bound = false;
      const SpectrumTable t = spectrum(SpaceSpec::bergman(kind, d, 1.0), parse_symbol("chi(0,0.5)"), 500, 1e-12, o);
      for (const auto& e : t.entries) {
        const double n = kind == SpaceKind::BergmanComplex ? 2.0 * e.k + 2 * d : 2.0 * e.k + d;
        const double expect = n * std::log(b);
        worst = std::max(worst, std::fabs(e.value.log_abs() - expect) / std::fabs(expect));
      }
    }
  const double s = clock.seconds();
  return {worst <= 1e-9 && s < 5.0, fmt("worst log-relative error %.3g, %.2f s", worst, s)};
}

Outcome normalization() {
  double worst = 0;
  std::string where;
  for (SpaceKind kind : kAllSpaceKinds) {
    if (kind == SpaceKind::AgmonHormander) continue;
    for (int d = 1; d <= 3; ++d) {
      if (kind != SpaceKind::BergmanComplex && kind != SpaceKind::BargmannComplex && d == 1) continue;
      SpectrumOptions o;
      o.tail_bound = false;
      const SpectrumTable t = spectrum(unit_space(kind, d), parse_symbol("1"), 200, 1e-12, o);
      for (const auto& e : t.entries) {
        const double err = std::fabs(e.value.to_double() - 1.0);
        if (err > worst) {
          worst = err;
          where = to_string(kind) + " d=" + std::to_string(d) + " k=" + std::to_string(e.k);
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("worst |Lambda_k - 1| = %.3g at %s", worst, where.c_str())};
}

Outcome bessel_identities() {
  double worst_identity = 0;
  for (int nu = 1; nu <= 50; ++nu)
    for (double R = 1; R <= 20; R += 1) {
      const double identity = bessel_l2_ball(nu, R);
      const QuadratureResult q = bessel_weighted(parse_symbol("1"), nu, BesselWeight::ball(R), 1e-12);
      worst_identity = std::max(worst_identity, std::fabs(q.value.to_double() / identity - 1.0));
    }
  double worst_neumann = 0;
  for (int m = 0; m <= 10; ++m)
    for (double r = 0.25; r <= 5.0; r += 0.25) {
      const double exact = std::pow(r, 2 * m);
      worst_neumann = std::max(worst_neumann, std::fabs(power_from_bessel(m, r, 80) / exact - 1.0));
    }
  return {worst_identity <= 1e-9 && worst_neumann <= 1e-8,
          fmt("identity vs quadrature %.3g, Neumann reconstruction %.3g", worst_identity, worst_neumann)};
}

Outcome counting_asymptotics() {
  const Clock clock;
  const SpectrumTable t =
      spectrum_until(SpaceSpec::bergman(SpaceKind::BergmanComplex, 2, 1.0), parse_symbol("chi(0,0.5)"), 1e-40, 1e-12);
  const double n = static_cast<double>(counting(t, 1e-40).n);
  const double ratio = n * 2.0 * std::pow(2 * std::log(2.0), 2) / std::pow(std::log(1e-40), 2);
  const double s = clock.seconds();
  return {ratio >= 0.9 && ratio <= 1.1 && s < 10.0,
          fmt("n = %.0f, normalized ratio %.4f, k_max %u, %.2f s", n, ratio, t.k_max, s)};
}

Outcome bargmann_law() {
  const SpectrumTable t = spectrum(SpaceSpec::whole_space(SpaceKind::BargmannComplex, 1), parse_symbol("chi(0,1)"), 500, 1e-12);
  const SlopeFit f = log_slope_fit(t, 100, 500);
  return {f.a >= 0.9 && f.a <= 1.1, fmt("a = %.4f, b = %.4f", f.a, f.b)};
}

Outcome helmholtz_bergman() {
  SpectrumOptions o;
  o.tail_bound = false;
  const SpectrumTable t = spectrum(SpaceSpec::bergman(SpaceKind::BergmanHelmholtz, 2, 1.0), parse_symbol("chi(0,0.5)"), 300, 1e-12, o);
  auto ratio = [&](unsigned k) { return std::exp(t.entries[k].value.log_abs() - (2.0 * k + 2) * std::log(0.5)); };
  bool in_range = true;
  double lo = 1e300, hi = 0;
  for (unsigned k = 50; k <= 300; ++k) {
    lo = std::min(lo, ratio(k));
    hi = std::max(hi, ratio(k));
    in_range = in_range && ratio(k) >= 0.5 && ratio(k) <= 2.0;
  }
  double first = 0, last = 0;
  for (unsigned i = 0; i < 10; ++i) {
    first += std::fabs(ratio(50 + i) - 1) / 10;
    last += std::fabs(ratio(291 + i) - 1) / 10;
  }
  return {in_range && last < first,
          fmt("ratio range [%.5f, %.5f]; mean |ratio-1| first decade %.3g, final decade %.3g", lo, hi, first, last)};
}

std::string random_symbol(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(2.0, 25.0);
  std::uniform_real_distribution<double> radius(0.3, 1.0);
  std::ostringstream os;
  os.precision(6);
  os << "(" << 0.5 * u(rng) << " + " << u(rng) << "*sin(" << freq(rng) << "*r) + " << u(rng) << "*cos(" << freq(rng)
     << "*r^2))*chi(0," << radius(rng) << ")";
  return os.str();
}

Outcome domination() {
  const Clock clock;
  std::mt19937_64 rng(20241);
  const double tol = 1e-10;
  std::size_t violations = 0, checked = 0;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const RadialSymbol v = parse_symbol(random_symbol(rng));
    const RadialSymbol abs_v = decompose_signs(v).abs;
    for (SpaceKind kind : kAllSpaceKinds) {
      const SpaceSpec space = unit_space(kind, 2);
      SpectrumOptions o;
      o.tail_bound = false;
      const SpectrumTable tv = spectrum(space, v, 200, tol, o);
      const SpectrumTable ta = spectrum(space, abs_v, 200, tol, o);
      for (unsigned k = 0; k <= 200; ++k) {
        const LogReal a = tv.entries[k].value.abs();
        const LogReal b = ta.entries[k].value;
        ++checked;
        if (a.is_zero()) continue;
        const double excess = a.log_abs() - b.log_abs();
        worst = std::max(worst, excess);
        if (excess > std::log1p(3 * tol)) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%zu violations in %zu eigenvalues, max log(|Lambda(V)|/Lambda(|V|)) = %.3g, %.1f s",
                               violations, checked, worst, clock.seconds())};
}

Outcome reordering() {
  std::mt19937_64 rng(7);
  std::size_t violations = 0;
  const std::uint64_t N = 10000;
  for (int trial = 0; trial < 1000; ++trial) {
    BijectionPrefix b = BijectionPrefix::identity(N + 1);
    std::shuffle(b.map.begin(), b.map.end(), rng);
    for (double beta : {1.5, 2.0, 3.0})
      if (static_cast<double>(reorder_share(b, beta, N)) < (beta - 1) / beta * N - 1) ++violations;
  }
  std::string sharp;
  for (double beta : {1.5, 2.0, 3.0}) {
    const std::uint64_t M = 100000;
    const double target = (beta - 1) / beta;
    const double ratio = static_cast<double>(reorder_share(sharpness_bijection(beta, M), beta, M)) / M;
    if (std::fabs(ratio - target) > 0.02 * target) ++violations;
    sharp += fmt(" beta=%.1f:%.4f", beta, ratio);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t dense_checks = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 20 + trial % 300;
    std::vector<double> b(n);
    double cur = 1.0;
    for (auto& x : b) x = cur *= 0.6 + 0.4 * u(rng);
    std::vector<double> a(b);
    for (auto& x : a) x *= (u(rng) < 0.5 ? -1.0 : 1.0) * (u(rng) < 0.2 ? u(rng) : 1.0);
    std::shuffle(a.begin(), a.end(), rng);
    const double beta = 1.2 + 2.8 * u(rng);
    const auto idx = dense_subsequence(a, b, beta);
    for (std::size_t l = 0; l < idx.size(); ++l) {
      ++dense_checks;
      const auto k = idx[l];
      if (std::fabs(a[k]) > b[static_cast<std::size_t>(std::floor(k / beta))]) ++violations;
      if (static_cast<double>(k) > std::floor(beta / (beta - 1) * (l + 1)) + 1) ++violations;
    }
  }
  return {violations == 0, fmt("%zu violations; sharpness ratios%s; %zu dense-subsequence indices checked", violations,
                               sharp.c_str(), dense_checks)};
}

Outcome cancelation() {
  const Clock clock;
  const CounterexampleReport r = run_counterexample(2, 4, 300);
  const double a_v = r.fit_v.a, a_abs = r.fit_abs.a;
  const bool ok = a_abs >= 0.45 && a_abs <= 0.55 && a_v >= 0.675 && a_v <= 0.90 && a_v - a_abs >= 0.15 &&
                  r.max_bound_ratio <= 1.0 && clock.seconds() < 300;
  return {ok, fmt("a_|V| = %.4f, a_V = %.4f, separation %.4f, max rotation-bound ratio %.4f, %.1f s", a_abs, a_v,
                  a_v - a_abs, r.max_bound_ratio, clock.seconds())};
}

Outcome periphery() {
  // Λ_k = (0.8^{2k+2} - 0.4^{2k+2}) - 5·0.3^{2k+2} on the one-dimensional disc.
  long last_negative = -1;
  for (long k = 0; k <= 2000; ++k) {
    const double n = 2.0 * k + 2;
    const double lhs = n * std::log(0.8) + std::log(-std::expm1(n * std::log(0.5)));
    const double rhs = std::log(5.0) + n * std::log(0.3);
    if (!(lhs > rhs)) last_negative = k;
  }
  const long k0 = last_negative + 1;
  PeripheryOptions o;
  o.lambda = 1e-40;
  const PeripheryReport r =
      run_periphery(parse_symbol("chi(0.4,0.8) - 5*chi(0,0.3)"), SpaceSpec::bergman(SpaceKind::BergmanComplex, 1, 1.0), 0, o);
  const bool ok = k0 <= 20 && r.largest_negative_k < k0 && r.largest_negative_k + 1 == k0 && r.ratio >= 0.85 &&
                  r.ratio <= 1.15;
  return {ok, fmt("K0 = %ld from the inequality, largest computed negative k = %ld, n_+ = %llu, law %.3f, ratio %.4f",
                  k0, r.largest_negative_k, static_cast<unsigned long long>(r.n_plus), r.predicted, r.ratio)};
}

Outcome limsup_proxy() {
  const char* symbols[] = {"chi(0.4,0.8) - 5*chi(0,0.3)", "cos(15*r)*chi(0,0.9)", "(1 - 3*r)*chi(0,0.6)",
                           "sin(30*r^2)*chi(0,0.75)", "(chi(0,0.2) - chi(0.2,0.5) + 0.5*chi(0.5,0.7))"};
  const auto grid = log_grid(-40, -5, 36);
  bool ok = true;
  std::string detail;
  for (SpaceKind kind : {SpaceKind::BergmanComplex, SpaceKind::BergmanHarmonic}) {
    const SpaceSpec space = SpaceSpec::bergman(kind, 2, 1.0);
    for (const char* s : symbols) {
      const RadialSymbol v = parse_symbol(s);
      const SpectrumTable tv = spectrum_until(space, v, 1e-40, 1e-12);
      const SpectrumTable ta = spectrum_until(space, decompose_signs(v).abs, 1e-40, 1e-12);
      double best = 0;
      for (double l : grid) {
        const double nb = static_cast<double>(counting(ta, l).n);
        if (nb > 0) best = std::max(best, static_cast<double>(counting(tv, l).n) / nb);
      }
      ok = ok && best >= 0.85;
      detail += fmt("\n    %s %s: max ratio %.4f", to_string(kind).c_str(), s, best);
    }
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form Bergman spectra", closed_form_spectra},
      {"normalization", normalization},
      {"Bessel identities", bessel_identities},
      {"counting asymptotics", counting_asymptotics},
      {"Bargmann slope", bargmann_law},
      {"Helmholtz Bergman ratio", helmholtz_bergman},
      {"domination", domination},
      {"reordering combinatorics", reordering},
      {"cancelation experiment", cancelation},
      {"periphery experiment", periphery},
      {"limsup proxy", limsup_proxy},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
