#include "radspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "radspec/errors.hpp"
#include "radspec/specialfn.hpp"

namespace radspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// exp(-745) is below the smallest subnormal double.
constexpr double kUnderflowDepth = 745.0;

QuadratureResult checked(QuadratureResult r, const char* what) {
  if (!r.converged) throw QuadratureError(std::string(what) + ": tolerance not met", r.value.log_abs(), r.log_abs_error);
  return r;
}

QuadratureResult scale(QuadratureResult r, const LogReal& c) {
  r.value *= c;
  if (r.log_abs_error > kNegInf) r.log_abs_error += c.log_abs();
  return r;
}

double log_of(double x) { return x > 0 ? std::log(x) : kNegInf; }

// Largest sampled log|V| over [lo, hi].
double log_sup(const RadialSymbol& v, double lo, double hi, int samples = 1024) {
  double best = kNegInf;
  for (int i = 0; i <= samples; ++i) {
    const LogReal x = v.evaluate_log(lo + (hi - lo) * i / samples);
    if (!x.is_zero()) best = std::max(best, x.log_abs());
  }
  for (double b : v.breakpoints()) {
    if (b < lo || b > hi) continue;
    const LogReal x = v.evaluate_log(b);
    if (!x.is_zero()) best = std::max(best, x.log_abs());
  }
  return best;
}

IntegrationOptions options_for(double tol) {
  IntegrationOptions opt;
  opt.rel_tol = tol;
  return opt;
}

KinkFinder kinks_of(const RadialSymbol& v) {
  if (!v.has_kinks()) return {};
  return [&v](double lo, double hi) { return v.kinks(lo, hi); };
}

// Upper end of the integration range for weights decaying like e^{-r²}.
double gaussian_cutoff(double centre) { return std::max(kDefaultBesselRMax, std::sqrt(std::max(centre, 0.0)) + 40.0); }

}  // namespace

void check_tolerance(double tol) {
  if (!(tol > 1e-14 && tol < 1e-2)) throw DomainError("tolerance must lie in (1e-14, 1e-2)");
}

QuadratureResult moment_compact(const RadialSymbol& v, double s, double R, double tol) {
  check_tolerance(tol);
  if (!(R > 0) || !std::isfinite(R)) throw DomainError("moment_compact: R must be positive and finite");
  if (!(s >= 0)) throw DomainError("moment_compact: s must be nonnegative");

  // r = R e^{-y/(s+1)} turns r^s dr into R^{s+1}/(s+1) e^{-y} dy and packs the
  // mass of large moments next to y = 0.
  const double s1 = s + 1.0;
  const auto r_of = [=](double y) { return R * std::exp(-y / s1); };
  const auto y_of = [=](double r) { return s1 * std::log(R / r); };

  std::vector<double> edges;
  double y_last = 0.0;
  for (double b : v.breakpoints()) {
    if (b > 0 && b < R) {
      edges.push_back(y_of(b));
      y_last = std::max(y_last, edges.back());
    }
  }
  const double y_hi = y_last + kUnderflowDepth;
  const double log_sup_v = log_of(sampled_sup_abs(v, 0.0, R)) + std::log(2.0);

  IntegrationOptions opt = options_for(tol);
  opt.log_tail_mass = [=](double y) { return log_sup_v - y; };
  const auto f = [&](double y) { return v.evaluate_log(r_of(y)) * LogReal::exp(-y); };
  KinkFinder kinks;
  if (v.has_kinks()) {
    kinks = [&](double a, double b) {
      std::vector<double> out;
      for (double r : v.kinks(r_of(b), r_of(a))) out.push_back(y_of(r));
      return out;
    };
  }
  QuadratureResult res = integrate_log(f, 0.0, y_hi, edges, kinks, opt);
  res.evaluations = std::max<std::size_t>(res.evaluations, 1);
  res = scale(res, LogReal::exp(s1 * std::log(R) - std::log(s1)));
  return checked(res, "moment_compact");
}

QuadratureResult moment_gaussian(const RadialSymbol& v, double s, double tol) {
  check_tolerance(tol);
  if (!(s >= 0)) throw DomainError("moment_gaussian: s must be nonnegative");
  const double r_hi = gaussian_cutoff(0.5 * s);
  const double log_sup_far = log_sup(v, r_hi, 2.0 * r_hi);
  const auto weight = [s](double r) { return s == 0 ? -r * r : s * std::log(r) - r * r; };
  // Measured against the peak of the weight at r = √(s/2).
  const double log_peak = s == 0 ? 0.0 : weight(std::sqrt(0.5 * s));
  if (log_sup_far + weight(r_hi) > log_peak - kUnderflowDepth + 1.0 || std::isnan(log_sup_far))
    throw DomainError("moment_gaussian: symbol grows too fast for the Gaussian weight");

  IntegrationOptions opt = options_for(tol);
  opt.log_tail_mass = [=](double r) {
    return log_sup_far + std::log(2.0) + weight(r) - std::log(std::max(2.0 * r - s / r, 1.0));
  };
  const auto f = [&](double r) { return v.evaluate_log(r) * LogReal::exp(weight(r)); };
  QuadratureResult res = integrate_log(f, 0.0, r_hi, v.breakpoints(), kinks_of(v), opt);
  res.evaluations = std::max<std::size_t>(res.evaluations, 1);
  return checked(res, "moment_gaussian");
}

QuadratureResult bessel_weighted(const RadialSymbol& v, double nu, BesselWeight w, double tol) {
  check_tolerance(tol);
  if (!(nu >= 0)) throw DomainError("bessel_weighted: order must be nonnegative");
  const BesselJ j(nu);
  IntegrationOptions opt = options_for(tol);
  double hi = 0.0;
  bool gaussian = false;
  switch (w.kind) {
    case BesselWeight::Kind::Ball:
      if (!(w.R > 0) || !std::isfinite(w.R)) throw DomainError("bessel_weighted: ball radius must be positive and finite");
      hi = w.R;
      break;
    case BesselWeight::Kind::Gaussian: {
      gaussian = true;
      hi = gaussian_cutoff(nu);
      const double far = log_sup(v, hi, 2.0 * hi);
      if (far - hi * hi > -kUnderflowDepth + 1.0 || std::isnan(far))
        throw DomainError("bessel_weighted: symbol grows too fast for the Gaussian weight");
      // |J_ν| ≤ 1
      opt.log_tail_mass = [far](double r) { return far - r * r; };
      break;
    }
    case BesselWeight::Kind::Plain: {
      const DecayClass dc = classify_decay(v);
      if (dc.tag == DecayClass::Tag::CompactSupport) {
        hi = dc.parameter;
      } else if (dc.tag == DecayClass::Tag::RapidDecay || dc.tag == DecayClass::Tag::StretchedExp) {
        // Truncate where |V| has fallen below the double range for good.
        double t = 1.0;
        while (t < 1e4 && log_sup(v, t, 4.0 * t) > -2.0 * kUnderflowDepth) t *= 2.0;
        if (t >= 1e4) throw DomainError("bessel_weighted: could not certify truncation of the plain weight");
        hi = t;
      } else {
        throw PreconditionError("bessel_weighted: plain weight needs a compactly supported or decaying symbol");
      }
      break;
    }
  }
  if (hi <= 0) return {LogReal::zero(), kNegInf, 1, true};
  const auto f = [&](double r) {
    const LogReal jr = j(r);
    LogReal x = v.evaluate_log(r) * jr * jr * LogReal(r);
    if (gaussian) x *= LogReal::exp(-r * r);
    return x;
  };
  QuadratureResult res = integrate_log(f, 0.0, hi, v.breakpoints(), kinks_of(v), opt);
  res.evaluations = std::max<std::size_t>(res.evaluations, 1);
  return checked(res, "bessel_weighted");
}

namespace {

// Repeated averaging of consecutive partial sums (Euler transform for alternating tails).
double averaged(std::vector<double> s) {
  while (s.size() > 1) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s.empty() ? 0.0 : s.front();
}

QuadratureResult oscillatory_zero_intervals(double a, double s, double tol) {
  const double pi = std::numbers::pi;
  // Work on t^{a-1} e^{-t^s} sin t scaled by e^{-shift} so partial sums stay in range.
  const double t_peak = std::pow(std::max(a - 1.0, 0.0) / s, 1.0 / s);
  const double shift = t_peak > 0 ? (a - 1.0) * std::log(t_peak) - std::pow(t_peak, s) : 0.0;
  const auto log_f = [=](double t) { return (a - 1.0) * std::log(t) - std::pow(t, s) - shift; };

  IntegrationOptions opt;
  opt.rel_tol = std::min(1e-13, 0.01 * tol);
  opt.samples_per_piece = 16;

  std::vector<double> partial;
  double sum = 0.0;
  double abs_sum = 0.0;
  double err = 0.0;
  std::size_t evals = 0;
  const std::size_t window = 12;
  const std::size_t max_intervals = 200000;
  double last_estimate = 0.0;
  int stable = 0;
  bool converged = false;
  for (std::size_t jdx = 0; jdx < max_intervals; ++jdx) {
    const double lo = jdx * pi;
    const double hi = lo + pi;
    QuadratureResult c;
    if (jdx == 0 && a < 1.0) {
      // t = u^{1/a} removes the t^{a-1} endpoint singularity.
      const auto g = [&](double u) {
        if (u <= 0) return LogReal::zero();
        const double t = std::pow(u, 1.0 / a);
        return LogReal::exp(-std::pow(t, s) - shift - std::log(a)) * LogReal(std::sin(t));
      };
      c = integrate_log(g, 0.0, std::pow(pi, a), opt);
    } else {
      const auto g = [&](double t) {
        if (t <= 0) return LogReal::zero();
        return LogReal::exp(log_f(t)) * LogReal(std::sin(t));
      };
      c = integrate_log(g, lo, hi, opt);
    }
    evals += c.evaluations;
    const double cj = c.value.to_double();
    sum += cj;
    abs_sum += std::fabs(cj);
    if (c.log_abs_error > kNegInf) err += std::exp(c.log_abs_error);
    partial.push_back(sum);
    if (partial.size() < window || hi < t_peak) continue;
    const double estimate = averaged({partial.end() - window, partial.end()});
    const double floor = 64.0 * kEps * abs_sum + err;
    const double change = std::fabs(estimate - last_estimate);
    last_estimate = estimate;
    if (change <= std::max(0.1 * tol * std::fabs(estimate), floor)) {
      if (++stable >= 3) {
        converged = true;
        break;
      }
    } else {
      stable = 0;
    }
  }
  QuadratureResult res;
  res.evaluations = std::max<std::size_t>(evals, 1);
  const double estimate = last_estimate;
  const double total_err = 64.0 * kEps * abs_sum + err + (converged ? 0.0 : std::fabs(estimate - sum));
  res.value = LogReal(estimate) * LogReal::exp(shift);
  res.log_abs_error = total_err > 0 ? std::log(total_err) + shift : kNegInf;
  res.converged = converged && total_err <= tol * std::fabs(estimate);
  return res;
}

QuadratureResult oscillatory_rotated(double a, double s, double tol) {
  const double pi = std::numbers::pi;
  const double cs = std::cos(0.5 * pi * s);
  const double sn = std::sin(0.5 * pi * s);
  const double phase = 0.5 * pi * a;
  const double t_hi = a + 40.0 * std::sqrt(a + 1.0) + 800.0;
  IntegrationOptions opt = options_for(tol);
  opt.rel_tol = std::min(opt.rel_tol, 1e-13);
  if (a < 1.0) {
    // τ = u^{1/a}
    const double u_hi = std::pow(t_hi, a);
    opt.log_tail_mass = [=](double) { return -t_hi; };
    const auto g = [=](double u) {
      if (u <= 0) return LogReal(std::sin(phase) / a);
      const double t = std::pow(u, 1.0 / a);
      const double ts = std::pow(t, s);
      return LogReal::exp(-t - ts * cs - std::log(a)) * LogReal(std::sin(phase - ts * sn));
    };
    return integrate_log(g, 0.0, u_hi, opt);
  }
  opt.log_tail_mass = [=](double t) { return (a - 1.0) * std::log(t) - t + std::log(2.0); };
  const auto g = [=](double t) {
    if (t <= 0) return a == 1.0 ? LogReal(std::sin(phase)) : LogReal::zero();
    const double ts = std::pow(t, s);
    return LogReal::exp((a - 1.0) * std::log(t) - t - ts * cs) * LogReal(std::sin(phase - ts * sn));
  };
  return integrate_log(g, 0.0, t_hi, opt);
}

}  // namespace

QuadratureResult oscillatory_moment(double p, double q, unsigned k, double tol, OscillatoryMethod method,
                                    double amplitude) {
  check_tolerance(tol);
  if (!(p > 1.0) || !(q > p)) throw DomainError("oscillatory_moment: requires 1 < p < q");
  if (amplitude == 0.0) return {LogReal::zero(), kNegInf, 1, true};
  const double a = (k + 1.0) / q;
  const double s = p / q;

  QuadratureResult res;
  bool done = false;
  if (method == OscillatoryMethod::ZeroIntervals) {
    res = oscillatory_zero_intervals(a, s, tol);
    done = true;
  } else if (method == OscillatoryMethod::Auto) {
    // Summing on the real line cancels down from ∫|f| ≈ Γ(a/s)/s to a value of size
    // at most Γ(a); only attempt it when rounding leaves room for the tolerance.
    const double log_l1 = log_gamma(a / s) - std::log(s);
    if (log_l1 + std::log(kEps) + 4.0 * std::log(10.0) < std::log(tol) + log_gamma(a)) {
      QuadratureResult z = oscillatory_zero_intervals(a, s, tol);
      if (z.converged) {
        res = z;
        done = true;
      }
    }
  }
  if (!done) res = oscillatory_rotated(a, s, tol);
  res = scale(res, LogReal(amplitude / (2.0 * q)));
  return checked(res, "oscillatory_moment");
}

}  // namespace radspec
