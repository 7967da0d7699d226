#include "radspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "radspec/errors.hpp"
#include "radspec/quadrature.hpp"
#include "radspec/specialfn.hpp"

namespace radspec {

namespace {

double factorial(int n) { return std::exp(log_gamma(n + 1.0)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double AsymptoticLaw::operator()(double lambda) const {
  if (!(lambda > 0 && lambda < 1)) throw DomainError("asymptotic law needs 0 < lambda < 1");
  const double L = std::fabs(std::log(lambda));
  double v = coefficient * std::pow(L, log_power);
  if (loglog_power != 0) v /= std::pow(std::log(L), loglog_power);
  return v;
}

AsymptoticLaw predicted_law(const SpaceSpec& space, const DecayClass& cls) {
  space.validate();
  const int d = space.d;
  using Tag = DecayClass::Tag;
  if (is_bergman(space.kind)) {
    if (cls.tag != Tag::CompactSupport) throw DomainError("Bergman laws need a compactly supported symbol");
    const double ratio = cls.parameter / space.radius();
    if (!(ratio > 0 && ratio < 1)) throw DomainError("Bergman laws need 0 < b < R");
    const double t = 2.0 * std::fabs(std::log(ratio));
    if (space.kind == SpaceKind::BergmanComplex) return {std::pow(t, -d) / factorial(d), double(d), 0.0};
    return {2.0 * std::pow(t, -(d - 1)) / factorial(d - 1), double(d - 1), 0.0};
  }
  if (cls.tag != Tag::CompactSupport && cls.tag != Tag::RapidDecay)
    throw DomainError(to_string(space.kind) + " laws need a compactly supported or rapidly decaying symbol");
  switch (space.kind) {
    case SpaceKind::BargmannComplex:
      return {1.0 / factorial(d), double(d), double(d)};
    case SpaceKind::BargmannHarmonic:
    case SpaceKind::BargmannHelmholtz:
      return {2.0 / factorial(d - 1), double(d - 1), double(d - 1)};
    case SpaceKind::AgmonHormander:
      return {2.0 / factorial(d - 1), 0.5 * (d - 1), 0.5 * (d - 1)};
    default:
      break;
  }
  throw DomainError("unsupported space");
}

ComparisonReport compare(const SpectrumTable& table, const AsymptoticLaw& law, std::span<const double> lambdas,
                         CountingPart part) {
  ComparisonReport r;
  double smallest = std::numeric_limits<double>::infinity();
  for (double l : lambdas) {
    const Counts c = counting(table, l);
    const std::uint64_t n = part == CountingPart::All ? c.n : part == CountingPart::Positive ? c.n_plus : c.n_minus;
    const double pred = law(l);
    r.lambdas.push_back(l);
    r.computed.push_back(n);
    r.predicted.push_back(pred);
    r.ratios.push_back(n / pred);
    r.max_ratio = std::max(r.max_ratio, n / pred);
    if (l < smallest) {
      smallest = l;
      r.final_ratio = n / pred;
    }
  }
  return r;
}

SlopeFit log_slope_fit(std::span<const LogReal> values, unsigned first_k, unsigned k_lo, unsigned k_hi) {
  if (!(k_hi > k_lo) || k_lo < 10) throw DomainError("log_slope_fit: need k_hi > k_lo >= 10");
  if (k_lo < first_k || k_hi - first_k >= values.size()) throw DomainError("log_slope_fit: range outside the table");
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    const LogReal& v = values[k - first_k];
    if (v.is_zero()) throw DomainError("log_slope_fit: zero eigenvalue at k=" + std::to_string(k));
    const double x1 = k * std::log(double(k));
    const double x2 = k;
    const double y = -v.log_abs();
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    t1 += x1 * y;
    t2 += x2 * y;
  }
  const double det = s11 * s22 - s12 * s12;
  return {(t1 * s22 - t2 * s12) / det, (s11 * t2 - s12 * t1) / det};
}

SlopeFit log_slope_fit(const SpectrumTable& table, unsigned k_lo, unsigned k_hi) {
  std::vector<LogReal> v;
  v.reserve(table.entries.size());
  for (const auto& e : table.entries) v.push_back(e.value);
  return log_slope_fit(v, 0, k_lo, k_hi);
}

bool CounterexampleReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

bool PeripheryReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

RadialSymbol counterexample_symbol(double p, double q) {
  using namespace expr;
  const ExprPtr r = var();
  const ExprPtr damp =
      unary(Op::Exp, binary(Op::Add, unary(Op::Neg, power(r, 2 * p)), power(r, 2.0)));
  return RadialSymbol(binary(Op::Mul, damp, unary(Op::Sin, power(r, 2 * q))));
}

CounterexampleReport run_counterexample(double p, double q, unsigned k_max, const CounterexampleOptions& o) {
  if (!(p > 1.0) || !(q > p)) throw DomainError("run_counterexample: requires 1 < p < q");
  CounterexampleReport rep;
  rep.p = p;
  rep.q = q;
  rep.k_max = k_max;
  rep.tol = o.tol;
  rep.fit_range = o.fit_range;
  if (rep.fit_range.second == 0) rep.fit_range = {std::max(10u, k_max / 3), k_max};

  const SpaceSpec space = SpaceSpec::whole_space(SpaceKind::BargmannComplex, 1);
  const RadialSymbol v = counterexample_symbol(p, q);
  const RadialSymbol abs_v = o.amplitude == 0.0 ? RadialSymbol() : decompose_signs(v).abs;

  // Λ_k(V) = 2 I(k)/k!, with I(k) the oscillatory moment.
  rep.lambda_v.resize(k_max + 1);
  std::vector<double> bound_ratio(k_max + 1, 0.0);
  for (unsigned k = 0; k <= k_max; ++k) {
    const QuadratureResult I = oscillatory_moment(p, q, k, o.tol, OscillatoryMethod::Auto, o.amplitude);
    const double log_bound = log_gamma((k + 1.0) / q) - std::log(2.0 * q);
    bound_ratio[k] = I.value.is_zero() ? 0.0 : std::exp(I.value.log_abs() - log_bound);
    rep.lambda_v[k] = I.value * LogReal::exp(std::log(2.0) - log_gamma(k + 1.0));
  }
  rep.max_bound_ratio = *std::max_element(bound_ratio.begin(), bound_ratio.end());

  SpectrumOptions so;
  so.threads = o.threads;
  so.tail_bound = false;
  const SpectrumTable abs_table = spectrum(space, abs_v, k_max, o.tol, so);
  for (const auto& e : abs_table.entries) rep.lambda_abs.push_back(e.value);

  const auto [lo, hi] = rep.fit_range;
  const double target_v = (q - 1) / q;
  const double target_abs = (p - 1) / p;
  rep.assertions.push_back({"rotation_bound", rep.max_bound_ratio <= 1.0 + 1e-9, rep.max_bound_ratio,
                            "max_k |I(k)| / (Gamma((k+1)/q)/(2q)) <= 1"});
  if (o.amplitude == 0.0) {
    const bool all_zero = std::all_of(rep.lambda_v.begin(), rep.lambda_v.end(), [](const LogReal& x) { return x.is_zero(); });
    rep.assertions.push_back({"all_zero", all_zero, 0.0, "sin factor removed"});
    return rep;
  }
  rep.fit_v = log_slope_fit(rep.lambda_v, 0, lo, hi);
  rep.fit_abs = log_slope_fit(rep.lambda_abs, 0, lo, hi);
  rep.assertions.push_back({"slope_abs", std::fabs(rep.fit_abs.a - target_abs) <= 0.1 * target_abs, rep.fit_abs.a,
                            "a_|V| within 10% of (p-1)/p = " + fmt(target_abs)});
  rep.assertions.push_back({"slope_v", rep.fit_v.a >= 0.9 * target_v, rep.fit_v.a,
                            "a_V >= 0.9 (q-1)/q = " + fmt(0.9 * target_v)});
  rep.assertions.push_back({"separation", rep.fit_v.a - rep.fit_abs.a >= 0.15, rep.fit_v.a - rep.fit_abs.a,
                            "a_V - a_|V| >= 0.15"});
  return rep;
}

PeripheryReport run_periphery(const RadialSymbol& v, const SpaceSpec& space, unsigned k_max,
                              const PeripheryOptions& o) {
  space.validate();
  const DecayClass cls = classify_decay(v);
  if (cls.tag != DecayClass::Tag::CompactSupport)
    throw PreconditionError("run_periphery: symbol must have compact support");
  PeripheryReport rep;
  rep.space = space;
  rep.symbol = v.text();
  rep.support_radius = cls.parameter;
  rep.lambda = o.lambda;

  SpectrumOptions so;
  so.threads = o.threads;
  SpectrumTable t = k_max == 0 ? spectrum_until(space, v, o.lambda, o.tol, 16, 1u << 16, so)
                               : spectrum(space, v, k_max, o.tol, so);
  rep.k_max = t.k_max;
  for (const auto& e : t.entries) {
    if (e.value.sign() < 0) {
      rep.largest_negative_k = e.k;
      rep.negative_count += e.multiplicity;
    }
  }
  const Counts c = counting(t, o.lambda);
  rep.n_plus = c.n_plus;
  rep.predicted = predicted_law(space, cls)(o.lambda);
  rep.ratio = c.n_plus / rep.predicted;
  rep.assertions.push_back({"finite_negative_spectrum", rep.largest_negative_k < static_cast<long>(t.k_max) / 2,
                            double(rep.largest_negative_k), "negative eigenvalues confined to small k"});
  rep.assertions.push_back({"positive_law", std::fabs(rep.ratio - 1.0) <= o.ratio_slack, rep.ratio,
                            "n_+(lambda) / law within " + fmt(o.ratio_slack)});
  return rep;
}

}  // namespace radspec
