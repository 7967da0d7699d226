#include "radspec/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radspec/errors.hpp"

namespace radspec {

double QuadratureResult::relative_error() const noexcept {
  if (log_abs_error == -std::numeric_limits<double>::infinity()) return 0.0;
  if (value.is_zero()) return std::numeric_limits<double>::infinity();
  return std::exp(log_abs_error - value.log_abs());
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Rule {
  std::array<double, 11> x;
  std::array<double, 11> wk;
  std::array<double, 5> wg;  // Gauss weights at x[1], x[3], ..., x[9]
};

const Rule& gk21() {
  static const Rule rule = [] {
    Rule r{};
    const auto& a = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& w = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& g = boost::math::quadrature::gauss<double, 10>::weights();
    for (std::size_t i = 0; i < 11; ++i) {
      r.x[i] = a[i];
      r.wk[i] = w[i];
    }
    for (std::size_t i = 0; i < 5; ++i) r.wg[i] = g[i];
    return r;
  }();
  return rule;
}

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;
  bool operator<(const Segment& o) const { return error < o.error; }
};

class ScaledIntegrand {
 public:
  ScaledIntegrand(const LogIntegrand& f, double shift) : f_(f), shift_(shift) {}

  double operator()(double x) {
    ++evaluations;
    const LogReal v = f_(x);
    if (v.is_zero()) return 0.0;
    if (std::isnan(v.log_abs())) throw DomainError("integrand is not finite");
    const double y = std::exp(v.log_abs() - shift_);
    if (!std::isfinite(y)) throw DomainError("integrand is not finite");
    return v.sign() * y;
  }

  std::size_t evaluations = 0;

 private:
  const LogIntegrand& f_;
  double shift_;
};

Segment evaluate_segment(ScaledIntegrand& g, double a, double b) {
  const Rule& rule = gk21();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = g(c);
  double k = rule.wk[0] * f0;
  double kabs = rule.wk[0] * std::fabs(f0);
  double gs = 0.0;
  for (std::size_t i = 1; i < 11; ++i) {
    const double dx = h * rule.x[i];
    const double f1 = g(c - dx);
    const double f2 = g(c + dx);
    k += rule.wk[i] * (f1 + f2);
    kabs += rule.wk[i] * (std::fabs(f1) + std::fabs(f2));
    if (i % 2 == 1) gs += rule.wg[i / 2] * (f1 + f2);
  }
  k *= h;
  gs *= h;
  kabs *= h;
  return {a, b, k, std::fabs(k - gs), kabs};
}

struct Sample {
  double x;
  double log_abs;
};

}  // namespace

QuadratureResult integrate_log(const LogIntegrand& f, double lo, double hi, std::span<const double> breakpoints,
                               const KinkFinder& kinks, const IntegrationOptions& opt) {
  QuadratureResult result;
  if (!(hi > lo)) return result;
  if (!(opt.rel_tol > 0)) throw DomainError("integrate_log: rel_tol must be positive");

  std::vector<double> edges{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Sample every piece to locate the peak of the log-integrand.
  const int n = std::max(opt.samples_per_piece, 8);
  std::vector<std::vector<Sample>> samples(edges.size() - 1);
  double peak = kNegInf;
  std::size_t evals = 0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p];
    const double b = edges[p + 1];
    const double w = b - a;
    auto& s = samples[p];
    s.reserve(static_cast<std::size_t>(n) + 2);
    s.push_back({a, kNegInf});
    for (int i = 0; i < n; ++i) s.push_back({a + w * (i + 0.5) / n, kNegInf});
    s.push_back({b, kNegInf});
    // Endpoint samples are nudged inward so one-sided limits at breakpoints are seen.
    const double nudge = 1e-10 * w;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double x = s[i].x;
      if (i == 0) x = a + nudge;
      if (i + 1 == s.size()) x = b - nudge;
      const LogReal v = f(x);
      ++evals;
      s[i].log_abs = v.is_zero() ? kNegInf : v.log_abs();
      if (std::isnan(s[i].log_abs)) throw DomainError("integrand is not finite");
      peak = std::max(peak, s[i].log_abs);
    }
  }
  result.evaluations = evals;
  if (peak == kNegInf) return result;
  if (!std::isfinite(peak)) throw DomainError("integrand is not finite");

  // Active windows and a bound on what is dropped outside them.
  const double floor_level = peak - opt.window_depth;
  std::vector<std::pair<double, double>> windows;
  double dropped = 0.0;
  for (const auto& s : samples) {
    const std::size_t cells = s.size() - 1;
    std::vector<char> active(cells, 0);
    for (std::size_t c = 0; c < cells; ++c)
      active[c] = std::max(s[c].log_abs, s[c + 1].log_abs) >= floor_level;
    std::vector<char> keep(active);
    for (std::size_t c = 0; c < cells; ++c) {
      if (!active[c]) continue;
      if (c > 0) keep[c - 1] = 1;
      if (c + 1 < cells) keep[c + 1] = 1;
    }
    for (std::size_t c = 0; c < cells;) {
      if (!keep[c]) {
        const double m = std::max(s[c].log_abs, s[c + 1].log_abs);
        if (m > kNegInf) dropped += std::exp(m - peak) * (s[c + 1].x - s[c].x);
        ++c;
        continue;
      }
      std::size_t e = c;
      while (e < cells && keep[e]) ++e;
      windows.emplace_back(s[c].x, s[e].x);
      c = e;
    }
  }

  ScaledIntegrand g(f, peak);
  std::priority_queue<Segment> queue;
  double total = 0.0;
  double total_err = 0.0;
  double total_abs = 0.0;
  std::vector<Segment> frozen;
  auto push = [&](const Segment& s) {
    total += s.value;
    total_err += s.error;
    total_abs += s.abs_value;
    queue.push(s);
  };
  for (const auto& [a, b] : windows) {
    std::vector<double> cuts{a};
    if (kinks) {
      for (double k : kinks(a, b))
        if (k > a && k < b) cuts.push_back(k);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i]) push(evaluate_segment(g, cuts[i], cuts[i + 1]));
  }

  double tail = dropped;
  if (opt.log_tail_mass) {
    const double lt = opt.log_tail_mass(hi);
    if (lt > kNegInf) tail += std::exp(lt - peak);
  }

  auto target = [&] { return std::max(opt.rel_tol * std::fabs(total), 64.0 * kEps * total_abs); };
  std::size_t segments = queue.size();
  std::size_t iterations = 0;
  while (!queue.empty() && total_err + tail > target() && segments < opt.max_segments) {
    Segment s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      frozen.push_back(s);
      continue;
    }
    total -= s.value;
    total_err -= s.error;
    total_abs -= s.abs_value;
    push(evaluate_segment(g, s.a, mid));
    push(evaluate_segment(g, mid, s.b));
    ++segments;
    // Re-sum periodically to keep incremental drift out of the stopping test.
    if (++iterations % 4096 == 0) {
      std::vector<Segment> all;
      all.reserve(queue.size());
      total = total_err = total_abs = 0.0;
      while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
      }
      for (const auto& x : all) push(x);
      for (const auto& x : frozen) {
        total += x.value;
        total_err += x.error;
        total_abs += x.abs_value;
      }
    }
  }

  // Final exact re-summation.
  total = total_err = total_abs = 0.0;
  auto add = [&](const Segment& s) {
    total += s.value;
    total_err += s.error;
    total_abs += s.abs_value;
  };
  while (!queue.empty()) {
    add(queue.top());
    queue.pop();
  }
  for (const auto& s : frozen) add(s);

  result.evaluations += g.evaluations;
  const double err = total_err + tail;
  result.converged = err <= target();
  result.value = LogReal(total) * LogReal::exp(peak);
  const double floor_err = std::max(err, kEps * total_abs);
  result.log_abs_error = floor_err > 0 ? std::log(floor_err) + peak : kNegInf;
  return result;
}

}  // namespace radspec
