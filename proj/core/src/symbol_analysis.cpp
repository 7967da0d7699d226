// Structural analyses of radial symbols: support radius, tail class, kinks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "radspec/errors.hpp"
#include "radspec/symbol.hpp"

namespace radspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Sampling horizon for symbols without structural support bound.
constexpr double kTailHorizon = 100.0;

// Upper bound on the support of a subtree, from indicator pieces and zero-preserving operations.
double support_bound(const ExprNode& n) {
  switch (n.op) {
    case Op::Number:
      return n.value == 0.0 ? 0.0 : kInf;
    case Op::Var:
    case Op::Exp:
    case Op::Cos:
      return kInf;
    case Op::Chi:
      return n.hi;
    case Op::Add:
    case Op::Sub:
      return std::max(support_bound(*n.left), support_bound(*n.right));
    case Op::Mul:
      return std::min(support_bound(*n.left), support_bound(*n.right));
    case Op::Div:
      return support_bound(*n.left);
    case Op::Pow:
      return n.value > 0 ? support_bound(*n.left) : kInf;
    case Op::Neg:
    case Op::Sin:
    case Op::PositivePart:
    case Op::NegativePart:
    case Op::Abs:
      return support_bound(*n.left);
  }
  return kInf;
}

bool any_nonzero(const RadialSymbol& v, double lo, double hi) {
  if (!(hi > lo)) return false;
  const double w = hi - lo;
  // Geometric approach to hi catches mass concentrated at the right end.
  for (int i = 1; i <= 48; ++i) {
    const double r = hi - w * std::ldexp(1.0, -i);
    if (r > lo && r < hi && v(r) != 0.0) return true;
  }
  constexpr int kUniform = 1024;
  for (int i = 0; i < kUniform; ++i) {
    const double r = lo + w * (i + 0.5) / kUniform;
    if (v(r) != 0.0) return true;
  }
  return false;
}

// Leading term c*r^m of a polynomial-like subtree, as r -> infinity.
struct Monomial {
  double coef;
  double power;
};

std::optional<Monomial> leading_term(const ExprNode& n) {
  switch (n.op) {
    case Op::Number:
      return Monomial{n.value, 0.0};
    case Op::Var:
      return Monomial{1.0, 1.0};
    case Op::Neg: {
      auto c = leading_term(*n.left);
      if (!c) return std::nullopt;
      return Monomial{-c->coef, c->power};
    }
    case Op::Add:
    case Op::Sub: {
      auto a = leading_term(*n.left);
      auto b = leading_term(*n.right);
      if (!a || !b) return std::nullopt;
      if (n.op == Op::Sub) b->coef = -b->coef;
      if (a->coef == 0.0) return b;
      if (b->coef == 0.0) return a;
      if (a->power > b->power) return a;
      if (b->power > a->power) return b;
      const double c = a->coef + b->coef;
      if (c == 0.0) return std::nullopt;  // leading terms cancel; next order unknown
      return Monomial{c, a->power};
    }
    case Op::Mul: {
      auto a = leading_term(*n.left);
      auto b = leading_term(*n.right);
      if (!a || !b) return std::nullopt;
      if (a->coef == 0.0 || b->coef == 0.0) return Monomial{0.0, 0.0};
      return Monomial{a->coef * b->coef, a->power + b->power};
    }
    case Op::Div: {
      auto a = leading_term(*n.left);
      if (!a || n.right->op != Op::Number || n.right->value == 0.0) return std::nullopt;
      return Monomial{a->coef / n.right->value, a->power};
    }
    case Op::Pow: {
      auto a = leading_term(*n.left);
      if (!a) return std::nullopt;
      if (a->coef == 0.0) return Monomial{0.0, 0.0};
      if (a->coef < 0 && std::floor(n.value) != n.value) return std::nullopt;
      return Monomial{std::pow(a->coef, n.value), a->power * n.value};
    }
    default:
      return std::nullopt;
  }
}

// Exact monomial c*r^m (no lower-order terms), used for closed-form zero sets.
std::optional<Monomial> exact_monomial(const ExprNode& n) {
  switch (n.op) {
    case Op::Var:
      return Monomial{1.0, 1.0};
    case Op::Pow: {
      auto b = exact_monomial(*n.left);
      if (!b || b->coef <= 0) return std::nullopt;
      return Monomial{std::pow(b->coef, n.value), b->power * n.value};
    }
    case Op::Neg: {
      auto b = exact_monomial(*n.left);
      if (!b) return std::nullopt;
      return Monomial{-b->coef, b->power};
    }
    case Op::Mul: {
      if (n.left->op == Op::Number) {
        auto b = exact_monomial(*n.right);
        if (b) return Monomial{b->coef * n.left->value, b->power};
      }
      if (n.right->op == Op::Number) {
        auto b = exact_monomial(*n.left);
        if (b) return Monomial{b->coef * n.right->value, b->power};
      }
      return std::nullopt;
    }
    case Op::Div: {
      if (n.right->op != Op::Number || n.right->value == 0.0) return std::nullopt;
      auto b = exact_monomial(*n.left);
      if (!b) return std::nullopt;
      return Monomial{b->coef / n.right->value, b->power};
    }
    default:
      return std::nullopt;
  }
}

// Evaluates a subtree in linear arithmetic (used only by the structural probes).
double eval_node(const ExprNode& n, double r) {
  switch (n.op) {
    case Op::Number:
      return n.value;
    case Op::Var:
      return r;
    case Op::Chi:
      return (r >= n.lo && r <= n.hi) ? 1.0 : 0.0;
    case Op::Add:
      return eval_node(*n.left, r) + eval_node(*n.right, r);
    case Op::Sub:
      return eval_node(*n.left, r) - eval_node(*n.right, r);
    case Op::Mul:
      return eval_node(*n.left, r) * eval_node(*n.right, r);
    case Op::Div:
      return eval_node(*n.left, r) / eval_node(*n.right, r);
    case Op::Pow:
      return std::pow(eval_node(*n.left, r), n.value);
    case Op::Neg:
      return -eval_node(*n.left, r);
    case Op::Exp:
      return std::exp(eval_node(*n.left, r));
    case Op::Sin:
      return std::sin(eval_node(*n.left, r));
    case Op::Cos:
      return std::cos(eval_node(*n.left, r));
    case Op::PositivePart:
      return std::max(eval_node(*n.left, r), 0.0);
    case Op::NegativePart:
      return std::max(-eval_node(*n.left, r), 0.0);
    case Op::Abs:
      return std::fabs(eval_node(*n.left, r));
  }
  return 0.0;
}

// Tail behaviour of log|f(r)| as r -> infinity.
struct Tail {
  enum class Kind { Zero, Algebraic, Stretched, Super, Growing, Unknown };
  Kind kind = Kind::Unknown;
  double coef = 0.0;   // Stretched: log|f| ~ -coef * r^power
  double power = 0.0;
};

Tail make(Tail::Kind k, double c = 0.0, double m = 0.0) { return Tail{k, c, m}; }

Tail tail_of_exp_argument(const ExprNode& u) {
  if (auto lt = leading_term(u)) {
    if (lt->coef == 0.0 || lt->power <= 0.0) return make(Tail::Kind::Algebraic);
    if (lt->coef < 0) return make(Tail::Kind::Stretched, -lt->coef, lt->power);
    return make(Tail::Kind::Growing);
  }
  // Not polynomial: probe the growth rate of u numerically.
  const double u2 = eval_node(u, 1e2);
  const double u3 = eval_node(u, 1e3);
  if (std::isnan(u2) || std::isnan(u3)) return make(Tail::Kind::Unknown);
  if (u3 == -kInf && u2 < 0) return make(Tail::Kind::Super);
  if (u3 > 0 && u2 > 0) return make(Tail::Kind::Growing);
  if (u3 < 0 && u2 < 0) {
    const double m = std::log10(u3 / u2);
    if (m > 50.0) return make(Tail::Kind::Super);
  }
  return make(Tail::Kind::Unknown);
}

Tail tail(const ExprNode& n) {
  using K = Tail::Kind;
  switch (n.op) {
    case Op::Number:
      return make(n.value == 0.0 ? K::Zero : K::Algebraic);
    case Op::Var:
      return make(K::Algebraic);
    case Op::Chi:
      return make(K::Zero);
    case Op::Exp:
      return tail_of_exp_argument(*n.left);
    case Op::Sin: {
      const Tail t = tail(*n.left);
      return make(t.kind == K::Zero ? K::Zero : K::Algebraic);
    }
    case Op::Cos:
      return make(K::Algebraic);
    case Op::Neg:
    case Op::PositivePart:
    case Op::NegativePart:
    case Op::Abs:
      return tail(*n.left);
    case Op::Pow: {
      const Tail t = tail(*n.left);
      if (n.value > 0) {
        if (t.kind == K::Stretched) return make(K::Stretched, t.coef * n.value, t.power);
        return t;
      }
      switch (t.kind) {
        case K::Stretched:
        case K::Super:
          return make(K::Growing);
        case K::Algebraic:
          return make(K::Algebraic);
        default:
          return make(K::Unknown);
      }
    }
    case Op::Div: {
      if (n.right->op == Op::Number && n.right->value != 0.0) return tail(*n.left);
      return make(K::Unknown);
    }
    case Op::Mul: {
      const Tail a = tail(*n.left);
      const Tail b = tail(*n.right);
      if (a.kind == K::Zero || b.kind == K::Zero) return make(K::Zero);
      if (a.kind == K::Unknown || b.kind == K::Unknown) return make(K::Unknown);
      const bool grows = a.kind == K::Growing || b.kind == K::Growing;
      const bool decays = a.kind == K::Stretched || b.kind == K::Stretched || a.kind == K::Super ||
                          b.kind == K::Super;
      if (grows && decays) return make(K::Unknown);
      if (grows) return make(K::Growing);
      if (a.kind == K::Super || b.kind == K::Super) return make(K::Super);
      if (a.kind == K::Stretched && b.kind == K::Stretched) {
        if (a.power == b.power) return make(K::Stretched, a.coef + b.coef, a.power);
        return a.power > b.power ? a : b;
      }
      if (a.kind == K::Stretched) return a;
      if (b.kind == K::Stretched) return b;
      return make(K::Algebraic);
    }
    case Op::Add:
    case Op::Sub: {
      const Tail a = tail(*n.left);
      const Tail b = tail(*n.right);
      if (a.kind == K::Zero) return b;
      if (b.kind == K::Zero) return a;
      if (a.kind == K::Unknown || b.kind == K::Unknown) return make(K::Unknown);
      if (a.kind == K::Growing || b.kind == K::Growing) return make(K::Growing);
      if (a.kind == K::Algebraic || b.kind == K::Algebraic) return make(K::Algebraic);
      if (a.kind == K::Stretched && b.kind == K::Stretched) {
        if (a.power == b.power) return a.coef <= b.coef ? a : b;
        return a.power < b.power ? a : b;
      }
      if (a.kind == K::Stretched) return a;
      if (b.kind == K::Stretched) return b;
      return make(K::Super);
    }
  }
  return make(K::Unknown);
}

// ---------------------------------------------------------------------------
// Zero sets for kink detection.

constexpr std::size_t kMaxKinks = 20'000'000;

double bisect(const ExprNode& f, double a, double b, double fa) {
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = eval_node(f, m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

void sampled_zeros(const ExprNode& f, double lo, double hi, std::vector<double>& out) {
  constexpr int kSamples = 4096;
  double prev_r = lo;
  double prev = eval_node(f, lo);
  for (int i = 1; i <= kSamples; ++i) {
    const double r = lo + (hi - lo) * i / kSamples;
    const double cur = eval_node(f, r);
    if (prev != 0.0 && cur != 0.0 && ((prev > 0) != (cur > 0))) out.push_back(bisect(f, prev_r, r, prev));
    if (cur == 0.0 && r < hi) out.push_back(r);
    prev_r = r;
    prev = cur;
  }
}

// Zeros of sin(u) or cos(u) where u(r) = c r^m, solved in closed form.
void trig_monomial_zeros(const Monomial& u, bool is_cos, double lo, double hi, std::vector<double>& out) {
  if (u.coef == 0.0 || u.power <= 0.0) return;
  const double phase = is_cos ? 0.5 : 0.0;
  const double ulo = u.coef * std::pow(lo, u.power);
  const double uhi = u.coef * std::pow(hi, u.power);
  const double jlo = std::ceil(std::min(ulo, uhi) / std::numbers::pi - phase);
  const double jhi = std::floor(std::max(ulo, uhi) / std::numbers::pi - phase);
  if (jhi - jlo + 1 > static_cast<double>(kMaxKinks)) throw DomainError("too many kinks to resolve in interval");
  for (double j = jlo; j <= jhi; j += 1.0) {
    const double target = (j + phase) * std::numbers::pi / u.coef;
    if (target < 0) continue;
    const double r = std::pow(target, 1.0 / u.power);
    if (r > lo && r < hi) out.push_back(r);
  }
}

void zeros(const ExprNode& n, double lo, double hi, std::vector<double>& out) {
  switch (n.op) {
    case Op::Number:
    case Op::Exp:
    case Op::Chi:
      return;
    case Op::Var:
      if (lo < 0 && hi > 0) out.push_back(0.0);
      return;
    case Op::Neg:
    case Op::Pow:
      zeros(*n.left, lo, hi, out);
      return;
    case Op::Mul:
      zeros(*n.left, lo, hi, out);
      zeros(*n.right, lo, hi, out);
      return;
    case Op::Div:
      zeros(*n.left, lo, hi, out);
      return;
    case Op::Sin:
    case Op::Cos:
      if (auto m = exact_monomial(*n.left)) {
        trig_monomial_zeros(*m, n.op == Op::Cos, lo, hi, out);
        return;
      }
      sampled_zeros(n, lo, hi, out);
      return;
    default:
      sampled_zeros(n, lo, hi, out);
      return;
  }
}

void kinks_of(const ExprNode& n, double lo, double hi, std::vector<double>& out) {
  switch (n.op) {
    case Op::PositivePart:
    case Op::NegativePart:
    case Op::Abs:
      zeros(*n.left, lo, hi, out);
      kinks_of(*n.left, lo, hi, out);
      return;
    default:
      if (n.left) kinks_of(*n.left, lo, hi, out);
      if (n.right) kinks_of(*n.right, lo, hi, out);
      return;
  }
}

}  // namespace

std::vector<double> RadialSymbol::kinks(double lo, double hi) const {
  std::vector<double> out;
  if (!has_clamps_ || !(hi > lo)) return out;
  kinks_of(*root_, lo, hi, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove_if(out.begin(), out.end(), [&](double x) { return !(x > lo && x < hi); }), out.end());
  return out;
}

SupportRadius exact_support_radius(const RadialSymbol& v) {
  const double bound = support_bound(*v.root());
  const auto& bps = v.breakpoints();
  if (std::isfinite(bound)) {
    std::vector<double> cands;
    for (double b : bps)
      if (b <= bound) cands.push_back(b);
    if (bound > 0 && (cands.empty() || cands.back() != bound)) cands.push_back(bound);
    std::sort(cands.begin(), cands.end());
    for (std::size_t i = cands.size(); i-- > 0;) {
      const double hi = cands[i];
      const double lo = i > 0 ? cands[i - 1] : 0.0;
      if (any_nonzero(v, lo, hi)) return {SupportRadius::Kind::Finite, hi};
    }
    return {SupportRadius::Kind::Finite, 0.0};
  }
  const double last = bps.empty() ? 0.0 : bps.back();
  const double horizon = std::max(2.0 * last, last + kTailHorizon);
  if (any_nonzero(v, last, horizon)) return {SupportRadius::Kind::Infinite, kInf};
  return {SupportRadius::Kind::Unknown, kInf};
}

DecayClass classify_decay(const RadialSymbol& v) {
  const SupportRadius esr = exact_support_radius(v);
  if (esr.finite()) return DecayClass::compact(esr.value);
  if (esr.kind == SupportRadius::Kind::Unknown) return DecayClass::unknown();
  const Tail t = tail(*v.root());
  switch (t.kind) {
    case Tail::Kind::Super:
      return DecayClass::rapid();
    case Tail::Kind::Stretched:
      return DecayClass::stretched(t.power / 2.0);
    default:
      return DecayClass::unknown();
  }
}

double sampled_sup_abs(const RadialSymbol& v, double lo, double hi, int samples) {
  double best = 0.0;
  auto probe = [&](double r) {
    if (r < lo || r > hi) return;
    const double x = std::fabs(v(r));
    if (std::isnan(x)) {
      best = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isnan(best)) {
      best = std::max(best, x);
    }
  };
  for (int i = 0; i <= samples; ++i) probe(lo + (hi - lo) * i / samples);
  for (double b : v.breakpoints()) {
    const double eps = 1e-12 * std::max(1.0, b);
    probe(b - eps);
    probe(b);
    probe(b + eps);
  }
  return best;
}

}  // namespace radspec
