#include "radspec/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "radspec/errors.hpp"
#include "radspec/quadrature.hpp"
#include "radspec/specialfn.hpp"

namespace radspec {

namespace {

constexpr std::pair<SpaceKind, const char*> kNames[] = {
    {SpaceKind::BergmanComplex, "BergmanComplex"},     {SpaceKind::BergmanHarmonic, "BergmanHarmonic"},
    {SpaceKind::BergmanHelmholtz, "BergmanHelmholtz"}, {SpaceKind::BargmannComplex, "BargmannComplex"},
    {SpaceKind::BargmannHarmonic, "BargmannHarmonic"}, {SpaceKind::BargmannHelmholtz, "BargmannHelmholtz"},
    {SpaceKind::AgmonHormander, "AgmonHormander"},
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  __extension__ using wide = unsigned __int128;
  wide c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // c = C(n-r+i-1, i-1) here, so the division is exact.
    c = c * (n - r + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) throw DomainError("multiplicity overflows 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

void check_support(const SpaceSpec& space, const RadialSymbol& v) {
  if (!is_bergman(space.kind)) return;
  const SupportRadius esr = exact_support_radius(v);
  if (esr.finite() && esr.value > space.radius() * (1 + 1e-15))
    throw PreconditionError("exact support radius of the symbol exceeds the ball radius");
}

LogReal with_error(const QuadratureResult& q, double& log_err) {
  log_err = q.log_abs_error;
  return q.value;
}

EigenvalueEntry compute(const SpaceSpec& space, const RadialSymbol& v, unsigned k, double tol) {
  EigenvalueEntry e;
  e.k = k;
  e.tol = tol;
  e.multiplicity = multiplicity(space, k);
  const int d = space.d;
  LogReal factor;
  LogReal raw;
  double log_err = -std::numeric_limits<double>::infinity();
  switch (space.kind) {
    case SpaceKind::BergmanComplex:
    case SpaceKind::BergmanHarmonic: {
      const double R = space.radius();
      const double n = space.kind == SpaceKind::BergmanComplex ? 2.0 * k + 2.0 * d : 2.0 * k + d;
      raw = with_error(moment_compact(v, n - 1.0, R, tol), log_err);
      factor = LogReal::exp(std::log(n) - n * std::log(R));
      break;
    }
    case SpaceKind::BergmanHelmholtz: {
      const double nu = bessel_order(space, k);
      raw = with_error(bessel_weighted(v, nu, BesselWeight::ball(space.radius()), tol), log_err);
      factor = LogReal::one() / bessel_l2_ball_log(nu, space.radius());
      break;
    }
    case SpaceKind::BargmannComplex:
    case SpaceKind::BargmannHarmonic: {
      const double n = space.kind == SpaceKind::BargmannComplex ? 2.0 * k + 2.0 * d : 2.0 * k + d;
      raw = with_error(moment_gaussian(v, n - 1.0, tol), log_err);
      factor = LogReal::exp(std::log(2.0) - log_gamma(0.5 * n));
      break;
    }
    case SpaceKind::BargmannHelmholtz: {
      const double nu = bessel_order(space, k);
      raw = with_error(bessel_weighted(v, nu, BesselWeight::gaussian(), tol), log_err);
      factor = LogReal::one() / bessel_l2_gaussian_log(nu);
      break;
    }
    case SpaceKind::AgmonHormander: {
      const double nu = bessel_order(space, k);
      raw = with_error(bessel_weighted(v, nu, BesselWeight::plain(), tol), log_err);
      factor = LogReal(std::numbers::pi);
      break;
    }
  }
  e.value = raw * factor;
  e.log_abs_error = log_err + factor.log_abs();
  return e;
}

template <class Fn>
void parallel_for(unsigned lo, unsigned hi, unsigned threads, Fn fn) {
  if (hi <= lo) return;
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, hi - lo);
  std::atomic<unsigned> next{lo};
  std::exception_ptr failure;
  unsigned failed_k = std::numeric_limits<unsigned>::max();
  std::mutex m;
  auto worker = [&] {
    for (unsigned k; (k = next.fetch_add(1)) < hi;) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(m);
        // Report the smallest failing k so failures are deterministic.
        if (k < failed_k) {
          failed_k = k;
          failure = std::current_exception();
        }
      }
    }
  };
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

EigenvalueEntry compute_named(const SpaceSpec& space, const RadialSymbol& v, unsigned k, double tol) {
  try {
    return compute(space, v, k, tol);
  } catch (const QuadratureError& e) {
    throw QuadratureError("k=" + std::to_string(k) + ": " + e.what(), e.best_log_abs(), e.log_abs_error());
  } catch (const AccuracyLossError& e) {
    throw AccuracyLossError("k=" + std::to_string(k) + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError("k=" + std::to_string(k) + ": " + e.what());
  }
}

void refresh_tail(SpectrumTable& t, const RadialSymbol& v) {
  const RadialSymbol abs_v = decompose_signs(v).abs;
  t.tail_bound = compute_named(t.space, abs_v, t.k_max, t.tol).value;
}

}  // namespace

std::string to_string(SpaceKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "Unknown";
}

SpaceKind parse_space_kind(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string want = lower(name);
  for (const auto& [k, n] : kNames)
    if (lower(n) == want) return k;
  throw DomainError("unknown space kind '" + std::string(name) + "'");
}

bool is_bergman(SpaceKind kind) noexcept {
  return kind == SpaceKind::BergmanComplex || kind == SpaceKind::BergmanHarmonic ||
         kind == SpaceKind::BergmanHelmholtz;
}

bool is_complex(SpaceKind kind) noexcept {
  return kind == SpaceKind::BergmanComplex || kind == SpaceKind::BargmannComplex;
}

void SpaceSpec::validate() const {
  if (d < 1) throw DomainError("dimension must be positive");
  if (!is_complex(kind) && d < 2) throw DomainError(to_string(kind) + " requires d >= 2");
  if (is_bergman(kind)) {
    if (!R || !(*R > 0) || !std::isfinite(*R)) throw DomainError(to_string(kind) + " requires a positive radius R");
    if (kind == SpaceKind::BergmanHelmholtz && *R > kDefaultBesselRMax)
      throw DomainError("BergmanHelmholtz requires R <= " + std::to_string(kDefaultBesselRMax));
  } else if (R) {
    throw DomainError(to_string(kind) + " takes no radius");
  }
}

double SpaceSpec::radius() const {
  if (!R) throw DomainError(to_string(kind) + " has no radius");
  return *R;
}

SpaceSpec SpaceSpec::bergman(SpaceKind kind, int d, double R) {
  SpaceSpec s{kind, d, R};
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::whole_space(SpaceKind kind, int d) {
  SpaceSpec s{kind, d, std::nullopt};
  s.validate();
  return s;
}

std::uint64_t multiplicity(const SpaceSpec& space, unsigned k) {
  const std::uint64_t d = static_cast<std::uint64_t>(space.d);
  const std::uint64_t all = binomial(k + d - 1, d - 1);
  if (is_complex(space.kind)) return all;
  return k < 2 ? all : all - binomial(k + d - 3, d - 1);
}

EigenvalueEntry eigenvalue(const SpaceSpec& space, const RadialSymbol& v, unsigned k, double tol) {
  space.validate();
  check_tolerance(tol);
  check_support(space, v);
  return compute(space, v, k, tol);
}

SpectrumTable spectrum(const SpaceSpec& space, const RadialSymbol& v, unsigned k_max, double tol,
                       const SpectrumOptions& options) {
  space.validate();
  check_tolerance(tol);
  check_support(space, v);
  SpectrumTable t;
  t.space = space;
  t.symbol_text = v.text();
  t.tol = tol;
  t.k_max = k_max;
  t.entries.resize(static_cast<std::size_t>(k_max) + 1);
  parallel_for(0, k_max + 1, options.threads, [&](unsigned k) { t.entries[k] = compute_named(space, v, k, tol); });
  if (options.tail_bound) refresh_tail(t, v);
  return t;
}

void extend_spectrum(SpectrumTable& t, const RadialSymbol& v, unsigned new_k_max, const SpectrumOptions& options) {
  if (new_k_max <= t.k_max && !t.entries.empty()) return;
  const unsigned first = static_cast<unsigned>(t.entries.size());
  t.entries.resize(static_cast<std::size_t>(new_k_max) + 1);
  parallel_for(first, new_k_max + 1, options.threads,
               [&](unsigned k) { t.entries[k] = compute_named(t.space, v, k, t.tol); });
  t.k_max = new_k_max;
  if (options.tail_bound) refresh_tail(t, v);
}

SpectrumTable spectrum_until(const SpaceSpec& space, const RadialSymbol& v, double lambda, double tol,
                             unsigned k_start, unsigned k_cap, const SpectrumOptions& options) {
  if (!(lambda > 0)) throw DomainError("spectrum_until: lambda must be positive");
  SpectrumOptions opt = options;
  opt.tail_bound = true;
  unsigned k = std::max(1u, std::min(k_start, k_cap));
  SpectrumTable t = spectrum(space, v, k, tol, opt);
  while (!(*t.tail_bound < LogReal(lambda))) {
    if (k >= k_cap)
      throw InsufficientKmaxError("tail envelope still above lambda at k_max=" + std::to_string(k), -1);
    k = std::min(2 * k, k_cap);
    extend_spectrum(t, v, k, opt);
  }
  return t;
}

}  // namespace radspec
