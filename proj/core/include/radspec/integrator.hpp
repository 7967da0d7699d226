#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "radspec/logreal.hpp"

namespace radspec {

/// Outcome of a single weighted integral.
struct QuadratureResult {
  LogReal value;
  /// Natural log of the absolute error estimate (-inf for an exact zero).
  double log_abs_error = -std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  /// False when the adaptive loop ran out of budget above both the requested
  /// tolerance and the floating-point cancellation floor.
  bool converged = true;

  /// Estimated |error| / |value|; +inf for a zero value with nonzero error.
  double relative_error() const noexcept;
};

/// Integrand returning its value in log scale.
using LogIntegrand = std::function<LogReal(double)>;
/// Returns interior points of (lo, hi) where the integrand has a kink.
using KinkFinder = std::function<std::vector<double>(double, double)>;

struct IntegrationOptions {
  double rel_tol = 1e-12;
  /// Cells whose sampled log-integrand lies more than this below the peak are dropped.
  double window_depth = 80.0;
  int samples_per_piece = 512;
  std::size_t max_segments = 4'000'000;
  /// Optional bound, in log scale, on the integral of |f| beyond the upper limit.
  std::function<double(double)> log_tail_mass;
};

/// Adaptive Gauss-Kronrod (21 point) integration of a log-scale integrand over [lo, hi].
///
/// The integrand is sampled on each piece between consecutive `breakpoints`
/// to locate its peak M; the integration then runs on exp(log f - M) over the
/// cells within `window_depth` of the peak, split at `kinks`. Breakpoints are
/// never straddled. Convergence is declared when the summed error estimate
/// drops below max(rel_tol * |I|, 64 eps * integral of |f|); the second term is the
/// rounding floor for integrals with internal cancellation.
QuadratureResult integrate_log(const LogIntegrand& f, double lo, double hi, std::span<const double> breakpoints,
                               const KinkFinder& kinks, const IntegrationOptions& options);

inline QuadratureResult integrate_log(const LogIntegrand& f, double lo, double hi,
                                      const IntegrationOptions& options) {
  return integrate_log(f, lo, hi, {}, {}, options);
}

}  // namespace radspec
