#pragma once

#include <string>
#include <utility>
#include <vector>

#include "radspec/ordering.hpp"
#include "radspec/spectra.hpp"
#include "radspec/symbol.hpp"

namespace radspec {

/// n(λ) ≈ coefficient · |log λ|^log_power / (log|log λ|)^loglog_power.
struct AsymptoticLaw {
  double coefficient = 1.0;
  double log_power = 1.0;
  double loglog_power = 0.0;

  double operator()(double lambda) const;
};

/// Leading counting law for the space and symbol class. Bergman kinds need
/// CompactSupport(b); the others accept CompactSupport or RapidDecay.
AsymptoticLaw predicted_law(const SpaceSpec& space, const DecayClass& cls);

struct ComparisonReport {
  std::vector<double> lambdas;
  std::vector<std::uint64_t> computed;
  std::vector<double> predicted;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  /// Ratio at the smallest λ of the grid.
  double final_ratio = 0.0;
};

enum class CountingPart { All, Positive, Negative };

ComparisonReport compare(const SpectrumTable& table, const AsymptoticLaw& law, std::span<const double> lambdas,
                         CountingPart part = CountingPart::All);

struct SlopeFit {
  double a = 0.0;  // coefficient of k log k
  double b = 0.0;  // coefficient of k
};

/// Least squares −log|Λ_k| ≈ a·k log k + b·k (no intercept) over k ∈ [k_lo, k_hi].
SlopeFit log_slope_fit(const SpectrumTable& table, unsigned k_lo, unsigned k_hi);
/// Same fit on raw values, values[i] being Λ_{first_k + i}.
SlopeFit log_slope_fit(std::span<const LogReal> values, unsigned first_k, unsigned k_lo, unsigned k_hi);

struct Assertion {
  std::string name;
  bool passed = false;
  double value = 0.0;
  std::string detail;
};

struct CounterexampleReport {
  double p = 2.0;
  double q = 4.0;
  unsigned k_max = 0;
  double tol = 0.0;
  std::pair<unsigned, unsigned> fit_range;
  std::vector<LogReal> lambda_v;
  std::vector<LogReal> lambda_abs;
  SlopeFit fit_v;
  SlopeFit fit_abs;
  /// max_k |I(k)| / (Γ((k+1)/q)/(2q)).
  double max_bound_ratio = 0.0;
  std::vector<Assertion> assertions;

  bool passed() const;
};

struct CounterexampleOptions {
  double tol = 1e-10;
  /// Fit range; {0,0} means [k_max/3, k_max].
  std::pair<unsigned, unsigned> fit_range{0, 0};
  /// Multiplier on the sin factor (0 gives the trivially zero variant).
  double amplitude = 1.0;
  unsigned threads = 0;
};

/// Symbol e^{-r^{2p}+r²} sin(r^{2q}).
RadialSymbol counterexample_symbol(double p, double q);

/// Spectrum of T_V and T_|V| on the one-dimensional Bargmann space for the
/// symbol above, with slope fits and the rotation bound on every moment.
CounterexampleReport run_counterexample(double p, double q, unsigned k_max, const CounterexampleOptions& options = {});

struct PeripheryReport {
  SpaceSpec space;
  std::string symbol;
  double support_radius = 0.0;
  unsigned k_max = 0;
  /// Largest k with Λ_k < 0, or -1.
  long largest_negative_k = -1;
  std::uint64_t negative_count = 0;
  double lambda = 0.0;
  std::uint64_t n_plus = 0;
  double predicted = 0.0;
  double ratio = 0.0;
  std::vector<Assertion> assertions;

  bool passed() const;
};

struct PeripheryOptions {
  double tol = 1e-12;
  double lambda = 1e-40;
  double ratio_slack = 0.15;
  unsigned threads = 0;
};

/// Negative-spectrum extent and positive-spectrum law for a compactly supported symbol.
/// k_max = 0 grows the table until the tail envelope certifies `lambda`.
PeripheryReport run_periphery(const RadialSymbol& v, const SpaceSpec& space, unsigned k_max,
                              const PeripheryOptions& options = {});

}  // namespace radspec
