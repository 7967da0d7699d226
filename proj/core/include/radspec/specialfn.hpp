#pragma once

#include "radspec/logreal.hpp"

namespace radspec {

inline constexpr double kDefaultBesselRMax = 50.0;

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// J_ν(r) from the factored power series, prefactor (r/2)^ν/Γ(ν+1) kept in log scale.
/// Throws AccuracyLossError when cancellation in the series exceeds the error budget
/// (this happens for ν small compared with r²).
LogReal bessel_j_log(double nu, double r, double r_max = kDefaultBesselRMax);

/// J_ν(r) for any ν ≥ 0, r ≥ 0: series where it is stable, standard double-precision
/// evaluation otherwise.
LogReal bessel_j(double nu, double r);

/// J_ν of a fixed order with cached normalization, for repeated evaluation.
class BesselJ {
 public:
  explicit BesselJ(double nu);
  double order() const noexcept { return nu_; }
  LogReal operator()(double r) const;

 private:
  double nu_;
  double log_gamma_nu1_;
};

/// I_ν(x) by its positive power series.
double bessel_i(double nu, double x);
LogReal bessel_i_log(double nu, double x);

/// ∫_0^R J_ν(r)² r dr. Uses (R²/2)[J_ν(R)² − J_{ν−1}(R) J_{ν+1}(R)] for ν ≥ 1,
/// adaptive quadrature below.
LogReal bessel_l2_ball_log(double nu, double R);
double bessel_l2_ball(double nu, double R);

/// ∫_0^∞ J_ν(r)² r e^{−r²} dr = ½ e^{−1/2} I_ν(½).
LogReal bessel_l2_gaussian_log(double nu);

/// Partial sum of Neumann's expansion of r^{2m} in squares of Bessel functions:
///   r^{2m} = 2^{2m+1} (m!)²/(2m)! Σ_{j≥m} j Γ(m+j)/Γ(j−m+1) J_j(r)²   (m ≥ 1)
///   1      = J_0(r)² + 2 Σ_{j≥1} J_j(r)²                               (m = 0)
/// summed over `terms` consecutive j starting at max(m, 0).
double power_from_bessel(unsigned m, double r, unsigned terms);

}  // namespace radspec
