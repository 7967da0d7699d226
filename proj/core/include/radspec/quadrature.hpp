#pragma once

#include "radspec/integrator.hpp"
#include "radspec/symbol.hpp"

namespace radspec {

/// Throws DomainError unless tol lies in (1e-14, 1e-2).
void check_tolerance(double tol);

/// ∫_0^R V(r) r^s dr.
QuadratureResult moment_compact(const RadialSymbol& v, double s, double R, double tol);

/// ∫_0^∞ V(r) r^s e^{-r²} dr.
QuadratureResult moment_gaussian(const RadialSymbol& v, double s, double tol);

struct BesselWeight {
  enum class Kind { Ball, Gaussian, Plain };
  Kind kind = Kind::Ball;
  double R = 1.0;

  static BesselWeight ball(double R) { return {Kind::Ball, R}; }
  static BesselWeight gaussian() { return {Kind::Gaussian, 0.0}; }
  static BesselWeight plain() { return {Kind::Plain, 0.0}; }
};

/// ∫ V(r) J_ν(r)² r w(r) dr with w = 1 on [0,R] (ball), e^{-r²} on [0,∞) (gaussian)
/// or 1 on the support of V (plain; V must be compactly supported or certified to decay).
QuadratureResult bessel_weighted(const RadialSymbol& v, double nu, BesselWeight weight, double tol);

enum class OscillatoryMethod {
  Auto,           // zero intervals when rounding allows, rotated contour otherwise
  ZeroIntervals,  // real line, summed between consecutive zeros of sin t
  RotatedContour  // path rotated onto the imaginary axis
};

/// I(k) = ∫_0^∞ e^{-r^{2p}+r²} · amplitude·sin(r^{2q}) · e^{-r²} r^{2k+1} dr
///      = (1/(2q)) ∫_0^∞ t^{(k+1)/q-1} e^{-t^{p/q}} amplitude·sin t dt.
QuadratureResult oscillatory_moment(double p, double q, unsigned k, double tol,
                                    OscillatoryMethod method = OscillatoryMethod::Auto, double amplitude = 1.0);

}  // namespace radspec
