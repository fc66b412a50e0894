#pragma once

// Special functions used by the divisor-sum identities. Everything is binary64;
// each `eval*` variant returns a conservative absolute error bound alongside
// the value, and the plain functions return just the value.

namespace vsf::special {

struct EvalResult {
  double value = 0.0;
  double absErrorEstimate = 0.0;
  /// Set when the true value is below the smallest binary64 normal and
  /// `value` was flushed to 0.
  bool underflow = false;
};

/// psi(x) for x > 0.
EvalResult evalDigamma(double x);
double digamma(double x);

/// Re psi(1 + i y), symmetric in y.
EvalResult evalDigammaRe1iy(double y);
double digammaRe1iy(double y);

/// Re psi(1 + i y) - ln|y| for y != 0, without cancellation for large |y|
/// (it behaves like 1/(12 y^2)).
double digammaRe1iyMinusLog(double y);

double besselJ0(double x);

/// Modified Bessel function K0 for x > 0; flushes to 0 (underflow flag) past
/// the binary64 range.
EvalResult evalBesselK0(double x);
double besselK0(double x);
/// e^x K0(x), finite for all x > 0.
double besselK0Scaled(double x);

/// Bessel function of the second kind Y0 for x > 0.
EvalResult evalBesselY0(double x);
double besselY0(double x);

/// e^x E1(x) = -e^x Ei(-x), x > 0.
EvalResult evalE1Scaled(double x);
double e1Scaled(double x);

/// e^{-x} Ei(x), x > 0, Ei taken as a principal value.
EvalResult evalEiScaled(double x);
double eiScaled(double x);

/// Arguments at or above this value use the asymptotic series in eiCombo.
inline constexpr double kEiComboCrossover = 40.0;

/// e^x Ei(-x) + e^{-x} Ei(x) for x > 0. Behaves like 2 gamma + 2 ln x near 0
/// and like 2/x^2 at infinity.
EvalResult evalEiCombo(double x);
double eiCombo(double x);

/// Partial sum sum_{m=0}^{terms-1} 2 (2m+1)! / x^{2m+2} of the large-x
/// expansion of eiCombo.
double eiComboAsymptotic(double x, int terms);

/// Hurwitz zeta sum_{n>=0} (n+a)^{-s} for s > 1, a > 0.
double hurwitzZeta(double s, double a);
/// Riemann zeta for real s > 1.
double zeta(double s);

/// Bernoulli number B_{2k}, 0 <= k <= 15.
double bernoulliEven(int k);

}  // namespace vsf::special
