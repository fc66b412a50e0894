#pragma once

#include "vsf/arith.hpp"

namespace vsf::theta {

/// 1/(e^x - 1) - e^{-x}/x for x > 0; tends to 1/2 at 0 and decays like e^{-x}.
double hReg(double x);

/// Theta(t) = sum d(n) e^{-nt} = sum 1/(e^{nt} - 1). Both series are summed
/// and must agree; the Lambert form is returned. Throws ConsistencyError if
/// they disagree beyond tol (plus rounding).
double thetaDirect(double t, double tol);
/// As above, reusing `table` when it covers the required number of terms.
double thetaDirect(double t, double tol, const arith::DivisorTable& table);

/// Number of terms thetaDirect needs at (t, tol).
std::uint64_t thetaDirectTerms(double t, double tol);

/// -ln t / t + gamma / t + 1/4
double thetaWeyl(double t);

/// -(2/t) sum d(n) eiCombo(4 pi^2 n / t)
double thetaOsc(double t, double tol);

/// thetaWeyl(t) - (2/t) sum [Re psi(1 + 2 pi i n/t) - ln(2 pi n/t)]
double thetaWigert(double t, double tol);

/// Lambert series for t >= 0.01, Wigert form below (where the direct series
/// would need more than ~4000 terms).
double theta(double t, double tol);

struct ThetaDecomposition {
  double t = 0.0;
  double thetaDirect = 0.0;
  double thetaWigert = 0.0;
  double thetaWeyl = 0.0;
  double thetaOsc = 0.0;
  double residualWigert = 0.0;  // |direct - wigert|
  double residualDecomp = 0.0;  // |direct - weyl - osc|
};

ThetaDecomposition decompose(double t, double tol);

}  // namespace vsf::theta
