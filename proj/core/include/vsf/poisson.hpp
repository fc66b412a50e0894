#pragma once

#include <functional>
#include <string>

#include "vsf/quadrature.hpp"

namespace vsf::poisson {

/// Summand h of the Dixon-Ferrar formula, with h(x) - b ln x of bounded
/// variation near 0. Bounded variation and the h' integrability conditions are
/// the caller's responsibility; only the limits are sampled by validate().
struct SummandSpec {
  std::string name;
  std::function<double(double)> h;
  double b = 0.0;
  /// lim_{x->0+} (h(x) - b ln x)
  double hZeroPlus = 0.0;
  quadrature::DecayHint decay;
  quadrature::Singularity singularAtZero = quadrature::Singularity::none;
};

SummandSpec zeroSummand();
/// Regularized Lambert summand theta::hReg; b = 0, H(0+) = 1/2.
SummandSpec hRegSummand();
/// special::eiCombo; b = 2, H(0+) = 2 gamma.
SummandSpec eiComboSummand();
/// "zero", "hreg" or "eicombo"; InputError otherwise.
SummandSpec summandByName(const std::string& name);

/// Checks h - b ln x -> H(0+) with shrinking deviation at x = 1e-3, 1e-4,
/// 1e-5 and h -> 0 at large x. Throws InputError on violation.
void validate(const SummandSpec& spec);

struct SideEvaluation {
  double value = 0.0;
  double errorEstimate = 0.0;
  /// Terms summed explicitly before the tail estimate.
  long terms = 0;
};

/// sum_{n>=1} h(alpha n).
SideEvaluation lhsEvaluate(const SummandSpec& spec, double alpha, double tol);
double lhsSum(const SummandSpec& spec, double alpha, double tol);

/// Right-hand side of the Dixon-Ferrar formula:
///   b/2 ln(2 pi) - b/2 ln alpha - H(0+)/2 + (1/alpha) int h
///   + 2 sum_n [(1/alpha) int h(x) cos(2 pi n x / alpha) dx + b/(4n)].
/// The n-series is summed to N = 8, 16, 32, ... <= nMax and its limit taken
/// by Richardson extrapolation in 1/N.
SideEvaluation rhsEvaluate(const SummandSpec& spec, double alpha, double tol, long nMax = 16384);
double rhsSum(const SummandSpec& spec, double alpha, double tol, long nMax = 16384);

/// |lhsSum - rhsSum|
double residual(const SummandSpec& spec, double alpha, double tol);

}  // namespace vsf::poisson
