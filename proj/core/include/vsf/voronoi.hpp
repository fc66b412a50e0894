#pragma once

#include <string>

#include "vsf/test_function.hpp"

namespace vsf::voronoi {

/// Laplace transform f~(s): the closed form when present, otherwise
/// quadrature. When both exist they are compared and a mismatch beyond tol
/// throws ConsistencyError.
double transform(const TestFunction& f, double s, double tol);

struct TruncatedSum {
  double value = 0.0;
  /// Terms evaluated explicitly; the remainder comes from the tail expansion.
  long truncationN = 0;
};

/// sum_n d(n) f~(n): explicit terms up to N plus the tail from the large-s
/// expansion of f~ against sum_{n>N} d(n) n^{-s}. InputError for beta <= 0.
TruncatedSum lhsDivisorSum(const TestFunction& f, double tol);

/// int_0^T Theta(t) f(t) dt, the same quantity through the Lambert series.
double lhsViaTheta(const TestFunction& f, double tol);

/// int_0^inf (ln k + 2 gamma) f~(k) dk + f~(0)/4
double weylTerm(const TestFunction& f, double tol);

/// -int (ln t / t) f + gamma int f/t + (1/4) int f, the t-domain form of weylTerm.
double weylTermTimeDomain(const TestFunction& f, double tol);

/// (2/pi) K0(4 pi sqrt(nk)) - Y0(4 pi sqrt(nk))
double besselKernel(long n, double k);

/// pi Y0 - 2 K0 = kEiKernelFactor * besselKernel.
inline constexpr double kEiKernelFactor = -3.14159265358979323846;

/// int_0^inf besselKernel(n, k) f~(k) dk.
double besselKernelIntegral(long n, const TestFunction& f, double tol);

/// Large-n expansion of besselKernelIntegral from the moments of f:
/// -sum_{j odd} mu_j j! 2^{2j+3} / (pi (16 pi^2 n)^{j+1}).
double besselKernelIntegralAsymptotic(long n, const TestFunction& f, double tol);

/// 2 pi sum_n d(n) besselKernelIntegral(n): explicit terms until three
/// consecutive ones fall below tol/10, then the moment expansion for the rest.
TruncatedSum oscTerm(const TestFunction& f, double tol);

/// int_0^T f(t) thetaOsc(t) dt
double oscTermViaEi(const TestFunction& f, double tol);

/// |int eiCombo(4 pi^2 n/t) f(t)/t dt - int [pi Y0 - 2 K0](4 pi sqrt(nk)) f~(k) dk|
double kernelIdentityCheck(long n, const TestFunction& f, double tol);

struct VoronoiReport {
  std::string testFunction;
  double lhs = 0.0;
  double lhsViaTheta = 0.0;
  double weylTerm = 0.0;
  double oscTerm = 0.0;
  double oscTermViaEi = 0.0;
  double residual = 0.0;       // |lhs - weylTerm - oscTerm|
  double crossRouteGap = 0.0;  // |oscTerm - oscTermViaEi|
  double lhsRouteGap = 0.0;    // |lhs - lhsViaTheta|
  long truncationN = 0;        // explicit terms of the divisor sum
  long oscTruncationN = 0;     // explicit terms of the Bessel sum
  double tolerance = 0.0;
  bool failed = false;
  std::string failure;
};

/// Evaluates every route; a route that throws marks the report failed
/// instead of propagating.
VoronoiReport evaluate(const TestFunction& f, double tol);

}  // namespace vsf::voronoi
