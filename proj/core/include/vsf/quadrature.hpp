#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "vsf/test_function.hpp"

namespace vsf::quadrature {

enum class Singularity { none, logarithmic };

/// |f(x)| <= amplitude * exp(-rate x) for x >= 1.
struct ExponentialDecay {
  double rate = 1.0;
  double amplitude = 1.0;
};

/// |f(x)| <= amplitude * x^{-power} for x >= 1; power > 1 for integrability.
struct AlgebraicDecay {
  double power = 2.0;
  double amplitude = 1.0;
};

/// f(x) = 0 for x > upper.
struct CompactSupport {
  double upper = 1.0;
};

using DecayHint = std::variant<std::monostate, ExponentialDecay, AlgebraicDecay, CompactSupport>;

struct IntegrandSpec {
  std::function<double(double)> evaluator;
  Singularity singularAtZero = Singularity::none;
  DecayHint decay;
};

struct QuadratureResult {
  double value = 0.0;
  double absErrorEstimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct QuadratureOptions {
  /// Accept when the error estimate is below max(tol, relTol * |value|).
  double relTol = 0.0;
  long maxEvaluations = 100'000;
};

/// Smallest absolute tolerance accepted from callers when relTol is 0.
inline constexpr double kMinAbsTolerance = 1e-13;

/// Globally adaptive bisection on [a, b] with the 7-point Gauss / 15-point
/// Kronrod pair. A logarithmic singularity at a = 0 gets a geometric initial
/// mesh toward 0. On budget exhaustion the best estimate is returned with
/// converged = false.
QuadratureResult integrate(const IntegrandSpec& spec, double a, double b, double tol,
                           const QuadratureOptions& options = {});
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           const QuadratureOptions& options = {});

/// Integral over (0, inf). Exponential decay truncates at a rate-scaled
/// cutoff and adds the remainder bound; algebraic decay maps the tail
/// [1, inf) onto (0, 1] with x = 1/u; compact support reduces to integrate().
QuadratureResult integrateSemiInfinite(const IntegrandSpec& spec, double tol,
                                       const QuadratureOptions& options = {});

/// Integral over (0, inf) of an oscillating integrand whose sign changes sit
/// near firstBreak + k * halfPeriod. The first `directPanels` panels are summed
/// exactly; the alternating partial sums of the following panels are
/// accelerated by iterated averaging. Stops early once three consecutive
/// panels fall below tol/10.
QuadratureResult integrateAlternatingPanels(const IntegrandSpec& spec, double firstBreak, double halfPeriod,
                                            double tol, const QuadratureOptions& options = {});

/// int_0^inf f(x) cos(omega x) dx; omega = 0 falls back to
/// integrateSemiInfinite. Requires exponential or algebraic (power > 1) decay.
QuadratureResult fourierCosine(const IntegrandSpec& spec, double omega, double tol,
                               const QuadratureOptions& options = {});

/// int_0^T e^{-s t} f(t) dt for a compactly supported test function.
QuadratureResult laplaceTransform(const voronoi::TestFunction& f, double s, double tol,
                                  const QuadratureOptions& options = {});

/// Sampled consistency check of the decay hint: |f| must lie below the hint's
/// envelope at x = 2, 4, 8, ... (16 points). Returns false on a violation.
bool decayHintConsistent(const IntegrandSpec& spec);

/// Repeatedly replaces a sequence by the means of neighbouring entries until
/// one value is left. Used on alternating partial sums.
double iteratedAverage(std::vector<double> partialSums);

}  // namespace vsf::quadrature
