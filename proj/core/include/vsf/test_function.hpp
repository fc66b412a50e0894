#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vsf::voronoi {

/// c * t^exponent
struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// A compactly supported function of t >= 0, the input of the Voronoi
/// evaluator. Its Laplace transform is the k-domain function of the formula.
struct TestFunction {
  std::string name;
  /// Defined on [0, support]; must vanish beyond it.
  std::function<double(double)> evaluator;
  double support = 1.0;
  /// f vanishes on [0, supportStart).
  double supportStart = 0.0;
  /// |f(t)| ~ B t^beta L(t) as t -> 0, beta > 0.
  double beta = 1.0;
  /// Slowly varying factor L(t) = |ln t|^p; empty means L = 1.
  std::optional<double> logPower;
  /// Exact Laplace transform, when known.
  std::function<double(double)> closedFormTransform;
  /// Asserted by the caller: one-sided limits exist everywhere.
  bool regulated = true;
  /// f(t) equals sum c_i t^{e_i} exactly on [0, expansionRadius]. Drives the
  /// large-s expansion sum c_i Gamma(e_i + 1) s^{-e_i-1} of the transform.
  std::vector<PowerTerm> smallTimeExpansion;
  double expansionRadius = 0.0;

  double operator()(double t) const { return (t < 0.0 || t > support) ? 0.0 : evaluator(t); }
};

/// f1(t) = t (1 - t) on [0, 1]; beta = 1, closed-form transform.
TestFunction polyTestFunction();
/// f2(t) = (1 - (2t - 3)^2)^2 on [1, 2].
TestFunction bumpTestFunction();
/// f3(t) = t^{3/2} (1 - t) on [0, 1]; beta = 3/2.
TestFunction fracTestFunction();
/// f = 0.
TestFunction zeroTestFunction();

/// Looks up "poly", "bump", "frac" or "zero"; throws InputError otherwise.
TestFunction galleryFunction(const std::string& name);

/// a f + b g, with metadata merged so the result is again a valid input.
TestFunction linearCombination(double a, const TestFunction& f, double b, const TestFunction& g);

/// Sampled invariants: vanishing beyond the support and the t^beta (1 + |ln t|^p)
/// envelope near 0. Throws InputError on violation.
void validate(const TestFunction& f);

}  // namespace vsf::voronoi
