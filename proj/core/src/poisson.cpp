#include "vsf/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/special.hpp"
#include "vsf/theta.hpp"

namespace vsf::poisson {

namespace {

constexpr long kMaxLhsTerms = 10'000'000;

void requireArgs(double alpha, double tol) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be positive and finite");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
}

quadrature::IntegrandSpec integrandOf(const SummandSpec& spec) {
  return {spec.h, spec.singularAtZero, spec.decay};
}

// Neville extrapolation of the table (h_i, v_i) to h = 0; returns the
// diagonal so the last two entries give an error estimate.
std::vector<double> nevilleDiagonal(const std::vector<double>& h, const std::vector<double>& v) {
  std::vector<double> row = v;
  std::vector<double> diagonal{v.front()};
  const std::size_t n = v.size();
  std::vector<std::vector<double>> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i].push_back(v[i]);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = k; i < n; ++i) {
      const double a = table[i][k - 1], b = table[i - 1][k - 1];
      table[i].push_back(a + (a - b) * h[i] / (h[i - k] - h[i]));
    }
  }
  diagonal.clear();
  for (std::size_t i = 0; i < n; ++i) diagonal.push_back(table[i][i]);
  return diagonal;
}

}  // namespace

SummandSpec zeroSummand() {
  return {"zero", [](double) { return 0.0; }, 0.0, 0.0, quadrature::ExponentialDecay{1.0, 1.0},
          quadrature::Singularity::none};
}

SummandSpec hRegSummand() {
  // |hReg(x)| <= 0.59 e^{-x} for x >= 1
  return {"hreg", [](double x) { return theta::hReg(x); }, 0.0, 0.5, quadrature::ExponentialDecay{1.0, 1.0},
          quadrature::Singularity::none};
}

SummandSpec eiComboSummand() {
  // x^2 |eiCombo(x)| peaks at 2.51 near x = 4.8 on [1, inf)
  return {"eicombo", [](double x) { return special::eiCombo(x); }, 2.0, 2.0 * kEulerGamma,
          quadrature::AlgebraicDecay{2.0, 3.0}, quadrature::Singularity::logarithmic};
}

SummandSpec summandByName(const std::string& name) {
  if (name == "zero") return zeroSummand();
  if (name == "hreg") return hRegSummand();
  if (name == "eicombo") return eiComboSummand();
  throw InputError("unknown summand '" + name + "' (expected hreg, eicombo or zero)");
}

void validate(const SummandSpec& spec) {
  if (!spec.h) throw InputError("summand '" + spec.name + "' has no function");
  double previous = std::numeric_limits<double>::infinity();
  for (double x : {1e-3, 1e-4, 1e-5}) {
    const double deviation = std::abs(spec.h(x) - spec.b * std::log(x) - spec.hZeroPlus);
    if (!(deviation <= previous)) {
      throw InputError("summand '" + spec.name + "': h - b ln x does not approach H(0+)");
    }
    previous = deviation;
  }
  previous = std::numeric_limits<double>::infinity();
  for (double x : {1e2, 1e3, 1e4}) {
    const double v = std::abs(spec.h(x));
    if (!(v <= previous)) throw InputError("summand '" + spec.name + "' does not decay at infinity");
    previous = v;
  }
  if (previous > 1e-6) throw InputError("summand '" + spec.name + "' does not decay at infinity");
  if (!quadrature::decayHintConsistent(integrandOf(spec))) {
    throw InputError("summand '" + spec.name + "' violates its decay hint");
  }
}

SideEvaluation lhsEvaluate(const SummandSpec& spec, double alpha, double tol) {
  requireArgs(alpha, tol);
  SideEvaluation out;
  if (const auto* e = std::get_if<quadrature::ExponentialDecay>(&spec.decay)) {
    // Terms with alpha n >= 1 obey |h| <= A e^{-r alpha n}.
    const double q = std::exp(-e->rate * alpha);
    std::vector<double> terms;
    for (long n = 1;; ++n) {
      const double x = alpha * static_cast<double>(n);
      terms.push_back(spec.h(x));
      if (x >= 1.0) {
        const double bound = e->amplitude * std::pow(q, static_cast<double>(n + 1)) / (1.0 - q);
        if (bound < 0.5 * tol) {
          out.errorEstimate = bound;
          break;
        }
      }
      if (n >= kMaxLhsTerms) throw NonConvergenceError("left side of the Poisson formula needs too many terms");
    }
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) out.value += *it;
    out.terms = static_cast<long>(terms.size());
    return out;
  }
  if (const auto* p = std::get_if<quadrature::AlgebraicDecay>(&spec.decay)) {
    // Explicit terms to N, then the midpoint Euler-Maclaurin tail
    //   sum_{n>N} h(alpha n) = (1/alpha) int_{alpha(N+1/2)}^inf h + (alpha/24) h'(alpha(N+1/2)) + ...
    // with N chosen so the next correction, about (7/5760) alpha^3 |h'''|, is negligible.
    const double A = p->amplitude, s = p->power;
    long N = std::max<long>(16, static_cast<long>(std::ceil(1.0 / alpha)));
    auto nextCorrection = [&](long n) {
      const double x = alpha * (static_cast<double>(n) + 0.5);
      return 7.0 / 5760.0 * alpha * alpha * alpha * A * s * (s + 1.0) * (s + 2.0) / std::pow(x, s + 3.0);
    };
    while (nextCorrection(N) > 0.1 * tol) {
      N = N + N / 2;
      if (N > kMaxLhsTerms) throw NonConvergenceError("left side of the Poisson formula needs too many terms");
    }
    double sum = 0.0;
    for (long n = N; n >= 1; --n) sum += spec.h(alpha * static_cast<double>(n));
    const double X = alpha * (static_cast<double>(N) + 0.5);
    const auto& h = spec.h;
    // int_X^inf h(x) dx = int_0^1 h(X/u) X/u^2 du
    quadrature::IntegrandSpec mapped{[&h, X](double u) { return h(X / u) * X / (u * u); },
                                     quadrature::Singularity::logarithmic, {}};
    const double tailTol = std::max(quadrature::kMinAbsTolerance, 0.25 * tol * alpha);
    const auto tail = quadrature::integrate(mapped, 0.0, 1.0, tailTol);
    const double delta = 1e-3 * X;
    const double derivative = (h(X + delta) - h(X - delta)) / (2.0 * delta);
    out.value = sum + tail.value / alpha + alpha / 24.0 * derivative;
    out.errorEstimate = tail.absErrorEstimate / alpha + nextCorrection(N) +
                        alpha / 24.0 * std::abs(derivative) * 1e-5;
    out.terms = N;
    return out;
  }
  if (const auto* c = std::get_if<quadrature::CompactSupport>(&spec.decay)) {
    for (long n = static_cast<long>(std::floor(c->upper / alpha)); n >= 1; --n) {
      out.value += spec.h(alpha * static_cast<double>(n));
      ++out.terms;
    }
    return out;
  }
  throw InputError("summand '" + spec.name + "' needs a decay hint");
}

double lhsSum(const SummandSpec& spec, double alpha, double tol) { return lhsEvaluate(spec, alpha, tol).value; }

SideEvaluation rhsEvaluate(const SummandSpec& spec, double alpha, double tol, long nMax) {
  requireArgs(alpha, tol);
  if (nMax < 8) throw InputError("nMax must be at least 8");
  const auto integrand = integrandOf(spec);
  SideEvaluation out;
  const double floorTol = quadrature::kMinAbsTolerance;

  const auto whole = quadrature::integrateSemiInfinite(integrand, std::max(floorTol, 0.1 * tol * alpha));
  const double constant = 0.5 * spec.b * std::log(kTwoPi) - 0.5 * spec.b * std::log(alpha) - 0.5 * spec.hZeroPlus +
                          whole.value / alpha;
  double quadError = whole.absErrorEstimate / alpha;

  // bracket terms, computed once each and summed in ascending n
  std::vector<double> h, partial;
  double running = 0.0;
  long n = 0;
  std::vector<double> diagonal;
  for (long N = 8; N <= nMax; N *= 2) {
    const double termTol = std::max(floorTol, tol * alpha / (4.0 * static_cast<double>(nMax)));
    for (; n < N; ) {
      ++n;
      const double omega = kTwoPi * static_cast<double>(n) / alpha;
      const auto f = quadrature::fourierCosine(integrand, omega, termTol);
      quadError += 2.0 * f.absErrorEstimate / alpha;
      running += 2.0 * (f.value / alpha + spec.b / (4.0 * static_cast<double>(n)));
    }
    h.push_back(1.0 / static_cast<double>(N));
    partial.push_back(running);
    out.terms = N;
    // Only the latest points enter: the 1/N expansion of the tail holds once
    // N is past the scale of the summand's transform, which early points are not.
    constexpr std::size_t kWindow = 8;
    const std::size_t first = h.size() > kWindow ? h.size() - kWindow : 0;
    diagonal = nevilleDiagonal({h.begin() + static_cast<long>(first), h.end()},
                               {partial.begin() + static_cast<long>(first), partial.end()});
    if (diagonal.size() >= 3) {
      const double last = diagonal.back();
      const double gap = std::abs(last - diagonal[diagonal.size() - 2]);
      if (gap < 0.5 * tol) {
        out.value = constant + last;
        out.errorEstimate = gap + quadError;
        return out;
      }
    }
  }
  throw NonConvergenceError("right side of the Poisson formula for '" + spec.name + "' at alpha=" +
                            std::to_string(alpha) + " did not settle within nMax=" + std::to_string(nMax) + " terms");
}

double rhsSum(const SummandSpec& spec, double alpha, double tol, long nMax) {
  return rhsEvaluate(spec, alpha, tol, nMax).value;
}

double residual(const SummandSpec& spec, double alpha, double tol) {
  return std::abs(lhsSum(spec, alpha, tol) - rhsSum(spec, alpha, tol));
}

}  // namespace vsf::poisson
