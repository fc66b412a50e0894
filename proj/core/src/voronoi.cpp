#include "vsf/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>
#include <vector>

#include "vsf/arith.hpp"
#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/quadrature.hpp"
#include "vsf/special.hpp"
#include "vsf/theta.hpp"

namespace vsf::voronoi {

namespace {

using quadrature::IntegrandSpec;
using quadrature::QuadratureOptions;
using quadrature::Singularity;

// Beyond s R = 45 the small-time expansion reproduces f~ up to e^{-45}.
constexpr double kExpansionOnset = 45.0;
constexpr long kMaxDivisorTerms = 2'000'000;
constexpr long kMaxBesselTerms = 20'000;
constexpr int kMaxPanels = 20'000;

bool hasExpansion(const TestFunction& f) { return f.expansionRadius > 0.0; }

double expansionTransform(const TestFunction& f, double s) {
  double sum = 0.0;
  for (const auto& term : f.smallTimeExpansion) {
    sum += term.coefficient * std::tgamma(term.exponent + 1.0) * std::pow(s, -term.exponent - 1.0);
  }
  return sum;
}

double checked(const quadrature::QuadratureResult& r, const char* what) {
  if (!r.converged) {
    std::ostringstream msg;
    msg << what << ": quadrature did not converge (error estimate " << r.absErrorEstimate << ")";
    throw NonConvergenceError(msg.str());
  }
  return r.value;
}

double absTol(double tol) { return std::max(tol, quadrature::kMinAbsTolerance); }

// int t^j f(t) dt
double moment(const TestFunction& f, int j, double tol) {
  IntegrandSpec spec{[&f, j](double t) { return std::pow(t, j) * f(t); }, Singularity::none, {}};
  return checked(quadrature::integrate(spec, std::max(0.0, f.supportStart), f.support, absTol(tol)), "moment");
}

// Sum over odd j of -4 j! mu_j / (4 pi^2)^{j+1} * weight(j + 1), stopped at
// the smallest term of the asymptotic series in 4 pi^2 n / T.
double momentSeries(const TestFunction& f, double nMin, double tol, const std::function<double(double)>& weight) {
  const double x = kFourPiSquared * nMin / f.support;
  double sum = 0.0;
  double previous = INFINITY;
  for (int j = 1; j < 200; j += 2) {
    const double mu = moment(f, j, 1e-3 * tol);
    const double coefficient = -4.0 * std::exp(std::lgamma(j + 1.0) - (j + 1.0) * std::log(kFourPiSquared));
    const double term = coefficient * mu * weight(j + 1.0);
    // envelope of the j-th term relative to the series variable
    const double size = std::exp(std::lgamma(j + 1.0) - (j + 1.0) * std::log(x));
    if (size > previous) break;
    sum += term;
    previous = size;
    if (std::abs(term) < 1e-3 * tol && size < 1e-3 * tol) break;
  }
  return sum;
}

double divisorCount(const arith::DivisorTable& table, long n) { return static_cast<double>(table[n]); }

}  // namespace

double transform(const TestFunction& f, double s, double tol) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("transform needs s >= 0");
  if (!f.evaluator) throw InputError("test function has no evaluator");
  QuadratureOptions options;
  options.relTol = 1e-13;
  const bool useExpansion = hasExpansion(f) && s * f.expansionRadius >= kExpansionOnset;
  if (!f.closedFormTransform) {
    if (useExpansion) return expansionTransform(f, s);
    return checked(quadrature::laplaceTransform(f, s, tol, options), "transform");
  }
  const double closed = f.closedFormTransform(s);
  if (useExpansion) return closed;
  const double numeric = checked(quadrature::laplaceTransform(f, s, tol, options), "transform");
  if (std::abs(closed - numeric) > std::max(tol, 1e-12 * std::abs(closed))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "closed-form transform of " << f.name << " disagrees with quadrature at s = " << s << ": " << closed
        << " vs " << numeric;
    throw ConsistencyError(msg.str());
  }
  return closed;
}

TruncatedSum lhsDivisorSum(const TestFunction& f, double tol) {
  if (!(f.beta > 0.0)) throw InputError("beta must be positive");
  TruncatedSum out;
  double tail = 0.0;
  long N = 0;
  if (hasExpansion(f)) {
    N = static_cast<long>(std::ceil(kExpansionOnset / f.expansionRadius));
    for (const auto& term : f.smallTimeExpansion) {
      tail += term.coefficient * std::tgamma(term.exponent + 1.0) * arith::divisorDirichletTail(term.exponent + 1.0, N);
    }
  } else {
    // f~(s) ~ C s^{-beta-1}: the tail is C times a divisor Dirichlet tail,
    // with C measured at N and 2N and the drift between them as uncertainty
    const double p = f.beta + 1.0;
    auto scaled = [&](double s) { return std::pow(s, p) * transform(f, s, 1e-15); };
    N = 64;
    while (true) {
      const double dirichlet = arith::divisorDirichletTail(p, static_cast<std::uint64_t>(N));
      const double c = scaled(2.0 * N);
      tail = c * dirichlet;
      if (std::abs(c - scaled(double(N))) * dirichlet < 0.1 * tol) break;
      N *= 2;
      if (N > kMaxDivisorTerms) throw NonConvergenceError("divisor sum needs more than 2e6 terms");
    }
  }
  const auto table = arith::divisorSieve(static_cast<std::uint64_t>(N));
  double sum = 0.0;
  for (long n = N; n >= 1; --n) sum += divisorCount(table, n) * transform(f, double(n), 1e-3 * tol);
  out.value = sum + tail;
  out.truncationN = N;
  return out;
}

double lhsViaTheta(const TestFunction& f, double tol) {
  const double start = std::max(0.0, f.supportStart);
  const double thetaTol = std::max(1e-13, 1e-3 * tol);
  IntegrandSpec spec{[&f, thetaTol](double t) { return t > 0.0 ? theta::theta(t, thetaTol) * f(t) : 0.0; },
                     start == 0.0 ? Singularity::logarithmic : Singularity::none,
                     {}};
  return checked(quadrature::integrate(spec, start, f.support, absTol(0.1 * tol)), "lhsViaTheta");
}

double weylTerm(const TestFunction& f, double tol) {
  const double transformTol = 1e-3 * tol;
  auto integrand = [&f, transformTol](double k) {
    return k > 0.0 ? (std::log(k) + 2.0 * kEulerGamma) * transform(f, k, transformTol) : 0.0;
  };
  IntegrandSpec spec{integrand, Singularity::logarithmic, {}};
  const double start = std::max(0.0, f.supportStart);
  auto sampledAmplitude = [&](auto envelope) {
    double A = 0.0;
    for (int j = 0; j <= 16; ++j) {
      const double k = std::ldexp(1.0, j);
      A = std::max(A, std::abs(integrand(k)) / envelope(k));
    }
    return 2.0 * A + 1e-300;
  };
  if (start > 0.0) {
    const double rate = 0.9 * start;
    spec.decay = quadrature::ExponentialDecay{rate, sampledAmplitude([rate](double k) { return std::exp(-rate * k); })};
  } else {
    // k^{-beta-1} ln k, bounded by a slightly weaker power
    const double p = f.beta > 0.5 ? f.beta + 0.5 : 1.0 + 0.5 * f.beta;
    spec.decay = quadrature::AlgebraicDecay{p, sampledAmplitude([p](double k) { return std::pow(k, -p); })};
  }
  const double integral = checked(quadrature::integrateSemiInfinite(spec, absTol(0.5 * tol)), "weylTerm");
  return integral + 0.25 * transform(f, 0.0, transformTol);
}

double weylTermTimeDomain(const TestFunction& f, double tol) {
  const double start = std::max(0.0, f.supportStart);
  IntegrandSpec spec{[&f](double t) { return t > 0.0 ? f(t) * ((kEulerGamma - std::log(t)) / t + 0.25) : 0.0; },
                     start == 0.0 ? Singularity::logarithmic : Singularity::none,
                     {}};
  return checked(quadrature::integrate(spec, start, f.support, absTol(tol)), "weylTermTimeDomain");
}

double besselKernel(long n, double k) {
  if (n < 1) throw InputError("besselKernel needs n >= 1");
  if (!(k > 0.0)) throw InputError("besselKernel needs k > 0");
  const double z = 4.0 * kPi * std::sqrt(double(n) * k);
  return (2.0 / kPi) * special::besselK0(z) - special::besselY0(z);
}

double besselKernelIntegral(long n, const TestFunction& f, double tol) {
  if (n < 1) throw InputError("besselKernelIntegral needs n >= 1");
  const double panelTol = absTol(0.02 * tol);
  const double transformTol = std::max(1e-15, 1e-3 * tol);
  // k = u^2 turns the Y0 phase 4 pi sqrt(n) u into a fixed period in u
  auto integrand = [&f, n, transformTol](double u) {
    if (!(u > 0.0)) return 0.0;
    const double k = u * u;
    return 2.0 * u * besselKernel(n, k) * transform(f, k, transformTol);
  };
  const double halfPeriod = 1.0 / (4.0 * std::sqrt(double(n)));
  const double firstBreak = 0.25 * halfPeriod;
  QuadratureOptions options;
  options.maxEvaluations = 20'000;

  auto panel = [&](double a, double b, Singularity s) {
    return checked(quadrature::integrate(IntegrandSpec{integrand, s, {}}, a, b, panelTol, options), "Bessel panel");
  };
  // partial sums at panel ends; the alternating tail is summed by iterated
  // averaging over the last kWindow of them
  constexpr std::size_t kWindow = 20;
  std::vector<double> partial;
  double sum = panel(0.0, firstBreak, Singularity::logarithmic);
  double previous = INFINITY;
  int settled = 0;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double a = firstBreak + k * halfPeriod;
    sum += panel(a, a + halfPeriod, Singularity::none);
    partial.push_back(sum);
    if (partial.size() < 2 * kWindow) continue;
    const double estimate =
        quadrature::iteratedAverage(std::vector<double>(partial.end() - kWindow, partial.end()));
    settled = std::abs(estimate - previous) < 0.1 * tol ? settled + 1 : 0;
    previous = estimate;
    if (settled >= 3) return estimate;
  }
  throw NonConvergenceError("Bessel kernel integral did not settle");
}

double besselKernelIntegralAsymptotic(long n, const TestFunction& f, double tol) {
  if (n < 1) throw InputError("besselKernelIntegralAsymptotic needs n >= 1");
  // momentSeries carries the 2 pi of the Voronoi sum
  const double nn = double(n);
  return momentSeries(f, nn, tol, [nn](double p) { return std::pow(nn, -p); }) / kTwoPi;
}

TruncatedSum oscTerm(const TestFunction& f, double tol) {
  TruncatedSum out;
  const auto table = arith::divisorSieve(kMaxBesselTerms);
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  double sum = 0.0;
  int small = 0;
  long n = 1;
  while (true) {
    if (n > kMaxBesselTerms) throw NonConvergenceError("Bessel series terms do not decay");
    std::vector<std::future<double>> batch;
    for (unsigned w = 0; w < workers && n + long(w) <= kMaxBesselTerms; ++w) {
      const long m = n + long(w);
      const double d = divisorCount(table, m);
      const double termTol = 0.01 * tol / (kTwoPi * d);
      batch.push_back(std::async(std::launch::async, [&f, m, d, termTol] {
        return kTwoPi * d * besselKernelIntegral(m, f, termTol);
      }));
    }
    // fixed ascending order regardless of completion order
    for (auto& future : batch) {
      const double term = future.get();
      if (small >= 3) continue;
      sum += term;
      small = std::abs(term) < 0.1 * tol ? small + 1 : 0;
      out.truncationN = n;
      ++n;
    }
    if (small >= 3) break;
  }
  const auto N = static_cast<std::uint64_t>(out.truncationN);
  out.value = sum + momentSeries(f, double(N + 1), 0.1 * tol,
                                 [N](double p) { return arith::divisorDirichletTail(p, N); });
  return out;
}

double oscTermViaEi(const TestFunction& f, double tol) {
  const double start = std::max(0.0, f.supportStart);
  const double thetaTol = std::max(1e-13, 0.1 * tol / f.support);
  IntegrandSpec spec{[&f, thetaTol](double t) { return t > 0.0 ? f(t) * theta::thetaOsc(t, thetaTol) : 0.0; },
                     Singularity::none,
                     {}};
  return checked(quadrature::integrate(spec, start, f.support, absTol(0.1 * tol)), "oscTermViaEi");
}

double kernelIdentityCheck(long n, const TestFunction& f, double tol) {
  if (n < 1) throw InputError("kernelIdentityCheck needs n >= 1");
  const double x = kFourPiSquared * double(n);
  const double start = std::max(0.0, f.supportStart);
  IntegrandSpec spec{[&f, x](double t) { return t > 0.0 ? special::eiCombo(x / t) * f(t) / t : 0.0; },
                     Singularity::none,
                     {}};
  const double eiSide = checked(quadrature::integrate(spec, start, f.support, absTol(0.1 * tol)), "Ei side");
  const double besselSide = kEiKernelFactor * besselKernelIntegral(n, f, 0.1 * tol);
  return std::abs(eiSide - besselSide);
}

VoronoiReport evaluate(const TestFunction& f, double tol) {
  VoronoiReport report;
  report.testFunction = f.name;
  report.tolerance = tol;
  try {
    validate(f);
    const double routeTol = 0.1 * tol;
    const auto lhs = lhsDivisorSum(f, routeTol);
    report.lhs = lhs.value;
    report.truncationN = lhs.truncationN;
    report.lhsViaTheta = lhsViaTheta(f, routeTol);
    report.weylTerm = weylTerm(f, routeTol);
    const auto osc = oscTerm(f, routeTol);
    report.oscTerm = osc.value;
    report.oscTruncationN = osc.truncationN;
    report.oscTermViaEi = oscTermViaEi(f, routeTol);
    report.residual = std::abs(report.lhs - report.weylTerm - report.oscTerm);
    report.crossRouteGap = std::abs(report.oscTerm - report.oscTermViaEi);
    report.lhsRouteGap = std::abs(report.lhs - report.lhsViaTheta);
  } catch (const std::exception& e) {
    report.failed = true;
    report.failure = e.what();
  }
  return report;
}

}  // namespace vsf::voronoi
