#include "vsf/theta.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/special.hpp"

namespace vsf::theta {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::uint64_t kMaxDirectTerms = 100'000'000;
constexpr double kSmallTimeSwitch = 0.01;

void requireTimeAndTol(double t, double tol) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("t must be positive and finite");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double s = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
    sum = s;
  }
  double value() const { return sum + carry; }
};

// Bound on sum_{n>N} d(n) e^{-nt}, from d(n) <= 2 sqrt n and
// sqrt n <= sqrt N exp((n - N) / (2N)).
double directTailBound(double t, std::uint64_t N) {
  const double rate = t - 0.5 / static_cast<double>(N);
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  const double q = std::exp(-rate);
  return 2.0 * std::sqrt(static_cast<double>(N)) * std::exp(-static_cast<double>(N) * t) * q / (1.0 - q);
}

double directWithTable(double t, double tol, std::uint64_t N, const arith::DivisorTable& table) {
  CompensatedSum divisorForm, lambertForm;
  for (std::uint64_t n = N; n >= 1; --n) {
    const double nt = static_cast<double>(n) * t;
    divisorForm.add(table[n] * std::exp(-nt));
    lambertForm.add(1.0 / std::expm1(nt));
  }
  const double a = divisorForm.value();
  const double b = lambertForm.value();
  if (std::abs(a - b) > 2.0 * tol + 16.0 * kEps * std::abs(a) * std::log2(static_cast<double>(N) + 2.0)) {
    throw ConsistencyError("Lambert and divisor forms of Theta(" + std::to_string(t) + ") disagree by " +
                           std::to_string(std::abs(a - b)));
  }
  return b;
}

}  // namespace

double hReg(double x) {
  if (!(x > 0.0)) throw DomainError("hReg requires x > 0");
  if (x < 0.5) {
    // sum_m (B_m - (-1)^m) x^{m-1} / m!, B_1 = -1/2; odd m > 1 contribute only 1/m!
    double sum = 0.5;
    double power = 1.0;  // x^{m-1}
    double factorial = 1.0;
    for (int m = 2; m <= 22; ++m) {
      power *= x;
      factorial *= m;
      const double bm = (m % 2 == 0) ? special::bernoulliEven(m / 2) : 0.0;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      sum += (bm - sign) * power / factorial;
    }
    return sum;
  }
  return 1.0 / std::expm1(x) - std::exp(-x) / x;
}

std::uint64_t thetaDirectTerms(double t, double tol) {
  requireTimeAndTol(t, tol);
  const double target = 0.25 * tol;
  std::uint64_t lo = 1, hi = 1;
  while (directTailBound(t, hi) > target) {
    lo = hi;
    hi *= 2;
    if (hi > 4 * kMaxDirectTerms) {
      throw NonConvergenceError("Lambert series at t=" + std::to_string(t) + " needs more than " +
                                std::to_string(kMaxDirectTerms) + " terms");
    }
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (directTailBound(t, mid) > target) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (hi > kMaxDirectTerms) {
    throw NonConvergenceError("Lambert series at t=" + std::to_string(t) + " needs more than " +
                              std::to_string(kMaxDirectTerms) + " terms");
  }
  return hi;
}

double thetaDirect(double t, double tol) {
  const std::uint64_t N = thetaDirectTerms(t, tol);
  const auto table = arith::DivisorTable::build(N, 1);
  return directWithTable(t, tol, N, table);
}

double thetaDirect(double t, double tol, const arith::DivisorTable& table) {
  const std::uint64_t N = thetaDirectTerms(t, tol);
  if (table.limit() < N) return thetaDirect(t, tol);
  return directWithTable(t, tol, N, table);
}

double thetaWeyl(double t) {
  if (!(t > 0.0)) throw DomainError("thetaWeyl requires t > 0");
  return (kEulerGamma - std::log(t)) / t + 0.25;
}

double thetaWigert(double t, double tol) {
  requireTimeAndTol(t, tol);
  const double scale = t / kTwoPi;
  // beyond n = head every argument 2 pi n / t is at least 12
  const auto head = static_cast<std::uint64_t>(std::ceil(12.0 * scale));
  double sum = 0.0;
  // tail: sum_k (-1)^{k+1} B_{2k}/(2k) (t/2pi)^{2k} zeta(2k, head+1)
  double tail = 0.0;
  double power = scale * scale;
  for (int k = 1; k <= 15; ++k) {
    const double term = special::bernoulliEven(k) / (2.0 * k) * power *
                        special::hurwitzZeta(2.0 * k, static_cast<double>(head) + 1.0);
    tail += (k % 2 == 1) ? term : -term;
    if (std::abs(term) < 1e-3 * kEps * std::abs(tail)) break;
    power *= scale * scale;
  }
  sum += tail;
  for (std::uint64_t n = head; n >= 1; --n) sum += special::digammaRe1iyMinusLog(static_cast<double>(n) / scale);
  return thetaWeyl(t) - 2.0 / t * sum;
}

double thetaOsc(double t, double tol) {
  requireTimeAndTol(t, tol);
  const double x1 = kFourPiSquared / t;
  // explicit terms while 4 pi^2 n / t is below the eiCombo crossover
  const double needed = std::ceil(special::kEiComboCrossover / x1) - 1.0;
  const auto N = static_cast<std::uint64_t>(std::max(0.0, needed));
  double sum = 0.0;
  // Asymptotic tail: sum_{m} 2 (2m+1)! (t / 4 pi^2)^{2m+2} sum_{n>N} d(n) n^{-2m-2};
  // every argument is at least 40, where 13 terms leave a relative error < 1e-16.
  const double inv = 1.0 / x1;
  double factor = 2.0 * inv * inv;
  double tail = 0.0;
  for (int m = 0; m <= 12; ++m) {
    const double term = factor * arith::divisorDirichletTail(2.0 * m + 2.0, N);
    tail += term;
    if (term < 1e-3 * kEps * tail) break;
    factor *= (2.0 * m + 2.0) * (2.0 * m + 3.0) * inv * inv;
  }
  if (N > 0) {
    const auto table = arith::DivisorTable::build(N, 1);
    for (std::uint64_t n = N; n >= 1; --n) sum += table[n] * special::eiCombo(x1 * static_cast<double>(n));
  }
  sum += tail;
  return -2.0 / t * sum;
}

double theta(double t, double tol) {
  requireTimeAndTol(t, tol);
  return t >= kSmallTimeSwitch ? thetaDirect(t, tol) : thetaWigert(t, tol);
}

ThetaDecomposition decompose(double t, double tol) {
  ThetaDecomposition d;
  d.t = t;
  d.thetaDirect = thetaDirect(t, tol);
  d.thetaWigert = thetaWigert(t, tol);
  d.thetaWeyl = thetaWeyl(t);
  d.thetaOsc = thetaOsc(t, tol);
  d.residualWigert = std::abs(d.thetaDirect - d.thetaWigert);
  d.residualDecomp = std::abs(d.thetaDirect - d.thetaWeyl - d.thetaOsc);
  return d;
}

}  // namespace vsf::theta
