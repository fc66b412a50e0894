#include "vsf/special.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "vsf/constants.hpp"
#include "vsf/errors.hpp"

namespace vsf::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_{2k}, k = 0..15
constexpr std::array<double, 16> kBernoulli = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

void requirePositive(double x, const char* name) {
  if (!(x > 0.0) || std::isnan(x)) throw DomainError(std::string(name) + " requires x > 0");
}

// J0 and Y0 for 8 < x < 25 from Miller's backward recurrence, normalised by
// J0 + 2 sum J_{2k} = 1, with Y0 from the Neumann series.
struct MillerPair {
  double j0;
  double y0;
  double scale;  // sum of |terms| entering Y0, for the error bound
};

MillerPair millerJ0Y0(double x) {
  int top = 2 * static_cast<int>((x + 40.0) / 2.0) + 2;
  double next = 0.0, cur = 1e-300;
  double norm = 0.0;     // J0 + 2 sum_{k>=1} J_{2k}, unnormalised
  double neumann = 0.0;  // sum_{k>=1} (-1)^k J_{2k} / k, unnormalised
  double neumannAbs = 0.0;
  double j0 = 0.0;
  for (int n = top; n >= 1; --n) {
    // cur = J_n, next = J_{n+1}; produce J_{n-1}
    double prev = 2.0 * n / x * cur - next;
    next = cur;
    cur = prev;
    int m = n - 1;
    if (m == 0) {
      j0 = cur;
      norm += cur;
    } else if (m % 2 == 0) {
      norm += 2.0 * cur;
      double term = ((m / 2) % 2 == 0 ? 1.0 : -1.0) * cur / (m / 2);
      neumann += term;
      neumannAbs += std::abs(term);
    }
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      neumann *= 1e-250;
      neumannAbs *= 1e-250;
      j0 *= 1e-250;
    }
  }
  j0 /= norm;
  neumann /= norm;
  neumannAbs /= std::abs(norm);
  const double lead = std::log(x / 2.0) + kEulerGamma;
  MillerPair out;
  out.j0 = j0;
  out.y0 = (2.0 / kPi) * (lead * j0 - 2.0 * neumann);
  out.scale = (2.0 / kPi) * (std::abs(lead * j0) + 2.0 * neumannAbs);
  return out;
}

// Hankel expansion for large x: P0, Q0 and the bound on the truncation.
struct Hankel {
  double p;
  double q;
  double err;
};

Hankel hankel0(double x) {
  // a_k = prod_{j=1..k} (2j-1)^2 / (k! 8^k x^k)
  double p = 1.0, q = 0.0;
  double a = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    double f = (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    double nextA = a * f;
    if (std::abs(nextA) > std::abs(a)) break;
    a = nextA;
    last = a;
    switch (k % 4) {
      case 1: q -= a; break;
      case 2: p -= a; break;
      case 3: q += a; break;
      case 0: p += a; break;
    }
    if (a < 1e-18) break;
  }
  return {p, q, last};
}

// Asymptotic series for e^{-x} Ei(x); returns the sum and the first dropped term.
std::pair<double, double> eiScaledAsymptotic(double x) {
  double term = 1.0 / x, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    sum += term;
    double next = term * k / x;
    if (next > term || next < kEps * 0.01 * sum) return {sum, next};
    term = next;
  }
  return {sum, term};
}

}  // namespace

double bernoulliEven(int k) {
  if (k < 0 || k >= static_cast<int>(kBernoulli.size())) throw InputError("bernoulliEven index outside [0, 15]");
  return kBernoulli[static_cast<std::size_t>(k)];
}

EvalResult evalDigamma(double x) {
  requirePositive(x, "digamma");
  double shift = 0.0;
  double shiftAbs = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    shiftAbs += 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double pow2 = inv2;
  for (int k = 1; k <= 7; ++k) {
    series += kBernoulli[static_cast<std::size_t>(k)] / (2.0 * k) * pow2;
    pow2 *= inv2;
  }
  const double truncation = std::abs(kBernoulli[8]) / 16.0 * pow2;
  const double lx = std::log(x);
  const double value = lx - 0.5 / x - series + shift;
  const double err = 4.0 * kEps * (std::abs(lx) + shiftAbs + std::abs(value)) + truncation;
  return {value, err, false};
}

double digamma(double x) { return evalDigamma(x).value; }

EvalResult evalDigammaRe1iy(double y) {
  y = std::abs(y);
  if (std::isnan(y)) throw DomainError("digammaRe1iy requires a number");
  // Re psi(1+iy) = Re psi(1+k+iy) - sum_{j<k} (1+j)/((1+j)^2+y^2)
  double shift = 0.0;
  double re = 1.0;
  while (std::hypot(re, y) < 12.0) {
    shift -= re / (re * re + y * y);
    re += 1.0;
  }
  const std::complex<double> w(re, y);
  const std::complex<double> inv2 = 1.0 / (w * w);
  std::complex<double> series = 0.0;
  std::complex<double> pow2 = inv2;
  for (int k = 1; k <= 6; ++k) {
    series += kBernoulli[static_cast<std::size_t>(k)] / (2.0 * k) * pow2;
    pow2 *= inv2;
  }
  const double lnAbs = std::log(std::abs(w));
  const double value = lnAbs - std::real(0.5 / w) - std::real(series) + shift;
  const double truncation = std::abs(kBernoulli[7]) / 14.0 * std::abs(pow2);
  return {value, 4.0 * kEps * (std::abs(lnAbs) + std::abs(shift) + std::abs(value)) + truncation, false};
}

double digammaRe1iy(double y) { return evalDigammaRe1iy(y).value; }

double digammaRe1iyMinusLog(double y) {
  y = std::abs(y);
  if (!(y > 0.0)) throw DomainError("digammaRe1iyMinusLog requires y != 0");
  if (y < 12.0) return digammaRe1iy(y) - std::log(y);
  const double inv2 = 1.0 / (y * y);
  double sum = 0.0, pow2 = inv2;
  for (int k = 1; k <= 15; ++k) {
    double term = kBernoulli[static_cast<std::size_t>(k)] / (2.0 * k) * pow2;
    sum += (k % 2 == 1) ? term : -term;
    pow2 *= inv2;
    if (std::abs(term) < kEps * 1e-3 * sum) break;
  }
  return sum;
}

double besselJ0(double x) {
  x = std::abs(x);
  if (x <= 8.0) {
    const double q = x * x / 4.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 100; ++k) {
      term *= -q / (static_cast<double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  if (x < 25.0) return millerJ0Y0(x).j0;
  const Hankel h = hankel0(x);
  const double s = std::sin(x), c = std::cos(x);
  // cos(x - pi/4) = (c + s)/sqrt2, sin(x - pi/4) = (s - c)/sqrt2
  return std::sqrt(2.0 / (kPi * x)) * (h.p * (c + s) - h.q * (s - c)) / std::sqrt(2.0);
}

EvalResult evalBesselY0(double x) {
  requirePositive(x, "besselY0");
  if (x <= 8.0) {
    const double q = x * x / 4.0;
    double term = 1.0;  // (-q)^k / (k!)^2
    double j0 = 1.0, j0Abs = 1.0;
    double harmonic = 0.0;
    double series = 0.0, seriesAbs = 0.0;
    for (int k = 1; k < 100; ++k) {
      term *= -q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      j0 += term;
      j0Abs += std::abs(term);
      series -= harmonic * term;
      seriesAbs += std::abs(harmonic * term);
      if (std::abs(term) * (harmonic + 1.0) < 1e-18) break;
    }
    const double lead = std::log(x / 2.0) + kEulerGamma;
    const double value = (2.0 / kPi) * (lead * j0 + series);
    const double scale = (2.0 / kPi) * (std::abs(lead) * j0Abs + seriesAbs + std::abs(lead * j0));
    return {value, 6.0 * kEps * scale + 1e-18, false};
  }
  if (x < 25.0) {
    const MillerPair m = millerJ0Y0(x);
    return {m.y0, 40.0 * kEps * m.scale, false};
  }
  const Hankel h = hankel0(x);
  const double s = std::sin(x), c = std::cos(x);
  const double amp = std::sqrt(2.0 / (kPi * x));
  // Y0 = amp (P sin(x - pi/4) + Q cos(x - pi/4))
  const double value = amp * (h.p * (s - c) + h.q * (c + s)) / std::sqrt(2.0);
  return {value, amp * (h.err + 8.0 * kEps + 4.0 * kEps * x * kEps), false};
}

double besselY0(double x) { return evalBesselY0(x).value; }

double besselK0Scaled(double x) {
  requirePositive(x, "besselK0");
  if (x <= 2.0) {
    const double q = x * x / 4.0;
    double term = 1.0, i0 = 1.0, harmonic = 0.0, series = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      i0 += term;
      series += harmonic * term;
      if (term < 1e-18 * i0) break;
    }
    return std::exp(x) * (-(std::log(x / 2.0) + kEulerGamma) * i0 + series);
  }
  // e^x K0(x) = int_0^inf exp(-x (cosh t - 1)) dt; the integrand is entire and
  // even, so the trapezoid rule converges geometrically in 1/h^2.
  const double h = std::min(0.15, 0.55 / std::sqrt(x));
  double sum = 0.5;
  for (int k = 1; k < 10000; ++k) {
    const double t = k * h;
    const double v = std::exp(-x * 2.0 * std::sinh(t / 2.0) * std::sinh(t / 2.0));
    sum += v;
    if (v < 1e-18 * sum) break;
  }
  return h * sum;
}

EvalResult evalBesselK0(double x) {
  requirePositive(x, "besselK0");
  if (x <= 2.0) {
    const double q = x * x / 4.0;
    double term = 1.0, i0 = 1.0, harmonic = 0.0, series = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      i0 += term;
      series += harmonic * term;
      if (term < 1e-18 * i0) break;
    }
    const double lead = -(std::log(x / 2.0) + kEulerGamma);
    const double value = lead * i0 + series;
    return {value, 6.0 * kEps * (std::abs(lead) * i0 + series + std::abs(value)), false};
  }
  const double scaled = besselK0Scaled(x);
  const double value = scaled * std::exp(-x);
  if (value < std::numeric_limits<double>::min()) return {0.0, std::numeric_limits<double>::min(), true};
  // exp(-x) carries a relative error of about x * eps from the rounding of x
  return {value, (8.0 + 0.0) * kEps * value, false};
}

double besselK0(double x) { return evalBesselK0(x).value; }

EvalResult evalE1Scaled(double x) {
  requirePositive(x, "e1Scaled");
  if (x <= 1.0) {
    double term = 1.0, sum = 0.0, sumAbs = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= -x / k;
      sum += term / k;
      sumAbs += std::abs(term) / k;
      if (std::abs(term) < 1e-18) break;
    }
    const double lead = -kEulerGamma - std::log(x);
    const double e1 = lead - sum;
    const double ex = std::exp(x);
    return {ex * e1, 6.0 * kEps * ex * (std::abs(lead) + sumAbs + std::abs(e1)), false};
  }
  // modified Lentz for 1/(x+1 - 1/(x+3 - 4/(x+5 - ...)))
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return {h, 16.0 * kEps * h, false};
}

double e1Scaled(double x) { return evalE1Scaled(x).value; }

EvalResult evalEiScaled(double x) {
  requirePositive(x, "eiScaled");
  if (x <= kEiComboCrossover) {
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 500; ++k) {
      term *= x / k;
      sum += term / k;
      if (term / k < 1e-18 * sum) break;
    }
    const double lead = kEulerGamma + std::log(x);
    const double ei = lead + sum;
    const double ex = std::exp(-x);
    return {ex * ei, 6.0 * kEps * ex * (std::abs(lead) + sum) + 4.0 * kEps * x * ex * std::abs(ei), false};
  }
  auto [sum, dropped] = eiScaledAsymptotic(x);
  return {sum, dropped + 4.0 * kEps * sum, false};
}

double eiScaled(double x) { return evalEiScaled(x).value; }

double eiComboAsymptotic(double x, int terms) {
  requirePositive(x, "eiComboAsymptotic");
  const double inv2 = 1.0 / (x * x);
  double sum = 0.0;
  double term = 2.0 * inv2;  // 2 (2m+1)! / x^{2m+2} at m = 0
  for (int m = 0; m < terms; ++m) {
    sum += term;
    term *= (2.0 * m + 2.0) * (2.0 * m + 3.0) * inv2;
  }
  return sum;
}

EvalResult evalEiCombo(double x) {
  requirePositive(x, "eiCombo");
  if (x < kEiComboCrossover) {
    const EvalResult a = evalEiScaled(x);
    const EvalResult b = evalE1Scaled(x);
    const double value = a.value - b.value;
    return {value, a.absErrorEstimate + b.absErrorEstimate + kEps * std::abs(value), false};
  }
  const double inv2 = 1.0 / (x * x);
  double sum = 0.0;
  double term = 2.0 * inv2;
  for (int m = 0; m < 200; ++m) {
    sum += term;
    const double next = term * (2.0 * m + 2.0) * (2.0 * m + 3.0) * inv2;
    if (next > term || next < 1e-3 * kEps * sum) return {sum, next + 2.0 * kEps * sum, false};
    term = next;
  }
  return {sum, term + 2.0 * kEps * sum, false};
}

double eiCombo(double x) { return evalEiCombo(x).value; }

double hurwitzZeta(double s, double a) {
  if (!(s > 1.0)) throw DomainError("hurwitzZeta requires s > 1");
  requirePositive(a, "hurwitzZeta");
  const double target = std::max(15.0, s);
  double head = 0.0;
  // Summing from the far end keeps the small terms first.
  int k = 0;
  while (a + k < target) ++k;
  for (int j = k - 1; j >= 0; --j) head += std::pow(a + j, -s);
  const double w = a + k;
  const double wPow = std::pow(w, -s);
  double tail = w * wPow / (s - 1.0) + 0.5 * wPow;
  // B_{2j}/(2j)! s(s+1)...(s+2j-2) w^{-s-2j+1}
  double factor = s * wPow / w;  // s w^{-s-1}
  double corr = 0.0;
  for (int j = 1; j <= 15; ++j) {
    double fact = 1.0;
    for (int i = 2; i <= 2 * j; ++i) fact *= i;
    const double term = kBernoulli[static_cast<std::size_t>(j)] / fact * factor;
    corr += term;
    if (std::abs(term) < 1e-3 * kEps * (tail + head)) break;
    factor *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) / (w * w);
  }
  return head + (tail + corr);
}

double zeta(double s) { return hurwitzZeta(s, 1.0); }

}  // namespace vsf::special
