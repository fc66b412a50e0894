#include "vsf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>

#include "vsf/errors.hpp"

namespace vsf::quadrature {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point nodes (non-negative half) and weights; Gauss 7-point
// weights on the even-indexed nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool final;  // error is at the rounding floor or the panel cannot shrink
};

bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }

Panel gaussKronrod(const std::function<double(double)>& f, double a, double b, double minWidth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> values{};
  const double fc = f(center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[static_cast<std::size_t>(j)];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    values[static_cast<std::size_t>(2 * j)] = f1;
    values[static_cast<std::size_t>(2 * j + 1)] = f2;
    kronrod += kKronrod[static_cast<std::size_t>(j)] * (f1 + f2);
    if (j % 2 == 1) gauss += kGauss[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  values[14] = fc;
  const double mean = 0.5 * kronrod;
  double resabs = std::abs(fc) * kKronrod[7];
  double resasc = kKronrod[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    const double w = kKronrod[static_cast<std::size_t>(j)];
    const double f1 = values[static_cast<std::size_t>(2 * j)];
    const double f2 = values[static_cast<std::size_t>(2 * j + 1)];
    resabs += w * (std::abs(f1) + std::abs(f2));
    resasc += w * (std::abs(f1 - mean) + std::abs(f2 - mean));
  }
  const double result = kronrod * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * kEps * resabs;
  bool final = false;
  if (err <= floor) {
    err = floor;
    final = true;
  }
  if (!std::isfinite(result) || !std::isfinite(err)) {
    std::ostringstream msg;
    msg << "integrand returned a non-finite value on [" << a << ", " << b << "]";
    throw DomainError(msg.str());
  }
  if (half <= 4.0 * kEps * std::max(std::abs(a), std::abs(b)) || b - a <= minWidth) final = true;
  return {a, b, result, err, final};
}

void checkTolerance(double tol, const QuadratureOptions& options) {
  if (!(tol > 0.0) || !(options.relTol >= 0.0)) throw InputError("quadrature tolerance must be positive");
  if (options.relTol == 0.0 && tol < kMinAbsTolerance) {
    throw InputError("absolute quadrature tolerance below 1e-13 (set relTol for relative targets)");
  }
}

// The adaptive engine without the caller-facing tolerance floor; composite
// rules split their budget over many pieces.
QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b, Singularity singularity,
                          double tol, const QuadratureOptions& options) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw InputError("integration needs finite a < b");
  // Panels narrower than this are not split again (guards bisection toward
  // an endpoint singularity once the rounding floor dominates elsewhere).
  const double minWidth = std::ldexp(b - a, -120);
  std::priority_queue<Panel> open;
  std::vector<Panel> done;
  long evaluations = 0;
  double total = 0.0, error = 0.0;
  auto add = [&](double lo, double hi) {
    Panel p = gaussKronrod(f, lo, hi, minWidth);
    evaluations += 15;
    total += p.value;
    error += p.error;
    if (p.final) {
      done.push_back(p);
    } else {
      open.push(p);
    }
  };
  if (singularity == Singularity::logarithmic && a == 0.0) {
    double hi = b;
    for (int k = 1; k <= 40; ++k) {
      const double lo = b * std::ldexp(1.0, -k);
      add(lo, hi);
      hi = lo;
    }
    add(0.0, hi);
  } else {
    add(a, b);
  }
  auto target = [&] { return std::max(tol, options.relTol * std::abs(total)); };
  while (error > target() && !open.empty() && evaluations + 30 <= options.maxEvaluations) {
    const Panel worst = open.top();
    open.pop();
    total -= worst.value;
    error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    add(worst.a, mid);
    add(mid, worst.b);
  }
  // Re-add in a fixed order to limit drift in the running sums.
  double value = 0.0, err = 0.0;
  std::vector<Panel> all = std::move(done);
  while (!open.empty()) {
    all.push_back(open.top());
    open.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : all) {
    value += p.value;
    err += p.error;
  }
  QuadratureResult out;
  out.value = value;
  out.absErrorEstimate = err;
  out.evaluations = evaluations;
  out.converged = err <= std::max(tol, options.relTol * std::abs(value));
  return out;
}

double envelope(const DecayHint& hint, double x) {
  if (const auto* e = std::get_if<ExponentialDecay>(&hint)) return e->amplitude * std::exp(-e->rate * x);
  if (const auto* p = std::get_if<AlgebraicDecay>(&hint)) return p->amplitude * std::pow(x, -p->power);
  if (const auto* c = std::get_if<CompactSupport>(&hint)) return x > c->upper ? 0.0 : std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::infinity();
}

QuadratureResult semiInfinite(const IntegrandSpec& spec, double tol, const QuadratureOptions& options) {
  if (const auto* c = std::get_if<CompactSupport>(&spec.decay)) {
    if (!(c->upper > 0.0)) throw InputError("compact support bound must be positive");
    return adaptive(spec.evaluator, 0.0, c->upper, spec.singularAtZero, tol, options);
  }
  if (const auto* e = std::get_if<ExponentialDecay>(&spec.decay)) {
    if (!(e->rate > 0.0) || !(e->amplitude > 0.0)) throw InputError("exponential decay needs positive rate and amplitude");
    const double X = std::max(1.0, std::log(4.0 * e->amplitude / (e->rate * tol)) / e->rate);
    const double remainder = e->amplitude * std::exp(-e->rate * X) / e->rate;
    QuadratureResult r = adaptive(spec.evaluator, 0.0, X, spec.singularAtZero, 0.75 * tol, options);
    r.absErrorEstimate += remainder;
    r.converged = r.absErrorEstimate <= std::max(tol, options.relTol * std::abs(r.value));
    return r;
  }
  if (const auto* p = std::get_if<AlgebraicDecay>(&spec.decay)) {
    if (!(p->power > 1.0)) throw InputError("algebraic decay needs power > 1");
    QuadratureResult head = adaptive(spec.evaluator, 0.0, 1.0, spec.singularAtZero, 0.5 * tol, options);
    // int_1^inf f(x) dx = int_0^1 f(1/u) u^{-2} du; the mapped integrand
    // behaves like u^{p-2} at 0, so it gets the geometric mesh as well.
    const auto& f = spec.evaluator;
    auto mapped = [&f](double u) { return f(1.0 / u) / (u * u); };
    QuadratureOptions tailOptions = options;
    tailOptions.maxEvaluations = std::max<long>(1000, options.maxEvaluations - head.evaluations);
    QuadratureResult tail = adaptive(mapped, 0.0, 1.0, Singularity::logarithmic, 0.5 * tol, tailOptions);
    QuadratureResult out;
    out.value = head.value + tail.value;
    out.absErrorEstimate = head.absErrorEstimate + tail.absErrorEstimate;
    out.evaluations = head.evaluations + tail.evaluations;
    out.converged = out.absErrorEstimate <= std::max(tol, options.relTol * std::abs(out.value));
    return out;
  }
  throw InputError("semi-infinite integration needs a decay hint");
}

QuadratureResult alternatingPanels(const IntegrandSpec& spec, double firstBreak, double halfPeriod, double tol,
                                   const QuadratureOptions& options) {
  if (!(firstBreak > 0.0) || !(halfPeriod > 0.0)) throw InputError("panel breaks must be positive");
  constexpr int kDirect = 50;
  constexpr int kAveraged = 24;
  const double panelTol = tol / (4.0 * (kDirect + kAveraged + 1));
  QuadratureOptions panelOptions = options;
  panelOptions.relTol = 0.0;
  panelOptions.maxEvaluations = std::max<long>(2000, options.maxEvaluations / (kDirect + kAveraged + 1));

  QuadratureResult out;
  auto panel = [&](double a, double b, Singularity s) {
    QuadratureResult r = adaptive(spec.evaluator, a, b, s, panelTol, panelOptions);
    out.evaluations += r.evaluations;
    out.absErrorEstimate += r.absErrorEstimate;
    return r.value;
  };
  double sum = panel(0.0, firstBreak, spec.singularAtZero);
  int small = 0;
  std::vector<double> partial;
  for (int k = 0; k < kDirect + kAveraged; ++k) {
    const double a = firstBreak + k * halfPeriod;
    const double p = panel(a, a + halfPeriod, Singularity::none);
    sum += p;
    small = std::abs(p) < tol / 10.0 ? small + 1 : 0;
    if (small >= 3) {
      const double b = a + halfPeriod;
      const double next = panel(b, b + halfPeriod, Singularity::none);
      out.value = sum;
      out.absErrorEstimate += std::abs(next);
      out.converged = out.absErrorEstimate <= std::max(tol, options.relTol * std::abs(sum));
      return out;
    }
    if (k >= kDirect - 1) partial.push_back(sum);
  }
  const double accelerated = iteratedAverage(partial);
  partial.pop_back();
  const double previous = iteratedAverage(partial);
  out.value = accelerated;
  out.absErrorEstimate += std::abs(accelerated - previous);
  out.converged = out.absErrorEstimate <= std::max(tol, options.relTol * std::abs(accelerated));
  return out;
}

}  // namespace

QuadratureResult integrate(const IntegrandSpec& spec, double a, double b, double tol, const QuadratureOptions& options) {
  checkTolerance(tol, options);
  if (!spec.evaluator) throw InputError("integrand has no evaluator");
  return adaptive(spec.evaluator, a, b, spec.singularAtZero, tol, options);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           const QuadratureOptions& options) {
  return integrate(IntegrandSpec{f, Singularity::none, {}}, a, b, tol, options);
}

QuadratureResult integrateSemiInfinite(const IntegrandSpec& spec, double tol, const QuadratureOptions& options) {
  checkTolerance(tol, options);
  if (!spec.evaluator) throw InputError("integrand has no evaluator");
  return semiInfinite(spec, tol, options);
}

QuadratureResult integrateAlternatingPanels(const IntegrandSpec& spec, double firstBreak, double halfPeriod,
                                            double tol, const QuadratureOptions& options) {
  checkTolerance(tol, options);
  if (!spec.evaluator) throw InputError("integrand has no evaluator");
  return alternatingPanels(spec, firstBreak, halfPeriod, tol, options);
}

QuadratureResult fourierCosine(const IntegrandSpec& spec, double omega, double tol, const QuadratureOptions& options) {
  checkTolerance(tol, options);
  if (!(omega >= 0.0)) throw InputError("fourierCosine needs omega >= 0");
  if (std::holds_alternative<std::monostate>(spec.decay) || std::holds_alternative<CompactSupport>(spec.decay)) {
    throw InputError("fourierCosine needs exponential or algebraic decay");
  }
  if (omega == 0.0) return semiInfinite(spec, tol, options);
  const auto& f = spec.evaluator;
  IntegrandSpec product{[&f, omega](double x) { return f(x) * std::cos(omega * x); }, spec.singularAtZero, spec.decay};
  // cos(omega x) changes sign at (k - 1/2) pi / omega
  const double halfPeriod = std::numbers::pi / omega;
  return alternatingPanels(product, 0.5 * halfPeriod, halfPeriod, tol, options);
}

QuadratureResult laplaceTransform(const voronoi::TestFunction& f, double s, double tol, const QuadratureOptions& options) {
  checkTolerance(tol, options);
  if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("Laplace transform needs s >= 0");
  if (!f.evaluator) throw InputError("test function has no evaluator");
  const double start = std::max(0.0, f.supportStart);
  double end = f.support;
  if (s > 0.0) {
    // beyond start + L/s the kernel is below e^{-L}, far under any relative target
    const double L = 60.0 + 2.0 * std::max(1.0, f.beta + 1.0) * std::log1p(s);
    end = std::min(end, start + L / s);
  }
  if (!(end > start)) return {};
  auto integrand = [&f, s](double t) { return std::exp(-s * t) * f(t); };
  // the geometric mesh only pays off for rough behaviour at 0
  const bool rough = f.beta < 1.0 || f.logPower.has_value();
  const Singularity sing = start == 0.0 && rough ? Singularity::logarithmic : Singularity::none;
  return adaptive(integrand, start, end, sing, tol, options);
}

bool decayHintConsistent(const IntegrandSpec& spec) {
  if (!spec.evaluator || std::holds_alternative<std::monostate>(spec.decay)) return false;
  for (int k = 1; k <= 16; ++k) {
    const double x = std::ldexp(1.0, k);
    const double bound = envelope(spec.decay, x);
    const double v = std::abs(spec.evaluator(x));
    if (!(v <= bound * (1.0 + 1e-12))) return false;
  }
  return true;
}

double iteratedAverage(std::vector<double> partialSums) {
  if (partialSums.empty()) throw InputError("iteratedAverage needs at least one value");
  while (partialSums.size() > 1) {
    for (std::size_t i = 0; i + 1 < partialSums.size(); ++i) partialSums[i] = 0.5 * (partialSums[i] + partialSums[i + 1]);
    partialSums.pop_back();
  }
  return partialSums.front();
}

}  // namespace vsf::quadrature
