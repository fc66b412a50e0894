#include "vsf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/special.hpp"

namespace vsf::arith {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kSegment = 1u << 18;

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Adds the divisor pairs (a, b), a <= b, with a*b in [lo, hi) to counts.
void sieveSegment(std::vector<std::uint16_t>& counts, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t top = isqrt(hi - 1);
  for (std::uint64_t a = 1; a <= top; ++a) {
    std::uint64_t b = std::max(a, (lo + a - 1) / a);
    std::uint64_t n = a * b;
    if (b == a && n < hi) {
      counts[n] += 1;
      ++b;
      n += a;
    }
    for (; n < hi; n += a) counts[n] += 2;
  }
}

}  // namespace

DivisorTable DivisorTable::build(std::uint64_t limit, unsigned threads) {
  if (limit == 0) throw InputError("divisor sieve limit must be at least 1");
  if (limit > kMaxSieveLimit) {
    throw InputError("divisor sieve limit " + std::to_string(limit) + " exceeds " +
                     std::to_string(kMaxSieveLimit));
  }
  std::vector<std::uint16_t> counts(limit + 1, 0);
  const std::uint64_t segments = (limit + kSegment) / kSegment;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, segments));

  auto work = [&](unsigned id) {
    for (std::uint64_t s = id; s < segments; s += threads) {
      std::uint64_t lo = std::max<std::uint64_t>(1, s * kSegment);
      std::uint64_t hi = std::min(limit + 1, (s + 1) * kSegment);
      if (lo < hi) sieveSegment(counts, lo, hi);
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
  }
  return DivisorTable(std::move(counts));
}

std::uint32_t DivisorTable::at(std::uint64_t n) const {
  if (n == 0 || n > limit()) {
    throw InputError("index " + std::to_string(n) + " outside divisor table [1, " + std::to_string(limit()) + "]");
  }
  return counts_[n];
}

std::uint64_t DivisorTable::partialSum(std::uint64_t x) const {
  if (x > limit()) throw InputError("partial sum beyond the divisor table");
  std::uint64_t sum = 0;
  for (std::uint64_t n = 1; n <= x; ++n) sum += counts_[n];
  return sum;
}

DivisorTable divisorSieve(std::uint64_t limit) { return DivisorTable::build(limit); }

std::uint64_t divisorSummatory(std::uint64_t x) {
  if (x == 0) return 0;
  // D(x) > x ln x + (2 gamma - 1) x - 4 sqrt x; reject hopeless inputs before the O(sqrt x) loop.
  const long double lx = static_cast<long double>(x);
  if (lx * (std::log(lx) + 0.1544313298L) - 4.0L * std::sqrt(lx) > 1.9e19L) {
    throw std::overflow_error("D(" + std::to_string(x) + ") does not fit in 64 bits");
  }
  const std::uint64_t s = isqrt(x);
  u128 sum = 0;
  for (std::uint64_t n = 1; n <= s; ++n) sum += x / n;
  sum *= 2;
  const u128 square = static_cast<u128>(s) * s;
  sum -= square;
  if (sum > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("D(" + std::to_string(x) + ") does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(sum);
}

DivisorSummary deltaTerm(std::uint64_t x) {
  if (x == 0) throw InputError("deltaTerm needs x >= 1");
  DivisorSummary out;
  out.x = x;
  out.bigD = divisorSummatory(x);
  const long double lx = static_cast<long double>(x);
  const long double gamma = 0.577215664901532860606512090082L;
  const long double delta = static_cast<long double>(out.bigD) - lx * std::log(lx) - (2.0L * gamma - 1.0L) * lx;
  out.delta = static_cast<double>(delta);
  if (x >= 2) {
    out.normalizedDelta = static_cast<double>(delta / (std::cbrt(lx) * std::log(lx)));
  }
  return out;
}

DivisorSummary deltaTermAt(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw InputError("deltaTerm needs x >= 1");
  if (x >= 1.8446744073709552e19) throw InputError("deltaTerm argument too large");
  return deltaTerm(static_cast<std::uint64_t>(std::floor(x)));
}

std::uint64_t countingFunction(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("counting function needs k > 0");
  if (k < 1.0) return 0;
  return divisorSummatory(static_cast<std::uint64_t>(std::floor(k)));
}

std::vector<std::uint64_t> logSpacedIntegers(std::uint64_t lo, std::uint64_t hi, int perDecade) {
  if (lo == 0 || hi < lo || perDecade <= 0) throw InputError("logSpacedIntegers needs 1 <= lo <= hi");
  std::vector<std::uint64_t> points;
  for (int i = 0;; ++i) {
    long double v = static_cast<long double>(lo) * std::pow(10.0L, static_cast<long double>(i) / perDecade);
    if (v >= static_cast<long double>(hi)) break;
    auto n = static_cast<std::uint64_t>(std::floor(v));
    if (points.empty() || points.back() != n) points.push_back(n);
  }
  if (points.empty() || points.back() != hi) points.push_back(hi);
  return points;
}

double divisorDirichletTail(double s, std::uint64_t N) {
  if (!(s > 1.0)) throw DomainError("divisorDirichletTail needs s > 1");
  const double zs = special::zeta(s);
  double sum = zs * special::hurwitzZeta(s, static_cast<double>(N) + 1.0);
  for (std::uint64_t a = N; a >= 1; --a) {
    sum += std::pow(static_cast<double>(a), -s) * special::hurwitzZeta(s, static_cast<double>(N / a) + 1.0);
  }
  return sum;
}

}  // namespace vsf::arith
