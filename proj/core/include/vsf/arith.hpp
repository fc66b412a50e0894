#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vsf::arith {

/// Largest table the sieve will build (two bytes per entry).
inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;

/// d(n) for 1 <= n <= limit, built once and immutable afterwards.
class DivisorTable {
 public:
  /// Builds the table with the increment-by-multiples sieve. `threads` = 0
  /// uses the hardware concurrency. Throws InputError for limit 0 or a limit
  /// beyond kMaxSieveLimit.
  static DivisorTable build(std::uint64_t limit, unsigned threads = 0);

  std::uint64_t limit() const { return counts_.size() - 1; }

  /// d(n); n must lie in [1, limit()].
  std::uint32_t operator[](std::uint64_t n) const { return counts_[n]; }
  std::uint32_t at(std::uint64_t n) const;

  /// Entries indexed by n; index 0 is unused and holds 0.
  std::span<const std::uint16_t> counts() const { return counts_; }

  /// Sum of d(n) over n <= x, by direct accumulation. x <= limit().
  std::uint64_t partialSum(std::uint64_t x) const;

 private:
  explicit DivisorTable(std::vector<std::uint16_t> counts) : counts_(std::move(counts)) {}
  std::vector<std::uint16_t> counts_;
};

DivisorTable divisorSieve(std::uint64_t limit);

/// D(x) = sum_{n<=x} d(n) by the hyperbola method in O(sqrt x). Throws
/// std::overflow_error if the result does not fit in 64 bits.
std::uint64_t divisorSummatory(std::uint64_t x);

struct DivisorSummary {
  std::uint64_t x = 0;
  std::uint64_t bigD = 0;
  /// D(x) - x ln x - (2 gamma - 1) x
  double delta = 0.0;
  /// delta / (x^{1/3} ln x); empty for x < 2.
  std::optional<double> normalizedDelta;
};

/// Dirichlet error term at integer x >= 1.
DivisorSummary deltaTerm(std::uint64_t x);
/// Non-integer arguments use floor(x); x >= 1.
DivisorSummary deltaTermAt(double x);

/// N(k) = D(floor k): wavenumbers k_n = n carry multiplicity d(n).
std::uint64_t countingFunction(double k);

/// Integer points floor(lo * 10^{i/perDecade}) in [lo, hi], deduplicated,
/// always ending with hi. Used by the scans.
std::vector<std::uint64_t> logSpacedIntegers(std::uint64_t lo, std::uint64_t hi, int perDecade = 40);

/// sum_{n > N} d(n) n^{-s} for s > 1, evaluated as
/// sum_{a<=N} a^{-s} zeta(s, floor(N/a)+1) + zeta(s) zeta(s, N+1),
/// which has only positive terms.
double divisorDirichletTail(double s, std::uint64_t N);

}  // namespace vsf::arith
