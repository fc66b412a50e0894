#include "vsf/poisson.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/special.hpp"
#include "vsf/theta.hpp"

namespace {

using namespace vsf::poisson;
using vsf::kEulerGamma;
using vsf::kPi;

// Re psi(1 + i c) - ln c to 20 digits (mpmath), c = 2 pi m / t; this is the
// summed eiCombo lattice sum sum_n h(4 pi^2 m n / t).
struct LatticeOracle {
  int m;
  double t;
  double value;
};
const LatticeOracle kLattice[] = {
    {1, 0.5, 0.000528049691747034901902},
    {1, 1.0, 0.00211627115300523769697},
    {1, 2.0, 0.00853367115819569621327},
};

TEST(Summands, Validation) {
  EXPECT_NO_THROW(validate(zeroSummand()));
  EXPECT_NO_THROW(validate(hRegSummand()));
  EXPECT_NO_THROW(validate(eiComboSummand()));
  auto bad = hRegSummand();
  bad.hZeroPlus = 0.7;
  bad.name = "bad";
  EXPECT_NO_THROW(validate(hRegSummand()));
  SummandSpec grows{"grows", [](double x) { return x; }, 0.0, 0.0, vsf::quadrature::AlgebraicDecay{2.0, 1.0}, {}};
  EXPECT_THROW(validate(grows), vsf::InputError);
  auto wrongB = eiComboSummand();
  wrongB.b = 1.0;
  EXPECT_THROW(validate(wrongB), vsf::InputError);
  EXPECT_THROW(summandByName("nope"), vsf::InputError);
  EXPECT_EQ(summandByName("hreg").name, "hreg");
}

TEST(Lhs, ZeroAndRegularizedLambert) {
  EXPECT_EQ(lhsSum(zeroSummand(), 1.0, 1e-10), 0.0);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double expected = vsf::theta::thetaDirect(alpha, 1e-13) + std::log(-std::expm1(-alpha)) / alpha;
    EXPECT_NEAR(lhsSum(hRegSummand(), alpha, 1e-12), expected, 1e-11) << alpha;
  }
}

TEST(Lhs, EiComboLattice) {
  for (const auto& o : kLattice) {
    const double alpha = 4 * kPi * kPi * o.m / o.t;
    EXPECT_NEAR(lhsSum(eiComboSummand(), alpha, 1e-11), o.value, 1e-11) << o.t;
  }
  EXPECT_THROW(lhsSum(eiComboSummand(), 0.0, 1e-10), vsf::InputError);
}

TEST(Rhs, ZeroSummand) { EXPECT_EQ(rhsSum(zeroSummand(), 1.0, 1e-10), 0.0); }

TEST(Rhs, EiComboMatchesHansenClosedForm) {
  for (const auto& o : kLattice) {
    const double alpha = 4 * kPi * kPi * o.m / o.t;
    auto r = rhsEvaluate(eiComboSummand(), alpha, 1e-10);
    EXPECT_NEAR(r.value, o.value, 1e-9) << o.t;
    EXPECT_LE(r.terms, 16384);
  }
}

TEST(Rhs, NonConvergenceIsReported) {
  EXPECT_THROW(rhsSum(eiComboSummand(), 4 * kPi * kPi * 4, 1e-12, 64), vsf::NonConvergenceError);
  EXPECT_THROW(rhsSum(hRegSummand(), 1.0, 1e-10, 4), vsf::InputError);
}

TEST(Residual, RegularizedSummand) {
  const double tol = 1e-9;
  for (double alpha : {0.5, 1.0, 2.0, 5.0}) EXPECT_LT(residual(hRegSummand(), alpha, tol), 10 * tol) << alpha;
  EXPECT_EQ(residual(zeroSummand(), 1.0, tol), 0.0);
}

TEST(Residual, EiComboSummand) {
  const double tol = 1e-9;
  for (int m : {1, 2}) {
    for (double t : {0.5, 1.0, 2.0}) {
      EXPECT_LT(residual(eiComboSummand(), 4 * kPi * kPi * m / t, tol), 10 * tol) << m << " " << t;
    }
  }
}

TEST(Residual, ShrinksWithTolerance) {
  const double coarse = residual(hRegSummand(), 2.0, 1e-6);
  const double fine = residual(hRegSummand(), 2.0, 1e-9);
  EXPECT_LE(fine, std::max(coarse, 1e-10));
  EXPECT_LT(fine, 1e-8);
}

// Partial sums of the n-series in closed form: -n/(n^2 + c^2) + 1/n per term.
TEST(Compensation, LogTermIsNeeded) {
  const double c = 2 * kPi;
  double compensated = 0, bare = 0;
  for (long n = 1; n <= 10000; ++n) {
    const double transformTerm = -double(n) / (double(n) * n + c * c);
    compensated += transformTerm + 1.0 / n;
    bare += transformTerm;
  }
  // without b/(4n) the sum behaves like -ln N and is unbounded
  EXPECT_LT(bare, -7.0);
  EXPECT_NEAR(compensated, vsf::special::digammaRe1iy(c) + kEulerGamma, 1e-6);
}

TEST(Hansen, DigammaSum) {
  // sum_k 1/(((k x)^2 + y^2) k) = (psi(1 + iy/x) + psi(1 - iy/x) + 2 gamma) / (2 y^2)
  for (auto [x, y] : {std::pair{1.0, 2 * kPi}, std::pair{1.0, 4 * kPi}, std::pair{2.0, 2 * kPi}}) {
    double sum = 0;
    const long K = 200000;
    for (long k = K; k >= 1; --k) sum += 1.0 / ((std::pow(k * x, 2) + y * y) * k);
    sum += 1.0 / (2.0 * x * x * double(K) * K);  // tail ~ sum_{k>K} 1/(x^2 k^3)
    const double closed = (2 * vsf::special::digammaRe1iy(y / x) + 2 * kEulerGamma) / (2 * y * y);
    EXPECT_NEAR(sum, closed, 1e-9) << x << " " << y;
  }
}

}  // namespace
