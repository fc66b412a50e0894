#include "vsf/voronoi.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "vsf/constants.hpp"
#include "vsf/errors.hpp"
#include "vsf/special.hpp"

namespace {

using namespace vsf::voronoi;
using vsf::kEulerGamma;
using vsf::kPi;

// mpmath at 30 digits. poly: zeta(2)^2 - 2 zeta(3)^2 plus the e^{-n} part of
// the closed-form transform; frac through incomplete gamma functions; bump
// by direct quadrature of each transform.
constexpr double kPolyLhs = 1.07969540722841212009208;
constexpr double kPolyOsc = -0.000579091889020976877842436;
constexpr double kFracLhs = 0.466498807370909326465503;
constexpr double kFracOsc = -0.000441242952039118902582448;
constexpr double kBumpLhs = 0.198758092270361077861564;
constexpr double kBumpWeyl = 0.204336140106052499181938;
constexpr double kBumpOsc = -0.00557804783569142132037355;

// t-domain Weyl terms in closed form
const double kPolyWeyl = kEulerGamma / 2 + 19.0 / 24.0;
const double kFracWeyl = kEulerGamma * 4.0 / 15.0 + 64.0 / 225.0 + 1.0 / 35.0;

TEST(Transform, PolyMomentsAndAsymptotics) {
  const auto f = polyTestFunction();
  EXPECT_NEAR(transform(f, 0.0, 1e-12), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(200.0 * 200.0 * transform(f, 200.0, 1e-12), 1.0, 0.02);
  for (double s : {0.0, 1.0, 50.0}) EXPECT_EQ(transform(zeroTestFunction(), s, 1e-10), 0.0);
  EXPECT_THROW(transform(f, -1.0, 1e-10), vsf::InputError);
}

TEST(Transform, QuadratureAndExpansionBranches) {
  const auto f = fracTestFunction();
  EXPECT_NEAR(transform(f, 3.0, 1e-14), 0.026456310431728174829, 1e-14);
  // both sides of the switch to the small-time expansion at s R = 45
  const double below = transform(f, 44.999, 1e-16);
  const double above = transform(f, 45.0, 1e-16);
  EXPECT_NEAR(below, above, 1e-4 * above);
}

TEST(Transform, WrongClosedFormIsCaught) {
  auto f = polyTestFunction();
  f.closedFormTransform = [](double s) { return 1.0 / (6.0 + s); };
  EXPECT_THROW(transform(f, 2.0, 1e-10), vsf::ConsistencyError);
}

TEST(LhsDivisorSum, GalleryValues) {
  auto poly = lhsDivisorSum(polyTestFunction(), 1e-10);
  EXPECT_NEAR(poly.value, kPolyLhs, 1e-10);
  EXPECT_LE(poly.truncationN, 10'000);
  EXPECT_GE(poly.truncationN, 1);
  EXPECT_NEAR(lhsDivisorSum(fracTestFunction(), 1e-10).value, kFracLhs, 1e-10);
  EXPECT_NEAR(lhsDivisorSum(bumpTestFunction(), 1e-10).value, kBumpLhs, 1e-10);
  EXPECT_EQ(lhsDivisorSum(zeroTestFunction(), 1e-10).value, 0.0);
}

TEST(LhsDivisorSum, MeasuredTailBoundWithoutExpansion) {
  auto f = polyTestFunction();
  f.smallTimeExpansion.clear();
  f.expansionRadius = 0.0;
  auto r = lhsDivisorSum(f, 1e-7);
  EXPECT_NEAR(r.value, kPolyLhs, 1e-7);
  EXPECT_GT(r.truncationN, 45);
}

TEST(LhsDivisorSum, RejectsNonPositiveBeta) {
  auto f = polyTestFunction();
  f.beta = 0.0;
  EXPECT_THROW(lhsDivisorSum(f, 1e-8), vsf::InputError);
}

TEST(LhsViaTheta, MatchesDivisorSum) {
  EXPECT_NEAR(lhsViaTheta(polyTestFunction(), 1e-9), kPolyLhs, 1e-9);
  EXPECT_NEAR(lhsViaTheta(bumpTestFunction(), 1e-9), kBumpLhs, 1e-9);
  EXPECT_NEAR(lhsViaTheta(fracTestFunction(), 1e-9), kFracLhs, 1e-9);
}

TEST(WeylTerm, BothDomains) {
  const auto poly = polyTestFunction();
  EXPECT_NEAR(weylTerm(poly, 1e-10), kPolyWeyl, 1e-9);
  EXPECT_NEAR(weylTermTimeDomain(poly, 1e-12), kPolyWeyl, 1e-12);
  EXPECT_NEAR(weylTerm(poly, 1e-8), weylTermTimeDomain(poly, 1e-10), 1e-7);
  EXPECT_NEAR(weylTerm(fracTestFunction(), 1e-10), kFracWeyl, 1e-9);
  EXPECT_NEAR(weylTerm(bumpTestFunction(), 1e-10), kBumpWeyl, 1e-9);
  EXPECT_NEAR(transform(poly, 0.0, 1e-12) / 4.0, 1.0 / 24.0, 1e-15);
  EXPECT_EQ(weylTerm(zeroTestFunction(), 1e-10), 0.0);
}

TEST(BesselKernel, OracleAndScaling) {
  // mpmath: (2/pi) K0(4 pi) - Y0(4 pi)
  EXPECT_NEAR(besselKernel(1, 1.0), 0.160662928883306644723551629701, 1e-14);
  EXPECT_NEAR(besselKernel(1, 2.5), -0.040442130516887234709009084652, 1e-14);
  EXPECT_NEAR(besselKernel(1, 1e-8), 8.65197801236379204341313332535, 1e-12);
  EXPECT_LT(std::abs(besselKernel(1, 1e-8)), 20.0);
  for (double k : {1e-4, 0.3, 2.0, 17.0}) EXPECT_DOUBLE_EQ(besselKernel(4, k), besselKernel(1, 4 * k));
  EXPECT_THROW(besselKernel(0, 1.0), vsf::InputError);
  EXPECT_THROW(besselKernel(1, 0.0), vsf::InputError);
}

TEST(BesselKernel, SignConventionOfEiIdentity) {
  EXPECT_DOUBLE_EQ(kEiKernelFactor, -kPi);
  for (double k : {0.05, 1.0, 2.5}) {
    const double z = 4 * kPi * std::sqrt(k);
    const double eiSideKernel = kPi * vsf::special::besselY0(z) - 2 * vsf::special::besselK0(z);
    EXPECT_NEAR(eiSideKernel, kEiKernelFactor * besselKernel(1, k), 1e-14);
  }
  // mpmath: pi Y0(4 pi sqrt 2.5) - 2 K0(4 pi sqrt 2.5)
  EXPECT_NEAR(kEiKernelFactor * besselKernel(1, 2.5), 0.127052700127372524119193353182, 1e-14);
}

TEST(KernelIdentity, PolyAtSeveralN) {
  const auto f = polyTestFunction();
  for (long n : {1, 2, 3, 5, 10}) EXPECT_LT(kernelIdentityCheck(n, f, 1e-9), 1e-7) << n;
  EXPECT_EQ(kernelIdentityCheck(1, zeroTestFunction(), 1e-9), 0.0);
}

TEST(BesselKernelIntegral, MomentExpansion) {
  const auto f = polyTestFunction();
  for (long n : {1, 4, 20}) {
    const double direct = besselKernelIntegral(n, f, 1e-12);
    EXPECT_NEAR(direct, besselKernelIntegralAsymptotic(n, f, 1e-14), 1e-12) << n;
  }
  // leading moment term -(2/pi) mu_1 / (4 pi^2)^2 with mu_1 = 1/12
  EXPECT_NEAR(besselKernelIntegral(1, f, 1e-12), -(2 / kPi) / 12 / std::pow(4 * kPi * kPi, 2), 1e-7);
}

TEST(OscTerm, PolyAtModerateTolerance) {
  auto r = oscTerm(polyTestFunction(), 1e-6);
  EXPECT_NEAR(r.value, kPolyOsc, 1e-6);
  EXPECT_LE(r.truncationN, 200);
  EXPECT_EQ(oscTerm(zeroTestFunction(), 1e-6).value, 0.0);
}

TEST(OscTerm, AgreesWithEiRoute) {
  EXPECT_NEAR(oscTermViaEi(polyTestFunction(), 1e-9), kPolyOsc, 1e-9);
  EXPECT_NEAR(oscTermViaEi(bumpTestFunction(), 1e-9), kBumpOsc, 1e-9);
  EXPECT_NEAR(oscTermViaEi(fracTestFunction(), 1e-9), kFracOsc, 1e-9);
  EXPECT_EQ(oscTermViaEi(zeroTestFunction(), 1e-9), 0.0);
  EXPECT_NEAR(oscTerm(bumpTestFunction(), 1e-7).value, kBumpOsc, 1e-7);
}

void expectClosed(const VoronoiReport& r) {
  EXPECT_FALSE(r.failed) << r.failure;
  EXPECT_LT(r.residual, 1e-6);
  EXPECT_LT(r.crossRouteGap, 1e-6);
  EXPECT_LT(r.lhsRouteGap, 1e-7);
  EXPECT_GT(r.truncationN, 0);
  EXPECT_GT(r.oscTruncationN, 0);
}

TEST(Evaluate, GalleryFunctionsClose) {
  auto poly = evaluate(polyTestFunction(), 1e-6);
  expectClosed(poly);
  EXPECT_NEAR(poly.lhs, kPolyLhs, 1e-7);
  expectClosed(evaluate(bumpTestFunction(), 1e-6));
  expectClosed(evaluate(fracTestFunction(), 1e-6));
}

TEST(Evaluate, ZeroFunction) {
  auto r = evaluate(zeroTestFunction(), 1e-6);
  EXPECT_FALSE(r.failed) << r.failure;
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.weylTerm, 0.0);
  EXPECT_EQ(r.oscTerm, 0.0);
  EXPECT_EQ(r.oscTermViaEi, 0.0);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Evaluate, FailureIsReportedNotThrown) {
  auto f = polyTestFunction();
  f.beta = -1.0;
  auto r = evaluate(f, 1e-6);
  EXPECT_TRUE(r.failed);
  EXPECT_FALSE(r.failure.empty());
}

TEST(Evaluate, Linearity) {
  const double a = 2.0, b = -0.5;
  const auto poly = evaluate(polyTestFunction(), 1e-7);
  const auto bump = evaluate(bumpTestFunction(), 1e-7);
  const auto mix = evaluate(linearCombination(a, polyTestFunction(), b, bumpTestFunction()), 1e-7);
  ASSERT_FALSE(mix.failed) << mix.failure;
  EXPECT_NEAR(mix.lhs, a * poly.lhs + b * bump.lhs, 1e-7);
  EXPECT_NEAR(mix.weylTerm, a * poly.weylTerm + b * bump.weylTerm, 1e-7);
  EXPECT_NEAR(mix.oscTerm, a * poly.oscTerm + b * bump.oscTerm, 1e-7);
  EXPECT_NEAR(mix.oscTermViaEi, a * poly.oscTermViaEi + b * bump.oscTermViaEi, 1e-7);
}

TEST(Evaluate, ResidualShrinksWithTolerance) {
  const auto coarse = evaluate(polyTestFunction(), 1e-5);
  const auto fine = evaluate(polyTestFunction(), 1e-7);
  ASSERT_FALSE(fine.failed) << fine.failure;
  EXPECT_LE(fine.residual, std::max(coarse.residual, 1e-10));
  EXPECT_LE(std::abs(fine.oscTerm - kPolyOsc), std::max(std::abs(coarse.oscTerm - kPolyOsc), 1e-10));
}

}  // namespace
