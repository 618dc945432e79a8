#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "p1/cubic.hpp"
#include "p1/error.hpp"

using namespace p1;
using std::numbers::pi;

namespace {

// sqrt with its cut along the negative imaginary direction, so it is analytic
// on the closed upper half-plane
cplx sqrt_up(cplx w) {
  double th = std::arg(w);
  if (th < -pi / 2) th += 2 * pi;
  return std::polar(std::sqrt(std::abs(w)), th / 2);
}

// (2 / (pi i)) * integral of sqrt(4 (s - z0)(s - z1)(s - z2)) from z1 to z2
// along the upper half circle over [z2, z1] (all roots real).
cplx kappa2_on_arc(double z0, double z1, double z2) {
  const double m = 0.5 * (z1 + z2), rho = 0.5 * (z1 - z2);
  auto f = [&](double phi) {
    const cplx s = m + std::polar(rho, phi);
    const cplx ds = cplx(0, 1) * std::polar(rho, phi);
    return 2.0 * sqrt_up(s - z0) * sqrt_up(s - z1) * sqrt_up(s - z2) * ds;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto re = [&](double p) { return f(p).real(); };
  auto im = [&](double p) { return f(p).imag(); };
  const cplx I(GK::integrate(re, 0.0, pi, 15, 1e-14), GK::integrate(im, 0.0, pi, 15, 1e-14));
  return 2.0 / (pi * cplx(0, 1)) * I;
}

}  // namespace

TEST(Cubic, CubeRootsOfMinusOne) {
  const auto c = cubic_roots(0);
  EXPECT_NEAR(std::abs(c.z0 - cplx(-1, 0)), 0, 1e-14);
  EXPECT_NEAR(std::abs(c.z1 - std::polar(1.0, pi / 3)), 0, 1e-14);
  EXPECT_NEAR(std::abs(c.z2 - std::polar(1.0, -pi / 3)), 0, 1e-14);
}

TEST(Cubic, DoubleRootAtCritical) {
  const auto c = cubic_roots(A_crit);
  EXPECT_NEAR(std::abs(c.z0 + std::cbrt(4.0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(c.z1 - 1 / std::cbrt(2.0)), 0, 1e-7);
  EXPECT_NEAR(std::abs(c.z2 - 1 / std::cbrt(2.0)), 0, 1e-7);
}

TEST(Cubic, CompanionMatrixOracle) {
  for (double A : {-3.0, -2.2, 0.5, 3.0}) {
    Eigen::Matrix3d M;
    M << 0, 0, -1, 1, 0, -A, 0, 1, 0;
    const Eigen::Vector3cd ev = Eigen::EigenSolver<Eigen::Matrix3d>(M).eigenvalues();
    const auto c = cubic_roots(A);
    for (cplx z : {c.z0, c.z1, c.z2}) {
      double best = 1e300;
      for (int i = 0; i < 3; ++i) best = std::min(best, std::abs(z - ev[i]));
      EXPECT_LT(best, 1e-12) << "A = " << A;
    }
  }
}

TEST(Kappa, VanishesAtCritical) {
  EXPECT_EQ(kappa2(A_crit), cplx(0.0));
  EXPECT_THROW(kappa_pair(A_crit), Error);
  for (double d : {1e-3, -1e-3}) {
    EXPECT_LT(std::abs(kappa2(A_crit + d)), 2e-3);
    EXPECT_LT(std::abs(kappa2(A_crit + d / 10)), std::abs(kappa2(A_crit + d)) / 5);
  }
}

TEST(Kappa, DeformedPathAtMinusThree) {
  const auto c = cubic_roots(-3);
  ASSERT_TRUE(c.real_roots);
  const cplx k = kappa2(-3);
  EXPECT_GT(k.real(), 0);
  const cplx arc = kappa2_on_arc(c.z0.real(), c.z1.real(), c.z2.real());
  EXPECT_NEAR(std::abs(arc.imag()), 0, 1e-10);
  EXPECT_NEAR(std::abs(arc.real()), k.real(), 1e-10);
}

TEST(C0, ReferenceValue) { EXPECT_NEAR(find_C0(), 2.004860503264124, 1e-12); }

TEST(C0, TwoRootFindersAgree) { EXPECT_NEAR(find_C0(), find_C0_secant(), 1e-12); }

TEST(C0, SignChange) {
  const double C0 = find_C0();
  EXPECT_NEAR(kappa_pair(C0).kappa_hat2.imag(), 0, 1e-12);
  EXPECT_GT(kappa_pair(C0 - 0.1).kappa_hat2.imag(), 0);
  EXPECT_LT(kappa_pair(C0 + 0.1).kappa_hat2.imag(), 0);
}

TEST(Alpha0, RealPartVanishesAtC0) { EXPECT_NEAR(alpha0(find_C0()).real(), 0, 1e-9); }

TEST(Alpha0, ImaginaryPartVanishesAtCritical) {
  const double a = std::abs(alpha0(A_crit + 1e-2).imag());
  const double b = std::abs(alpha0(A_crit + 1e-3).imag());
  EXPECT_LT(b, a);
  EXPECT_LT(b, 1e-3);
}

TEST(Alpha0, IdentityPairAtZero) {
  const cplx a = alpha0(0);
  const auto k = kappa_pair(0);
  EXPECT_NEAR(a.real(), pi / 2 * k.kappa_hat2.imag(), 1e-9);
  EXPECT_NEAR(a.imag(), pi / 4 * k.kappa2.real(), 1e-9);
}

TEST(Alpha0, ContourIndependence) {
  for (double A : {-1.0, 0.0, 2.0, 3.5}) {
    const cplx a = alpha0(A, 0.3 * pi), b = alpha0(A, 0.55 * pi);
    EXPECT_LT(std::abs(a - b), 1e-9) << "A = " << A;
  }
}

TEST(Alpha1, LinearFormAndParity) {
  for (double A : {-1.0, 1.0, 3.0}) {
    const auto p = alpha1_parts(A);
    EXPECT_EQ(alpha1(A, +1, 0.0), p.a12p);
    EXPECT_EQ(p.a12p, -p.a12m);
  }
}

TEST(Alpha1, ContourIndependenceAtC0) {
  const double C0 = find_C0();
  const auto a = alpha1_parts(C0, 0.3 * pi), b = alpha1_parts(C0, 0.55 * pi);
  EXPECT_LT(std::abs(a.a11 - b.a11), 1e-9);
  EXPECT_LT(std::abs(a.a12p - b.a12p), 1e-9);
  EXPECT_LT(std::abs(a.a12m - b.a12m), 1e-9);
}

TEST(Alpha1, SegmentIntegralConvergesToRay) {
  const double C0 = find_C0();
  const cplx z1 = cubic_roots(C0).z1;
  const cplx full = alpha1_parts(C0).a11;
  // the tail beyond |s| = L behaves like L^(-1/2)
  double prev = 1e300;
  for (double L : {5e3, 5e5, 5e7}) {
    const double gap = std::abs(alpha11_segment(C0, z1 + L) - full);
    EXPECT_LT(gap, prev);
    EXPECT_NEAR(gap * std::sqrt(L), 1.0, 0.05);
    prev = gap;
  }
  // truncated value behind the reference asymptotic table columns
  EXPECT_NEAR(alpha11_segment(C0, z1 + 5000.0).real(), 0.8072676954, 1e-9);
  EXPECT_NEAR(full.real(), 0.82140951, 1e-7);
}

TEST(LambdaB1, InversionCases) {
  const auto& K = constants();
  const auto half = lambda0_and_B1(0.5);
  EXPECT_NEAR(half.B1_plus, K.Lambda0_plus, 1e-12);
  EXPECT_NEAR(half.B1_minus, K.Lambda0_minus, 1e-12);
  const double re11 = K.at_C0.alpha11.real(), re12 = K.at_C0.alpha12_plus.real();
  EXPECT_NEAR(lambda0_and_B1(std::exp(2 * re12 + 4 * re11)).B1_plus, 1.0, 1e-12);
  EXPECT_NEAR(lambda0_and_B1(1.0).B1_plus, -re12 / (2 * re11), 1e-12);
  EXPECT_THROW(lambda0_and_B1(0.0), Error);
}
