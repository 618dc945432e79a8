#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace p1 {

using cplx = std::complex<double>;

// -3 / 2^(2/3): z1 and z2 coalesce here.
inline const double A_crit = -3.0 / std::cbrt(4.0);

struct CubicData {
  double A = 0;
  cplx z0, z1, z2;
  bool real_roots = false;  // z1, z2 real (A <= A_crit)
};

// Roots of z^3 + A z + 1, ordered: z0 the negative real root; z1, z2 either
// real with z1 >= z2 or a conjugate pair with Im z1 > 0.
CubicData cubic_roots(double A);

// Branch-sqrt of w with arg taken in [lb, lb + 2 pi).
cplx branch_sqrt(cplx w, double lb);

// f0^(1/2) = 2 (z-z0)^(1/2) (z-z1)^(1/2) (z-z2)^(1/2), arg(z-z0) in (-pi, pi),
// arg(z-z1), arg(z-z2) in (-pi/2, 3pi/2). Differences are passed in directly so
// that points on a segment keep their exact sign.
cplx f0_sqrt(cplx d0, cplx d1, cplx d2);
inline cplx f0_sqrt(const CubicData& c, cplx z) { return f0_sqrt(z - c.z0, z - c.z1, z - c.z2); }

struct KappaPair {
  cplx kappa2;       // real for real A
  cplx kappa_hat2;
  double err = 0;    // quadrature error estimate
  bool coalesced = false;
};

// kappa2 on real-root A is returned as the continuation through A_crit, i.e.
// with the sign of the literal segment integral flipped (see README).
KappaPair kappa_pair(double A);
// kappa2 alone; returns 0 inside the coalescence window instead of throwing.
cplx kappa2(double A);
// The segment integral with the literal branch prescription, no sign fix.
cplx kappa2_literal(double A);

double find_C0();          // cached; toms748 on Im kappa_hat2
double find_C0_secant();   // independent secant iteration, for cross-checks

inline constexpr double kDefaultTheta = 2.0 * std::numbers::pi / 5.0;

cplx alpha0(double A, double theta = kDefaultTheta);

struct Alpha1Parts {
  cplx a11, a12p, a12m;
};
Alpha1Parts alpha1_parts(double A, double theta = kDefaultTheta);
cplx alpha1(double A, int sgnb, double B1);
cplx alpha1(const Alpha1Parts& parts, int sgnb, double B1);

// int_{z1}^{end} f0^(-1/2) along the straight segment, for finite end points.
cplx alpha11_segment(double A, cplx end);

struct AlphaSet {
  double A = 0;
  cplx alpha0, alpha11, alpha12_plus, alpha12_minus;
};
AlphaSet alpha_set(double A);

struct LambdaB1 {
  double Lambda0_plus, Lambda0_minus, B1_plus, B1_minus;
};
LambdaB1 lambda0_and_B1(double s1_abs);

struct Constants {
  double A_crit, C0, Lambda0_plus, Lambda0_minus;
  AlphaSet at_C0;
};
// Computed once, thread-safe.
const Constants& constants();

}  // namespace p1
