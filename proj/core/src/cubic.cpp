#include "p1/cubic.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "p1/error.hpp"

namespace p1 {

namespace {

constexpr double kPi = std::numbers::pi;

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Quad {
  cplx value;
  double err;
};

template <class F>
Quad gk(F&& f, double a, double b, double tol = 2e-14) {
  double err = 0;
  const cplx v = GK::integrate(f, a, b, 12, tol, &err);
  return {v, err};
}

cplx polish(double A, cplx z) {
  for (int i = 0; i < 8; ++i) {
    const cplx p = z * z * z + A * z + 1.0;
    const cplx dp = 3.0 * z * z + A;
    if (std::abs(dp) == 0) break;
    const cplx dz = p / dp;
    z -= dz;
    if (std::abs(dz) < 1e-17 * std::abs(z)) break;
  }
  return z;
}

}  // namespace

CubicData cubic_roots(double A) {
  CubicData c;
  c.A = A;
  // depressed cubic t^3 + p t + q with p = A, q = 1
  const double p = A, q = 1.0;
  const double disc = -(4 * p * p * p + 27 * q * q);
  if (disc >= 0) {
    // three real roots
    const double m = 2 * std::sqrt(-p / 3);
    const double arg = std::clamp(3 * q / (p * m) , -1.0, 1.0);
    const double phi = std::acos(arg) / 3;
    std::vector<double> r = {m * std::cos(phi), m * std::cos(phi - 2 * kPi / 3),
                             m * std::cos(phi - 4 * kPi / 3)};
    std::sort(r.begin(), r.end());
    for (auto& x : r) x = polish(A, x).real();
    c.z0 = r[0];
    c.z1 = r[2];
    c.z2 = r[1];
    c.real_roots = true;
    return c;
  }
  double t0;
  if (p == 0) {
    t0 = -1.0;
  } else if (p < 0) {
    const double s = std::sqrt(-p / 3);
    t0 = -2 * s * std::cosh(std::acosh(-3 * q / (2 * p) / s) / 3);
  } else {
    const double s = std::sqrt(p / 3);
    t0 = -2 * s * std::sinh(std::asinh(3 * q / (2 * p) / s) / 3);
  }
  t0 = polish(A, t0).real();
  // remaining pair: z^2 + z0 z - 1/z0 = 0
  const cplx dq = std::sqrt(cplx(t0 * t0 + 4.0 / t0, 0.0));
  const cplx a = polish(A, (-t0 + dq) / 2.0);
  const cplx zz(a.real(), std::abs(a.imag()));
  c.z0 = t0;
  c.z1 = zz;
  c.z2 = std::conj(zz);
  return c;
}

cplx branch_sqrt(cplx w, double lb) {
  double th = std::atan2(w.imag(), w.real());
  if (th < lb) th += 2 * kPi;
  if (th >= lb + 2 * kPi) th -= 2 * kPi;
  return std::polar(std::sqrt(std::abs(w)), th / 2);
}

cplx f0_sqrt(cplx d0, cplx d1, cplx d2) {
  return 2.0 * branch_sqrt(d0, -kPi) * branch_sqrt(d1, -kPi / 2) * branch_sqrt(d2, -kPi / 2);
}

namespace {

// u = (1 - cos(pi v)) / 2 smooths the square-root zeros at both ends.
template <class G>
Quad smooth_segment(G&& g, double u0, double u1) {
  auto f = [&](double v) {
    const double u = u0 + (u1 - u0) * 0.5 * (1 - std::cos(kPi * v));
    const double du = (u1 - u0) * 0.5 * kPi * std::sin(kPi * v);
    return g(u) * du;
  };
  return gk(f, 0.0, 1.0);
}

Quad kappa2_integral(const CubicData& c) {
  const cplx z0 = c.z0, z1 = c.z1, z2 = c.z2;
  auto g = [&](double u) {
    return f0_sqrt(z1 - z0 + (z2 - z1) * u, (z2 - z1) * u, (z1 - z2) * (1 - u)) * (z2 - z1);
  };
  return smooth_segment(g, 0.0, 1.0);
}

Quad kappa_hat2_integral(const CubicData& c) {
  const cplx z0 = c.z0, z1 = c.z1, z2 = c.z2;
  if (!c.real_roots) {
    auto g = [&](double u) {
      return f0_sqrt((z1 - z0) * u, (z0 - z1) * (1 - u), z0 - z2 + (z1 - z0) * u) * (z1 - z0);
    };
    return smooth_segment(g, 0.0, 1.0);
  }
  const double L = (z1 - z0).real();
  const double u2 = (z2 - z0).real() / L;
  auto g = [&](double u) {
    return f0_sqrt(cplx(L * u, 0.0), cplx(-L * (1 - u), 0.0), cplx(L * (u - u2), 0.0)) * L;
  };
  const auto a = smooth_segment(g, 0.0, u2), b = smooth_segment(g, u2, 1.0);
  return {a.value + b.value, a.err + b.err};
}

}  // namespace

cplx kappa2(double A) {
  if (std::abs(A - A_crit) < 1e-6) return 0.0;
  return kappa_pair(A).kappa2;
}

cplx kappa2_literal(double A) {
  const auto c = cubic_roots(A);
  return 2.0 / (kPi * cplx(0, 1)) * kappa2_integral(c).value;
}

KappaPair kappa_pair(double A) {
  KappaPair k;
  const auto c = cubic_roots(A);
  const cplx pre = 2.0 / (kPi * cplx(0, 1));
  if (std::abs(A - A_crit) < 1e-6) {
    k.kappa2 = 0;
    k.coalesced = true;
    throw Error(ErrorCode::CoalescingTurningPoints, "kappa_hat2 path collapses at A_crit");
  }
  const auto q2 = kappa2_integral(c);
  const auto qh = kappa_hat2_integral(c);
  k.kappa2 = pre * q2.value;
  // continuation through A_crit: the literal branches give the wrong sign on
  // the real-root side
  if (c.real_roots) k.kappa2 = -k.kappa2;
  k.kappa2.imag(0.0);
  k.kappa_hat2 = pre * qh.value;
  k.err = (q2.err + qh.err) * 2 / kPi;
  return k;
}

namespace {

double im_kappa_hat2(double A) { return kappa_pair(A).kappa_hat2.imag(); }

double C0_uncached() {
  const double lo = 1.5, hi = 2.5;
  const double flo = im_kappa_hat2(lo), fhi = im_kappa_hat2(hi);
  if (!(flo > 0 && fhi < 0)) throw Error(ErrorCode::SignStructureViolated);
  boost::uintmax_t it = 200;
  auto r = boost::math::tools::toms748_solve(
      im_kappa_hat2, lo, hi, flo, fhi,
      [](double a, double b) { return std::abs(a - b) < 1e-15; }, it);
  return 0.5 * (r.first + r.second);
}

}  // namespace

double find_C0() { return constants().C0; }

double find_C0_secant() {
  double a = 1.9, b = 2.1, fa = im_kappa_hat2(a), fb = im_kappa_hat2(b);
  for (int i = 0; i < 60 && fb != fa; ++i) {
    const double c = b - fb * (b - a) / (fb - fa);
    a = b;
    fa = fb;
    b = c;
    fb = im_kappa_hat2(b);
    if (std::abs(b - a) < 1e-15) break;
  }
  return b;
}

// ---------------------------------------------------------------- alpha

namespace {

double dist_to_ray(cplx p, cplx z1, cplx e) {
  const cplx d = (p - z1) / e;
  if (d.real() <= 0) return std::abs(p - z1);
  return std::abs(d.imag());
}

double pick_theta(const CubicData& c, double theta, bool avoid_origin) {
  for (int k = 0; k < 9; ++k) {
    const double th = theta + (k % 2 ? 1 : -1) * ((k + 1) / 2) * kPi / 20;
    if (k > 0 && (th < 0 || th > 4 * kPi / 5)) continue;
    const double tt = k == 0 ? theta : th;
    const cplx e = std::polar(1.0, tt);
    double d = std::min(dist_to_ray(c.z0, c.z1, e), dist_to_ray(c.z2, c.z1, e));
    if (avoid_origin) d = std::min(d, dist_to_ray(0.0, c.z1, e));
    if (d > 1e-3) return tt;
  }
  throw Error(ErrorCode::ContourObstruction);
}

constexpr double kW = 1000.0;  // ray truncated at |s - z1| = 1e6

// Integrates g(s, f0^(1/2)(s)) ds along s = z1 + e w^2, w in [0, kW]. The root
// differences are formed from e w^2 so that s - z1 never rounds to zero.
template <class G>
cplx ray_integral(G&& g, const CubicData& c, cplx e) {
  auto f = [&](double w) {
    const cplx d = e * (w * w);
    const cplx s = c.z1 + d;
    return g(s, f0_sqrt(c.z1 - c.z0 + d, d, c.z1 - c.z2 + d)) * (2.0 * w) * e;
  };
  const double cuts[] = {0, 0.5, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, kW};
  cplx s = 0;
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) s += gk(f, cuts[i], cuts[i + 1]).value;
  return s;
}

}  // namespace

cplx alpha0(double A, double theta) {
  if (std::abs(A - A_crit) < 1e-6) throw Error(ErrorCode::CoalescingTurningPoints);
  const auto c = cubic_roots(A);
  const double th = pick_theta(c, theta, false);
  const cplx e = std::polar(1.0, th);
  auto g = [&](cplx s, cplx fs) -> cplx {
    const cplx s32 = std::pow(s, 1.5);
    const cplx x = A / (s * s) + 1.0 / (s * s * s);
    if (std::abs(x) < 0.5) {
      // f0^(1/2)/2 - s^(3/2) - (A/2) s^(-1/2) without cancellation
      const cplx r = std::sqrt(1.0 + x);
      return 2.0 * s32 * (-x * x / (2.0 * (r + 1.0) * (r + 1.0)) + 0.5 / (s * s * s));
    }
    return 2.0 * (0.5 * fs - s32 - 0.5 * A / std::sqrt(s));
  };
  cplx I = ray_integral(g, c, e);
  const cplx S = c.z1 + e * (kW * kW);
  I += 2.0 / std::sqrt(S) - (A * A / 6.0) / (S * std::sqrt(S));
  return I - (0.8 * std::pow(c.z1, 2.5) + 2.0 * A * std::sqrt(c.z1));
}

Alpha1Parts alpha1_parts(double A, double theta) {
  if (std::abs(A - A_crit) < 1e-6) throw Error(ErrorCode::CoalescingTurningPoints);
  const auto c = cubic_roots(A);
  const double th = pick_theta(c, theta, true);
  const cplx e = std::polar(1.0, th);
  const cplx S = c.z1 + e * (kW * kW);
  const cplx rS = std::sqrt(S);
  Alpha1Parts p;
  p.a11 = ray_integral([](cplx, cplx fs) { return 1.0 / fs; }, c, e);
  p.a11 += 1.0 / rS - (A / 10.0) / (S * S * rS);
  cplx j = ray_integral([](cplx s, cplx fs) { return 1.0 / (s * fs); }, c, e);
  j += (1.0 / 3.0) / (S * rS);
  p.a12p = -j;
  p.a12m = j;
  return p;
}

cplx alpha1(const Alpha1Parts& parts, int sgnb, double B1) {
  return 2.0 * B1 * parts.a11 + (sgnb >= 0 ? parts.a12p : parts.a12m);
}

cplx alpha1(double A, int sgnb, double B1) { return alpha1(alpha1_parts(A), sgnb, B1); }

cplx alpha11_segment(double A, cplx end) {
  const auto c = cubic_roots(A);
  const cplx L = end - c.z1;
  // s = z1 + L v^2
  auto f = [&](double v) {
    const cplx d = L * (v * v);
    return 2.0 * v * L / f0_sqrt(c.z1 - c.z0 + d, d, c.z1 - c.z2 + d);
  };
  const double cuts[] = {0, 0.01, 0.03, 0.1, 0.3, 1.0};
  cplx s = 0;
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) s += gk(f, cuts[i], cuts[i + 1]).value;
  return s;
}

AlphaSet alpha_set(double A) {
  AlphaSet s;
  s.A = A;
  s.alpha0 = alpha0(A);
  const auto p = alpha1_parts(A);
  s.alpha11 = p.a11;
  s.alpha12_plus = p.a12p;
  s.alpha12_minus = p.a12m;
  return s;
}

LambdaB1 lambda0_and_B1(double s1_abs) {
  if (!(s1_abs > 0)) throw Error(ErrorCode::InvalidArgument, "|s1| must be positive");
  const auto& k = constants();
  const double re11 = k.at_C0.alpha11.real();
  if (re11 == 0) throw Error(ErrorCode::DegenerateInversion);
  LambdaB1 r;
  r.Lambda0_plus = k.Lambda0_plus;
  r.Lambda0_minus = k.Lambda0_minus;
  r.B1_plus = (std::log(s1_abs) - 2 * k.at_C0.alpha12_plus.real()) / (4 * re11);
  r.B1_minus = (std::log(s1_abs) - 2 * k.at_C0.alpha12_minus.real()) / (4 * re11);
  return r;
}

const Constants& constants() {
  static const Constants k = [] {
    Constants c;
    c.A_crit = A_crit;
    c.C0 = C0_uncached();
    c.at_C0 = alpha_set(c.C0);
    const double re11 = c.at_C0.alpha11.real();
    if (re11 == 0) throw Error(ErrorCode::DegenerateInversion);
    c.Lambda0_plus = (-std::log(2.0) - 2 * c.at_C0.alpha12_plus.real()) / (4 * re11);
    c.Lambda0_minus = (-std::log(2.0) - 2 * c.at_C0.alpha12_minus.real()) / (4 * re11);
    return c;
  }();
  return k;
}

}  // namespace p1
