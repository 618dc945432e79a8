#pragma once

// Dormand-Prince 5(4) stepper with the standard 4th-order dense output.
// Shared by the real PI integrator and the complex linear transport in
// stokes-numeric, hence the template over the scalar type.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace p1::dopri {

template <class T, std::size_t N>
using Vec = std::array<T, N>;

template <class T>
struct real_of {
  using type = T;
};
template <class T>
struct real_of<std::complex<T>> {
  using type = T;
};

template <class T, std::size_t N>
struct Dense {
  double t0 = 0, h = 0;
  Vec<T, N> c0{}, c1{}, c2{}, c3{}, c4{};

  Vec<T, N> eval(double t) const {
    using R = typename real_of<T>::type;
    const R th = (t - t0) / h, th1 = 1 - th;
    Vec<T, N> out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = c0[i] + th * (c1[i] + th1 * (c2[i] + th * (c3[i] + th1 * c4[i])));
    return out;
  }
  // d/dt of the interpolant
  Vec<T, N> deriv(double t) const {
    using R = typename real_of<T>::type;
    const R th = (t - t0) / h;
    Vec<T, N> out;
    for (std::size_t i = 0; i < N; ++i) {
      // p(th) = c1 th + c2 th(1-th) + c3 th^2(1-th) + c4 th^2(1-th)^2
      const T d = c1[i] + c2[i] * (1 - 2 * th) + c3[i] * (2 * th - 3 * th * th) +
                  c4[i] * (2 * th * (1 - th) * (1 - th) - 2 * th * th * (1 - th));
      out[i] = d / R(h);
    }
    return out;
  }
};

// Tableau as exact rationals in the working precision R.
namespace c {
template <class R> inline constexpr R c2 = R(1) / 5;
template <class R> inline constexpr R c3 = R(3) / 10;
template <class R> inline constexpr R c4 = R(4) / 5;
template <class R> inline constexpr R c5 = R(8) / 9;
template <class R> inline constexpr R a21 = R(1) / 5;
template <class R> inline constexpr R a31 = R(3) / 40;
template <class R> inline constexpr R a32 = R(9) / 40;
template <class R> inline constexpr R a41 = R(44) / 45;
template <class R> inline constexpr R a42 = R(-56) / 15;
template <class R> inline constexpr R a43 = R(32) / 9;
template <class R> inline constexpr R a51 = R(19372) / 6561;
template <class R> inline constexpr R a52 = R(-25360) / 2187;
template <class R> inline constexpr R a53 = R(64448) / 6561;
template <class R> inline constexpr R a54 = R(-212) / 729;
template <class R> inline constexpr R a61 = R(9017) / 3168;
template <class R> inline constexpr R a62 = R(-355) / 33;
template <class R> inline constexpr R a63 = R(46732) / 5247;
template <class R> inline constexpr R a64 = R(49) / 176;
template <class R> inline constexpr R a65 = R(-5103) / 18656;
template <class R> inline constexpr R a71 = R(35) / 384;
template <class R> inline constexpr R a73 = R(500) / 1113;
template <class R> inline constexpr R a74 = R(125) / 192;
template <class R> inline constexpr R a75 = R(-2187) / 6784;
template <class R> inline constexpr R a76 = R(11) / 84;
template <class R> inline constexpr R e1 = R(71) / 57600;
template <class R> inline constexpr R e3 = R(-71) / 16695;
template <class R> inline constexpr R e4 = R(71) / 1920;
template <class R> inline constexpr R e5 = R(-17253) / 339200;
template <class R> inline constexpr R e6 = R(22) / 525;
template <class R> inline constexpr R e7 = R(-1) / 40;
template <class R> inline constexpr R d1 = R(-12715105075.0) / R(11282082432.0);
template <class R> inline constexpr R d3 = R(87487479700.0) / R(32700410799.0);
template <class R> inline constexpr R d4 = R(-10690763975.0) / R(1880347072.0);
template <class R> inline constexpr R d5 = R(701980252875.0) / R(199316789632.0);
template <class R> inline constexpr R d6 = R(-1453857185.0) / R(822651844.0);
template <class R> inline constexpr R d7 = R(69997945.0) / R(29380423.0);
}  // namespace c

template <class T>
inline double mag(const T& v) {
  using std::abs;
  return abs(v);
}

struct Result {
  double err = 0;  // scaled RMS error, accept if <= 1
};

// One trial step from (t, y) with derivative k1 = f(t, y). Writes the 5th-order
// solution to y1 and f(t+h, y1) to k7. Dense coefficients filled if requested.
// S is the time type; it matches the working precision of T so that stage
// times do not round coarser than the state.
template <class T, std::size_t N, class F, class S>
Result step(F& f, S t, const Vec<T, N>& y, const Vec<T, N>& k1, S h, double rtol,
            double atol, Vec<T, N>& y1, Vec<T, N>& k7, Dense<T, N>* dense) {
  using namespace c;
  using R = typename real_of<T>::type;
  const R hh = h;
  Vec<T, N> k2, k3, k4, k5, k6, tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hh * (a21<R> * k1[i]);
  f(t + c2<S> * h, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hh * (a31<R> * k1[i] + a32<R> * k2[i]);
  f(t + c3<S> * h, tmp, k3);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hh * (a41<R> * k1[i] + a42<R> * k2[i] + a43<R> * k3[i]);
  f(t + c4<S> * h, tmp, k4);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + hh * (a51<R> * k1[i] + a52<R> * k2[i] + a53<R> * k3[i] + a54<R> * k4[i]);
  f(t + c5<S> * h, tmp, k5);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + hh * (a61<R> * k1[i] + a62<R> * k2[i] + a63<R> * k3[i] + a64<R> * k4[i] + a65<R> * k5[i]);
  f(t + h, tmp, k6);
  for (std::size_t i = 0; i < N; ++i)
    y1[i] = y[i] + hh * (a71<R> * k1[i] + a73<R> * k3[i] + a74<R> * k4[i] + a75<R> * k5[i] + a76<R> * k6[i]);
  f(t + h, y1, k7);

  double s = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const T e = hh * (e1<R> * k1[i] + e3<R> * k3[i] + e4<R> * k4[i] + e5<R> * k5[i] + e6<R> * k6[i] + e7<R> * k7[i]);
    const double sc = atol + rtol * std::max(mag(y[i]), mag(y1[i]));
    const double q = mag(e) / sc;
    s += q * q;
  }
  Result r;
  r.err = std::sqrt(s / N);

  if (dense) {
    dense->t0 = double(t);
    dense->h = double(h);
    for (std::size_t i = 0; i < N; ++i) {
      const T dy = y1[i] - y[i];
      const T bspl = hh * k1[i] - dy;
      dense->c0[i] = y[i];
      dense->c1[i] = dy;
      dense->c2[i] = bspl;
      dense->c3[i] = dy - hh * k7[i] - bspl;
      dense->c4[i] = hh * (d1<R> * k1[i] + d3<R> * k3[i] + d4<R> * k4[i] + d5<R> * k5[i] + d6<R> * k6[i] + d7<R> * k7[i]);
    }
  }
  return r;
}

// Step-size update factor for the 5th-order controller.
inline double next_factor(double err) {
  if (err == 0) return 5.0;
  return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

}  // namespace p1::dopri
