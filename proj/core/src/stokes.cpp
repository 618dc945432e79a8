#include "p1/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "p1/cubic.hpp"
#include "p1/dopri.hpp"
#include "p1/error.hpp"

namespace p1 {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I1(0.0, 1.0);
}  // namespace

const char* label_name(Label l) {
  switch (l) {
    case Label::A: return "A";
    case Label::B: return "B";
    case Label::C: return "C";
    case Label::undecided: return "undecided";
  }
  return "?";
}

cplx potential(cplx lambda, double r, double b) {
  if (lambda == 0.0) throw Error(ErrorCode::ApparentSingularity);
  const cplx l2 = lambda * lambda;
  return 4.0 * l2 * lambda + 2.0 * r * lambda + b * b - b / lambda + 0.75 / l2;
}

ScaledJet wronskian(const ScaledJet& a, const ScaledJet& b) {
  return {a.phi * b.dphi - a.dphi * b.phi, 0.0, a.log_scale + b.log_scale};
}

namespace {

// Jet in working precision R.
template <class R>
struct Jet {
  std::complex<R> phi, dphi, log_scale;
};

template <class R>
std::vector<std::complex<R>> riccati_in(double r, double b, int sign, int jmax) {
  using C = std::complex<R>;
  std::vector<C> a(static_cast<std::size_t>(jmax) + 1, C(0));
  auto Q = [&](int k) -> R {
    switch (k) {
      case 0: return 4;
      case 4: return 2 * R(r);
      case 6: return R(b) * R(b);
      case 8: return -R(b);
      case 10: return R(0.75);
    }
    return 0;
  };
  a[0] = R(2 * sign);
  for (int k = 1; k <= jmax; ++k) {
    C s = Q(k);
    if (k >= 5) s -= R(0.5) * R(8 - k) * a[static_cast<std::size_t>(k - 5)];
    for (int i = 1; i < k; ++i) s -= a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(k - i)];
    a[static_cast<std::size_t>(k)] = s / (R(2) * a[0]);
  }
  return a;
}

// lambda^p on the cover
template <class R>
std::complex<R> cpow_in(CoverPoint l, R p) {
  return std::polar(std::pow(R(l.mod), p), p * R(l.arg));
}

template <class R>
Jet<R> formal_in(CoverPoint lam, double r, double b, int sign, int trunc) {
  using C = std::complex<R>;
  constexpr int kJmax = 160;
  const auto a = riccati_in<R>(r, b, sign, kJmax);
  const C loglam(std::log(R(lam.mod)), R(lam.arg));
  C logphi = -std::log(R(2)) / R(2) + a[5] * loglam;
  C w = 0;
  for (int j = 0; j <= 4; ++j) {
    logphi += a[static_cast<std::size_t>(j)] * cpow_in<R>(lam, R(5 - j) / 2) * (R(2) / R(5 - j));
    w += a[static_cast<std::size_t>(j)] * cpow_in<R>(lam, R(3 - j) / 2);
  }
  w += a[5] / std::polar(R(lam.mod), R(lam.arg));
  int jlast = std::min(kJmax, 5 + trunc);
  if (trunc < 0) {
    // The terms oscillate in size, so truncate where the envelope (max over 5
    // consecutive terms) is smallest.
    std::vector<double> m(kJmax + 1, 0.0);
    for (int j = 6; j <= kJmax; ++j)
      m[static_cast<std::size_t>(j)] =
          double(std::abs(a[static_cast<std::size_t>(j)])) * std::pow(lam.mod, 0.5 * (5 - j));
    double best = std::numeric_limits<double>::infinity();
    jlast = 5;
    for (int j = 6; j + 4 <= kJmax; ++j) {
      const double env = *std::max_element(m.begin() + j, m.begin() + j + 5);
      if (env < best) {
        best = env;
        jlast = j - 1;
      }
      if (env < 1e-18) break;
    }
  }
  for (int j = 6; j <= jlast; ++j) {
    const C aj = a[static_cast<std::size_t>(j)];
    logphi += aj * cpow_in<R>(lam, R(5 - j) / 2) * (R(2) / R(5 - j));
    w += aj * cpow_in<R>(lam, R(3 - j) / 2);
  }
  return {C(1), w, logphi};
}

int recessive_sign(double arg) {
  const double c = std::cos(2.5 * arg);
  if (std::abs(c) < 1e-3) throw Error(ErrorCode::AmbiguousDominance, "arg lambda = " + std::to_string(arg));
  return c > 0 ? -1 : 1;
}

}  // namespace

std::vector<cplx> riccati_coeffs(double r, double b, int sign, int jmax) { return riccati_in<double>(r, b, sign, jmax); }

ScaledJet formal_solution(CoverPoint lam, double r, double b, int sign, int trunc) {
  const auto j = formal_in<double>(lam, r, b, sign, trunc);
  return {j.phi, j.dphi, j.log_scale};
}

CanonicalPair canonical_pair(CoverPoint lam, double r, double b, int trunc) {
  CanonicalPair p;
  p.recessive_sign = recessive_sign(lam.arg);
  p.recessive = formal_solution(lam, r, b, p.recessive_sign, trunc);
  p.dominant = formal_solution(lam, r, b, -p.recessive_sign, trunc);
  return p;
}

double max_turning_point(double r, double b) {
  if (b == 0) return std::sqrt(std::abs(r) / 2);
  // lambda = q^(1/3) z turns 4 lambda^3 + 2 r lambda + b^2 into z^3 + A z + 1
  const double q = b * b / 4;
  const double A = 0.5 * r * std::pow(q, -2.0 / 3.0);
  const auto c = cubic_roots(A);
  return std::cbrt(q) * std::max({std::abs(c.z0), std::abs(c.z1), std::abs(c.z2)});
}

double default_radius(double r, double b) { return std::max(4.0, 2.5 * max_turning_point(r, b)); }

namespace {

// Wronskians whose terms cancel by more than this are not trusted.
constexpr double kCondMax = 1e6;

template <class R>
std::complex<R> potential_r(std::complex<R> lambda, R r, R b) {
  const std::complex<R> l2 = lambda * lambda;
  return R(4) * l2 * lambda + R(2) * r * lambda + b * b - b / lambda + R(0.75) / l2;
}

template <class R>
double cancellation(const Jet<R>& a, const Jet<R>& b, std::complex<R> w) {
  const R terms = std::abs(a.phi * b.dphi) + std::abs(a.dphi * b.phi);
  return w == std::complex<R>(0) ? std::numeric_limits<double>::infinity() : double(terms / std::abs(w));
}

template <class R>
void renormalize(dopri::Vec<std::complex<R>, 2>& y, dopri::Vec<std::complex<R>, 2>& k,
                 std::complex<R>& log_scale) {
  const R m = std::max(std::abs(y[0]), std::abs(y[1]));
  if (m == 0 || !std::isfinite(m)) return;
  for (auto* v : {&y, &k}) {
    (*v)[0] /= m;
    (*v)[1] /= m;
  }
  log_scale += std::log(m);
}

// path(tau, lambda, dlambda/dtau), tau in [0, tau_end]
template <class R, class P>
long transport(Jet<R>& jet, P&& path, double tau_end, double r, double b, double tol) {
  using C = std::complex<R>;
  using V2 = dopri::Vec<C, 2>;
  auto f = [&](R tau, const V2& v, V2& out) {
    C lam, dl;
    path(tau, lam, dl);
    out[0] = v[1] * dl;
    out[1] = potential_r<R>(lam, r, b) * v[0] * dl;
  };
  V2 y{jet.phi, jet.dphi}, k1, y1, k7;
  C ls = jet.log_scale;
  const R t_end = tau_end;
  R t = 0;
  f(t, y, k1);
  renormalize(y, k1, ls);
  C lam0, dl0;
  path(R(0), lam0, dl0);
  R h = std::min<R>(t_end, R(0.05) / (1 + std::sqrt(std::abs(potential_r<R>(lam0, r, b))) * std::abs(dl0)));
  long steps = 0;
  const double atol = tol * 1e-6;
  while (t < t_end) {
    const bool last = t + h >= t_end;
    if (last) h = t_end - t;
    const auto res = dopri::step(f, t, y, k1, h, tol, atol, y1, k7, static_cast<dopri::Dense<C, 2>*>(nullptr));
    if (res.err <= 1) {
      t = last ? t_end : t + h;
      y = y1;
      k1 = k7;
      renormalize(y, k1, ls);
      ++steps;
    }
    if (!std::isfinite(res.err) || h < R(1e-14) * t_end || steps > 5'000'000)
      throw Error(ErrorCode::MonodromyNotConverged, "transport step failure");
    h *= R(dopri::next_factor(res.err));
  }
  jet = {y[0], y[1], ls};
  return steps;
}

}  // namespace

void fill_residuals(StokesVector& sv) {
  sv.residual_constraint = sv.residual_symmetry = sv.residual_scaled = 0;
  for (int k = -2; k <= 2; ++k) {
    const cplx p = sv.at(k + 2) * sv.at(k + 3);
    const double d = std::abs(sv.at(k) - I1 * (1.0 + p));
    sv.defect[static_cast<std::size_t>(k + 2)] = d;
    sv.residual_constraint = std::max(sv.residual_constraint, d);
    sv.residual_scaled = std::max(sv.residual_scaled, d / (1 + std::abs(p)));
    sv.residual_symmetry = std::max(sv.residual_symmetry, std::abs(sv.at(-k) + std::conj(sv.at(k))));
  }
}

namespace {

template <class R>
StokesVector compute_stokes_in(double r, double b, const MonodromyConfig& cfg) {
  using C = std::complex<R>;
  StokesVector sv;
  const double tp = max_turning_point(r, b);
  const double Rm = cfg.R > 0 ? cfg.R : default_radius(r, b);
  if (!(Rm > 2 * tp))
    throw Error(ErrorCode::InvalidArgument, "matching radius must exceed twice the turning-point radius");
  if (!cfg.ray_angles.empty() && cfg.ray_angles.size() != 7)
    throw Error(ErrorCode::InvalidArgument, "ray_angles needs 7 entries (m = -3..3)");
  sv.R = Rm;
  const double hub = cfg.hub > 0 ? cfg.hub : std::min(0.45, 1 / (1 + std::abs(b)));

  std::array<Jet<R>, 7> rho;  // rho_{-3..3} at lambda = hub
  for (int m = -3; m <= 3; ++m) {
    const double centre = 2 * m * kPi / 5;
    const double al = cfg.ray_angles.empty() ? centre : cfg.ray_angles[static_cast<std::size_t>(m + 3)];
    if (!(std::abs(al - centre) < kPi / 5))
      throw Error(ErrorCode::InvalidArgument, "ray angle outside the overlap of adjacent sectors");
    const bool even = m % 2 == 0;
    const int sign = recessive_sign(al);
    if (sign != (even ? -1 : 1))
      throw Error(ErrorCode::AmbiguousDominance, "ray angle on the wrong side of a Stokes ray");
    Jet<R> j = formal_in<R>({Rm, al}, r, b, sign, cfg.trunc);
    if (even) {
      j.phi = -j.phi;
      j.dphi = -j.dphi;
    }
    const C e = std::polar<R>(1, al);
    const R R0 = Rm, h0 = hub;
    long steps = transport(
        j, [&](R tau, C& lam, C& dl) { lam = e * (R0 - tau); dl = -e; }, Rm - hub, r, b, cfg.ode_tol);
    if (al != 0) {
      const R sg = al > 0 ? 1 : -1, alr = al;
      steps += transport(
          j,
          [&](R tau, C& lam, C& dl) {
            lam = std::polar<R>(h0, alr - sg * tau);
            dl = -C(0, 1) * sg * lam;
          },
          std::abs(al), r, b, cfg.ode_tol);
    }
    rho[static_cast<std::size_t>(m + 3)] = j;
    sv.rays.push_back({al, steps});
  }

  auto R_ = [&](int m) -> const Jet<R>& { return rho[static_cast<std::size_t>(m + 3)]; };
  auto idx = [](int k) { return static_cast<std::size_t>(((k + 2) % 5 + 5) % 5); };
  auto wr = [](const Jet<R>& p, const Jet<R>& q) { return p.phi * q.dphi - p.dphi * q.phi; };
  sv.normalization_defect = 0;
  for (int k = -2; k <= 2; ++k) {
    const auto i = idx(k);
    // W(rho_{k-1}, rho_k) is fixed by the normalization at infinity; the
    // computed value is only a diagnostic, since at large b adjacent rho are
    // nearly parallel at the hub.
    const R w_exact = k % 2 == 0 ? 2 : -2;
    const C den = wr(R_(k - 1), R_(k));
    const double den_cond = cancellation(R_(k - 1), R_(k), den);
    if (den_cond < kCondMax)
      sv.normalization_defect = std::max(
          sv.normalization_defect,
          double(std::abs(den * std::exp(R_(k - 1).log_scale + R_(k).log_scale) - w_exact)));
    const C num = wr(R_(k - 1), R_(k + 1));
    const C ls = R_(k - 1).log_scale + R_(k + 1).log_scale;
    sv.cond[i] = cancellation(R_(k - 1), R_(k + 1), num);
    const C sk = num / w_exact * std::exp(ls);
    sv.s[i] = cplx(double(sk.real()), double(sk.imag()));
    sv.log_abs[i] = double(std::log(std::abs(num)) - std::log(R(2)) + ls.real());
  }
  // Rebuild badly cancelled entries from the constraint
  // s_{k-3} = i(1 + s_{k-1} s_k), or s_{k-2} = i(1 + s_k s_{k+1}).
  const auto cond0 = sv.cond;
  for (int k = -2; k <= 2; ++k) {
    const auto i = idx(k);
    if (cond0[i] < kCondMax) continue;
    double best = kCondMax;
    for (const auto& [a, d] : {std::pair{k - 3, k - 1}, std::pair{k - 2, k + 1}}) {
      const double c = std::max(cond0[idx(a)], cond0[idx(d)]);
      const cplx top = -I1 * sv.s[idx(a)] - 1.0;
      if (c >= best || std::abs(top) < 1e-4 * (1 + std::abs(sv.s[idx(a)]))) continue;
      best = c;
      sv.s[i] = top / sv.s[idx(d)];
      sv.log_abs[i] = std::log(std::abs(top)) - sv.log_abs[idx(d)];
      sv.cond[i] = c;
      sv.derived[i] = true;
    }
  }
  fill_residuals(sv);
  if (std::isfinite(cfg.threshold) && !(sv.residual_scaled <= cfg.threshold)) {
    std::ostringstream os;
    os << "scaled constraint residual " << sv.residual_scaled << " at R = " << Rm << "; steps per ray";
    for (const auto& d : sv.rays) os << ' ' << d.steps;
    throw Error(ErrorCode::MonodromyNotConverged, os.str());
  }
  return sv;
}

}  // namespace

StokesVector compute_stokes(double r, double b, const MonodromyConfig& cfg) {
  return cfg.extended ? compute_stokes_in<long double>(r, b, cfg) : compute_stokes_in<double>(r, b, cfg);
}

SolutionClass classify_from_stokes(const StokesVector& sv, double tol_cls) {
  SolutionClass c;
  const double im = sv.at(0).imag();
  std::ostringstream os;
  os.precision(6);
  os << "Im s0 = " << im;
  if (im > tol_cls) {
    c.label = Label::A;
  } else if (im < -tol_cls) {
    c.label = Label::C;
  } else {
    c.label = Label::B;
    os << " (boundary within tolerance)";
  }
  c.confidence = c.label == Label::B ? 1.0 - std::abs(im) / tol_cls : std::min(1.0, std::abs(im) / (100 * tol_cls));
  if (c.label == Label::B && c.confidence <= 0) c.confidence = 1e-3;
  c.evidence = os.str();
  return c;
}

}  // namespace p1
