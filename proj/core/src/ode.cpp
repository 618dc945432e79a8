#include "p1/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "p1/error.hpp"

namespace p1 {

const char* side_name(Side s) { return s == Side::plus ? "plus" : "minus"; }

namespace {

using V2 = dopri::Vec<double, 2>;

struct PiRhs {
  void operator()(double t, const V2& y, V2& dy) const {
    dy[0] = y[1];
    dy[1] = 6.0 * y[0] * y[0] + t;
  }
};

constexpr int kLaurentMax = 160;

// c_k together with dc_k/dp and dc_k/dH.
struct LaurentJet {
  std::vector<double> c, cp, cH;
};

LaurentJet laurent_jet(const PoleDatum& pole, int kmax) {
  LaurentJet j;
  j.c.assign(kmax + 1, 0.0);
  j.cp.assign(kmax + 1, 0.0);
  j.cH.assign(kmax + 1, 0.0);
  j.c[0] = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    if (k == 6) {
      j.c[6] = pole.H;
      j.cH[6] = 1.0;
      continue;
    }
    double s = 0, sp = 0, sH = 0;
    for (int i = 1; i < k; ++i) {
      s += j.c[i] * j.c[k - i];
      sp += 2.0 * j.cp[i] * j.c[k - i];
      sH += 2.0 * j.cH[i] * j.c[k - i];
    }
    s *= 6.0;
    sp *= 6.0;
    sH *= 6.0;
    if (k == 4) {
      s += pole.p;
      sp += 1.0;
    }
    if (k == 5) s += 1.0;
    const double den = double(k - 6) * double(k + 1);
    j.c[k] = s / den;
    j.cp[k] = sp / den;
    j.cH[k] = sH / den;
  }
  return j;
}

struct LaurentEval {
  double y, dy;          // at p + u
  double y_p, y_H;       // derivatives of y w.r.t. p and H at fixed t
  double dy_p, dy_H;
};

// Evaluates at fixed t = p + u. Since u = t - p, d/dp at fixed t picks up -d/du.
LaurentEval laurent_eval(const LaurentJet& j, double u) {
  const int kmax = int(j.c.size()) - 1;
  double S = 0, dS = 0, ddS = 0, Sp = 0, SH = 0, dSp = 0, dSH = 0;
  int quiet = 0;
  double up = 1.0;  // u^k
  int k = 0;
  for (; k <= kmax; ++k) {
    const double tk = j.c[k] * up;
    S += tk;                                     // sum c_k u^k
    dS += (k - 2) * tk;
    ddS += double(k - 2) * (k - 3) * tk;
    Sp += j.cp[k] * up;
    SH += j.cH[k] * up;
    dSp += (k - 2) * j.cp[k] * up;
    dSH += (k - 2) * j.cH[k] * up;
    const double mag = std::abs(tk) * std::max(1, std::abs(k - 3) * std::abs(k - 2));
    // special poles (p = H = 0) only populate every fifth coefficient
    if (k > 8 && mag < 1e-17 * std::abs(S)) {
      if (++quiet >= 8) break;
    } else {
      quiet = 0;
    }
    if (k > 20 && std::abs(tk) > 1e6 * std::abs(S)) k = kmax;
    up *= u;
  }
  if (k > kmax) throw Error(ErrorCode::OffsetTooLarge, "Laurent series did not settle");
  const double u2 = u * u, u3 = u2 * u;
  LaurentEval e;
  e.y = S / u2;
  e.dy = dS / u3;
  // y(t; p, H) = sum c_k(p,H) (t-p)^(k-2): dy/dp = sum dc_k/dp u^(k-2) - y'(t)
  e.y_p = Sp / u2 - e.dy;
  e.y_H = SH / u2;
  e.dy_p = dSp / u3 - ddS / (u2 * u2);
  e.dy_H = dSH / u3;
  return e;
}

}  // namespace

std::vector<double> laurent_coeffs(const PoleDatum& pole, int kmax) {
  return laurent_jet(pole, kmax).c;
}

double laurent_radius(const PoleDatum& pole) {
  const auto c = laurent_coeffs(pole, 80);
  double g = 0;
  for (int k = 40; k <= 80; ++k)
    if (c[k] != 0) g = std::max(g, std::pow(std::abs(c[k]), 1.0 / k));
  return g > 0 ? 1.0 / g : std::numeric_limits<double>::infinity();
}

RealState laurent_state(const PoleDatum& pole, double u) {
  if (u == 0 || !std::isfinite(u)) throw Error(ErrorCode::OffsetTooLarge, "offset must be nonzero");
  const double rad = laurent_radius(pole);
  if (std::abs(u) > 0.7 * rad)
    throw Error(ErrorCode::OffsetTooLarge, "|delta| beyond 0.7 of the series radius");
  const auto j = laurent_jet(pole, kLaurentMax);
  const auto e = laurent_eval(j, u);
  return {pole.p + u, e.y, e.dy};
}

RealState restart_from_pole(const PoleDatum& pole, double delta) { return laurent_state(pole, delta); }

PoleDatum fit_pole(std::span<const RealState> tail) {
  if (tail.empty()) throw Error(ErrorCode::NotAPole, "empty tail");
  for (const auto& s : tail)
    if (!(s.y > 0) || !std::isfinite(s.y) || !std::isfinite(s.dy))
      throw Error(ErrorCode::NotAPole, "tail is not a positive blowup");
  // start from the sample nearest the pole
  const auto& last =
      *std::max_element(tail.begin(), tail.end(), [](auto& a, auto& b) { return a.y < b.y; });
  PoleDatum P{last.t + 2.0 * last.y / last.dy, 0.0};
  if (!std::isfinite(P.p)) throw Error(ErrorCode::NotAPole, "flat tail");

  for (int it = 0; it < 60; ++it) {
    const auto j = laurent_jet(P, kLaurentMax);
    // normal equations of the relative residuals
    double A11 = 0, A12 = 0, A22 = 0, g1 = 0, g2 = 0;
    for (const auto& s : tail) {
      const double u = s.t - P.p;
      if (u == 0) throw Error(ErrorCode::NotAPole, "sample on the pole");
      const auto e = laurent_eval(j, u);
      const double w0 = 1.0 / s.y, w1 = 1.0 / std::abs(s.dy);
      const double r0 = (e.y - s.y) * w0, r1 = (e.dy - s.dy) * w1;
      const double J0p = e.y_p * w0, J0H = e.y_H * w0;
      const double J1p = e.dy_p * w1, J1H = e.dy_H * w1;
      A11 += J0p * J0p + J1p * J1p;
      A12 += J0p * J0H + J1p * J1H;
      A22 += J0H * J0H + J1H * J1H;
      g1 += J0p * r0 + J1p * r1;
      g2 += J0H * r0 + J1H * r1;
    }
    const double det = A11 * A22 - A12 * A12;
    if (!(std::abs(det) > 0)) throw Error(ErrorCode::NotAPole, "singular fit");
    const double dp = -(A22 * g1 - A12 * g2) / det;
    const double dH = -(A11 * g2 - A12 * g1) / det;
    P.p += dp;
    P.H += dH;
    if (std::abs(dp) < 1e-15 * (1 + std::abs(P.p)) && std::abs(dH) < 1e-12 * (1 + std::abs(P.H)))
      break;
  }
  // validate
  const auto j = laurent_jet(P, kLaurentMax);
  double worst = 0;
  for (const auto& s : tail) {
    LaurentEval e;
    try {
      e = laurent_eval(j, s.t - P.p);
    } catch (const Error&) {
      throw Error(ErrorCode::NotAPole, "tail outside the series disc");
    }
    worst = std::max(worst, std::abs(e.y - s.y) / s.y);
    worst = std::max(worst, std::abs(e.dy - s.dy) / std::abs(s.dy));
  }
  if (!(worst < 1e-6)) throw Error(ErrorCode::NotAPole, "Laurent fit residual too large");
  return P;
}

// ---------------------------------------------------------------- integrate

int Trajectory::direction() const {
  if (samples.size() < 2) return 1;
  return samples.back().t >= samples.front().t ? 1 : -1;
}

namespace {

const Dense2* find_step(const std::vector<Dense2>& steps, double t, int dir) {
  if (steps.empty()) return nullptr;
  // steps are ordered along the direction of integration
  auto key = [dir](const Dense2& d) { return dir * d.t0; };
  auto it = std::upper_bound(steps.begin(), steps.end(), dir * t,
                             [&](double v, const Dense2& d) { return v < key(d); });
  if (it == steps.begin()) return nullptr;
  --it;
  const double a = it->t0, b = it->t0 + it->h;
  if (dir * (t - a) < 0 || dir * (t - b) > 0) return nullptr;
  return &*it;
}

}  // namespace

std::optional<RealState> Trajectory::at(double t) const {
  if (samples.size() == 1 && samples.front().t == t) return samples.front();
  const auto* d = find_step(steps, t, direction());
  if (!d) return std::nullopt;
  const auto v = d->eval(t);
  return RealState{t, v[0], v[1]};
}

std::optional<double> Trajectory::residual(double t) const {
  const auto* d = find_step(steps, t, direction());
  if (!d) return std::nullopt;
  const auto v = d->eval(t);
  const auto dv = d->deriv(t);
  return std::abs(dv[1] - 6.0 * v[0] * v[0] - t);
}

Trajectory integrate(const RealState& start, double t_end, const IntegratorOptions& opts) {
  if (!std::isfinite(start.t) || !std::isfinite(start.y) || !std::isfinite(start.dy) ||
      !std::isfinite(t_end))
    throw Error(ErrorCode::InvalidArgument, "non-finite start state");
  if (!(opts.rtol > 0) || !(opts.atol > 0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");

  Trajectory tr;
  tr.rtol = opts.rtol;
  tr.atol = opts.atol;
  tr.samples.push_back(start);
  if (t_end == start.t) {
    tr.reached_end = true;
    return tr;
  }
  const int dir = t_end > start.t ? 1 : -1;
  PiRhs f;
  double t = start.t;
  V2 y{start.y, start.dy}, k1, y1, k7;
  f(t, y, k1);
  double h = dir * std::min(opts.h_init, std::abs(t_end - t));
  long nsteps = 0;

  std::size_t seg0 = 0;  // first sample of the current pole-free segment

  auto cross_pole = [&]() -> bool {
    // returns true when integration is finished
    std::vector<RealState> tail;
    for (std::size_t i = tr.samples.size(); i-- > seg0 && int(tail.size()) < opts.fit_samples;) {
      if (tr.samples[i].y < opts.y_switch / 4) break;
      tail.push_back(tr.samples[i]);
    }
    PoleDatum P = fit_pole(tail);
    // H enters at (t-p)^4, so refit on everything within half the series radius
    {
      const double reach = 0.5 * laurent_radius(P);
      std::size_t first = tr.samples.size();
      while (first > seg0 && std::abs(tr.samples[first - 1].t - P.p) <= reach && tr.samples[first - 1].y > 0)
        --first;
      const std::size_t avail = tr.samples.size() - first, keep = std::min<std::size_t>(avail, 40);
      std::vector<RealState> wide;
      for (std::size_t k = 0; k < keep; ++k)
        wide.push_back(tr.samples[tr.samples.size() - 1 - k * (avail - 1) / std::max<std::size_t>(keep - 1, 1)]);
      if (wide.size() > tail.size()) {
        try {
          P = fit_pole(wide);
        } catch (const Error&) {
        }
      }
    }
    tr.poles.push_back(P);
    if (!opts.cross_poles) {
      tr.stopped_at_pole = true;
      tr.pole_offsets.push_back(0.0);
      return true;
    }
    double delta = std::abs(t - P.p);
    const double rad = laurent_radius(P);
    delta = std::min(delta, 0.5 * rad);
    tr.pole_offsets.push_back(delta);
    const double t_re = P.p + dir * delta;
    if (dir * (t_end - t_re) <= 0) {
      // end point falls inside the pole window
      if (t_end != P.p) tr.samples.push_back(laurent_state(P, t_end - P.p));
      tr.reached_end = true;
      return true;
    }
    const RealState s = restart_from_pole(P, dir * delta);
    tr.samples.push_back(s);
    seg0 = tr.samples.size() - 1;
    t = s.t;
    y = {s.y, s.dy};
    f(t, y, k1);
    return false;
  };

  while (true) {
    if (++nsteps > opts.max_steps) throw Error(ErrorCode::StiffnessFailure, "step budget exhausted");
    if (dir * (t + h - t_end) > 0) h = t_end - t;
    dopri::Dense<double, 2> dense;
    const auto res = dopri::step(f, t, y, k1, h, opts.rtol, opts.atol, y1, k7, &dense);
    const bool finite = std::isfinite(res.err) && std::isfinite(y1[0]) && std::isfinite(y1[1]);
    if (finite && res.err <= 1.0) {
      ++tr.accepted;
      const bool last = (t + h == t_end) || dir * (t + h - t_end) >= 0;
      t = last ? t_end : t + h;
      y = y1;
      k1 = k7;
      tr.steps.push_back(dense);
      tr.samples.push_back({t, y[0], y[1]});
      if (last) {
        tr.reached_end = true;
        return tr;
      }
      if ((y[0] > opts.y_switch && dir * y[1] > 0) || y[0] > opts.y_blow) {
        if (cross_pole()) return tr;
        continue;
      }
      h *= dopri::next_factor(res.err);
    } else {
      ++tr.rejected;
      h *= finite ? std::max(0.2, dopri::next_factor(res.err)) : 0.25;
      if (std::abs(h) < opts.h_min * std::max(1.0, std::abs(t))) {
        if (y[0] > opts.y_switch / 4 && dir * y[1] > 0) {
          if (cross_pole()) return tr;
          h = dir * opts.h_init;
          continue;
        }
        if (!std::isfinite(y[0]) || std::abs(y[0]) > opts.y_blow)
          throw Error(ErrorCode::BlowupUnclassified, "no pole signature at t = " + std::to_string(t));
        throw Error(ErrorCode::StiffnessFailure, "step size underflow at t = " + std::to_string(t));
      }
    }
  }
}

Trajectory integrate_from_pole(const PoleDatum& pole, double delta, double t_end,
                               const IntegratorOptions& opts) {
  const RealState s = restart_from_pole(pole, delta);
  Trajectory tr = integrate(s, t_end, opts);
  tr.poles.insert(tr.poles.begin(), pole);
  tr.pole_offsets.insert(tr.pole_offsets.begin(), std::abs(delta));
  return tr;
}

// ---------------------------------------------------------------- zeros

std::vector<ZeroDatum> find_zeros(const Trajectory& traj, double tol_zero) {
  std::vector<ZeroDatum> out;
  PiRhs f;
  auto make = [&](double r, double b) {
    ZeroDatum z;
    z.r = r;
    z.b = b;
    z.degenerate = (b == 0);
    z.side = b >= 0 ? Side::plus : Side::minus;
    z.index = int(std::count_if(traj.poles.begin(), traj.poles.end(),
                                [&](const PoleDatum& p) { return p.p < r; }));
    out.push_back(z);
  };

  if (!traj.samples.empty() && traj.samples.front().y == 0)
    make(traj.samples.front().t, traj.samples.front().dy);

  for (const auto& d : traj.steps) {
    constexpr int kSub = 6;
    std::array<double, kSub + 1> ts, ys;
    for (int i = 0; i <= kSub; ++i) {
      ts[i] = d.t0 + d.h * i / kSub;
      ys[i] = d.eval(ts[i])[0];
    }
    ys[0] = d.c0[0];
    ys[kSub] = d.c0[0] + d.c1[0];
    for (int i = 0; i < kSub; ++i) {
      if (!(ys[i] * ys[i + 1] < 0 || (ys[i + 1] == 0 && ys[i] != 0))) continue;
      double r;
      if (ys[i + 1] == 0) {
        r = ts[i + 1];
      } else {
        boost::uintmax_t iters = 100;
        auto g = [&](double tt) { return d.eval(tt)[0]; };
        double a = ts[i], b = ts[i + 1];
        if (a > b) std::swap(a, b);
        auto br = boost::math::tools::toms748_solve(
            g, a, b, [](double x, double z) { return std::abs(x - z) < 1e-15 * (1 + std::abs(x)); },
            iters);
        r = 0.5 * (br.first + br.second);
      }
      // polish with a direct step from the start of the interval
      V2 y0{d.c0[0], d.c0[1]}, k1, y1, k7;
      f(d.t0, y0, k1);
      double b = 0;
      for (int it = 0; it < 6; ++it) {
        const double hh = r - d.t0;
        if (hh == 0) {
          y1 = y0;
        } else {
          dopri::step<double, 2>(f, d.t0, y0, k1, hh, 1.0, 1.0, y1, k7, nullptr);
        }
        b = y1[1];
        if (std::abs(y1[0]) < 0.1 * tol_zero || b == 0) break;
        r -= y1[0] / b;
      }
      make(r, b);
    }
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.r < b.r; });
  return out;
}

// ---------------------------------------------------------------- seeds

std::vector<double> tritronquee_coeffs(int kmax) {
  std::vector<double> a(kmax + 1, 0.0);
  a[0] = 1.0;
  const double s6 = std::sqrt(6.0);
  for (int k = 1; k <= kmax; ++k) {
    double conv = 0;
    for (int j = 1; j < k; ++j) conv += a[j] * a[k - j];
    const double m = k - 1;
    a[k] = (-(25.0 * m * m - 1.0) / (4.0 * s6) * a[k - 1] - conv) / 2.0;
  }
  return a;
}

RealState seed_tritronquee(double t_start) {
  if (!(t_start < 0)) throw Error(ErrorCode::SeedOutOfRange, "the algebraic series lives on t -> -inf");
  const double x = -t_start;
  const auto a = tritronquee_coeffs(200);
  const double w = std::pow(x, -2.5);
  // y = -6^(-1/2) sum a_k x^(1/2 - 5k/2); dy/dx = -6^(-1/2) sum a_k (1/2 - 5k/2) x^(-1/2 - 5k/2)
  double S = 0, dS = 0, wk = 1.0, prev = std::numeric_limits<double>::infinity(), smallest = prev;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double term = a[k] * wk;
    // a_k grows factorially, so stop before it meets an underflowed w^k
    if (!std::isfinite(term) || (std::abs(term) > prev && k > 2)) break;
    S += term;
    dS += (0.5 - 2.5 * k) * term;
    prev = std::abs(term);
    smallest = std::min(smallest, prev);
    if (prev < 1e-17 * std::abs(S)) break;
    wk *= w;
  }
  if (smallest > 1e-15 * std::abs(S))
    throw Error(ErrorCode::SeedOutOfRange, "series too coarse at t = " + std::to_string(t_start));
  const double sx = std::sqrt(x), c = 1.0 / std::sqrt(6.0);
  const double y = -c * sx * S;
  const double dydx = -c * dS / sx;
  return {t_start, y, -dydx};
}

RealState seed_pole(const PoleDatum& pole, double t_start) {
  return restart_from_pole(pole, t_start - pole.p);
}

}  // namespace p1
