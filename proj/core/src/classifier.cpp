#include "p1/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "p1/error.hpp"
#include "p1/format.hpp"

namespace p1 {

namespace {

constexpr double kPi = std::numbers::pi;
const double k24q = std::pow(24.0, 0.25);

// Negative algebraic branch y_s(t) and y_s'(t), optimally truncated. Valid for
// -t >= ~10, which the classifier windows always satisfy.
RealState slow_manifold(double t) {
  static const std::vector<double> a = tritronquee_coeffs(40);
  const double x = -t;
  const double w = std::pow(x, -2.5);
  double S = 0, dS = 0, wk = 1, prev = INFINITY;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double term = a[k] * wk;
    if (k > 2 && std::abs(term) > prev) break;
    S += term;
    dS += (0.5 - 2.5 * static_cast<double>(k)) * term;
    prev = std::abs(term);
    wk *= w;
  }
  const double c = 1 / std::sqrt(6.0), sx = std::sqrt(x);
  return {t, -c * sx * S, c * dS / sx};
}

// Phase of the type-C sin^2 without the rho and sigma terms.
double phase_C0(double x) { return 0.4 * k24q * std::pow(x, 1.25); }

double c_spacing(double x) { return 2 * kPi / (k24q * std::pow(x, 0.25)); }

// y = alpha + beta u, ordinary least squares.
std::pair<double, double> line_fit(const std::vector<double>& u, const std::vector<double>& y) {
  const double n = static_cast<double>(u.size());
  double su = 0, sy = 0;
  for (std::size_t i = 0; i < u.size(); ++i) su += u[i], sy += y[i];
  const double mu = su / n, my = sy / n;
  double suu = 0, suy = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
  }
  const double beta = suu > 0 ? suy / suu : 0;
  return {my - beta * mu, beta};
}

double rel_clamp(double dev, double tol) { return std::clamp(1 - dev / tol, 0.01, 1.0); }

}  // namespace

void ClassifierConfig::validate() const {
  if (!(window > 0) || !(T_max > 3 * window))
    throw Error(ErrorCode::InvalidArgument, "classifier needs T_max > 3 window > 0");
  if (!(fit_tol > 0) || !(exponent_tol > 0) || !(spacing_tol > 0) || !(rtol > 0) || !(atol > 0))
    throw Error(ErrorCode::InvalidArgument, "classifier tolerances must be positive");
}

IntegratorOptions ClassifierConfig::integrator() const {
  IntegratorOptions o;
  o.rtol = rtol;
  o.atol = atol;
  return o;
}

double classifier_t_end(double r, const ClassifierConfig& cfg) {
  return std::min(-cfg.T_max, r - cfg.T_max / 2);
}

double action_amplitude(double t, double y, double dy) {
  const RealState ys = slow_manifold(t);
  const double w2 = -12 * ys.y;
  const double d = y - ys.y, dd = dy - ys.dy;
  const double E = 0.5 * dd * dd + 0.5 * w2 * d * d - 2 * d * d * d;
  const double dstar = w2 / 6, Vstar = w2 * w2 * w2 / 216;
  if (!(d < dstar) || !(E < Vstar)) return NAN;
  if (E <= 0) return 0;
  // turning points of 2 u^3 - (w2/2) u^2 + E = 0 by the trigonometric formula
  const double p = -w2 * w2 / 48, q = E / 2 - w2 * w2 * w2 / 864;
  const double m = 2 * std::sqrt(-p / 3);
  const double arg = std::clamp(3 * q / (p * m), -1.0, 1.0);
  const double th = std::acos(arg) / 3;
  double u[3];
  for (int k = 0; k < 3; ++k) u[k] = m * std::cos(th - 2 * kPi * k / 3) + w2 / 12;
  std::sort(u, u + 3);
  // the two inner roots sit near a double root for small E, where the
  // trigonometric form keeps only half the digits
  const double ah = std::sqrt(2 * E / w2);
  if (ah < 1e-2 * dstar) u[0] = -ah, u[1] = ah;
  for (double& v : u)
    for (int it = 0; it < 60; ++it) {
      const double f = 2 * v * v * v - 0.5 * w2 * v * v + E, df = 6 * v * v - w2 * v;
      if (df == 0) break;
      const double step = f / df;
      v -= step;
      if (std::abs(step) <= 1e-15 * std::abs(v)) break;
    }
  const double lo = u[0], hi = u[1], top = u[2];
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const double J = 2 / kPi * boost::math::quadrature::gauss<double, 30>::integrate(
                                 [&](double s) {
                                   const double sn = std::sin(s);
                                   return h * h * sn * sn * std::sqrt(std::max(0.0, top - c - h * std::cos(s)));
                                 },
                                 0.0, kPi);
  return std::sqrt(2 * J / std::sqrt(w2));
}

WindowCensus window_census(const Trajectory& traj, double t_lo, double t_hi) {
  WindowCensus c;
  c.t_lo = t_lo;
  c.t_hi = t_hi;
  for (const auto& p : traj.poles)
    if (p.p >= t_lo && p.p <= t_hi) c.poles.push_back(p.p);
  std::sort(c.poles.begin(), c.poles.end());

  if (!c.poles.empty()) {
    auto edge = [](double gap, double x) { return std::max(0.0, gap / c_spacing(x) - 1); };
    c.max_spacing_dev = std::max(edge(c.poles.front() - t_lo, -t_lo), edge(t_hi - c.poles.back(), -t_hi));
    for (std::size_t i = 1; i < c.poles.size(); ++i) {
      const double gap = c.poles[i] - c.poles[i - 1];
      const double pred = c_spacing(-0.5 * (c.poles[i] + c.poles[i - 1]));
      c.max_spacing_dev = std::max(c.max_spacing_dev, std::abs(gap / pred - 1));
    }
  }

  std::vector<double> lx, la;
  double sm = 0, sp = 0;
  for (const auto& s : traj.samples) {
    if (s.t < t_lo || s.t > t_hi) continue;
    ++c.samples;
    const double q = std::sqrt(-s.t / 6);
    sm += (s.y + q) * (s.y + q) / (q * q);
    sp += (s.y - q) * (s.y - q) / (q * q);
    if (!c.poles.empty()) continue;
    const double a = action_amplitude(s.t, s.y, s.dy);
    if (std::isnan(a)) {
      c.beyond_barrier = true;
      continue;
    }
    c.max_amplitude = std::max(c.max_amplitude, a);
    if (a > 0) {
      lx.push_back(std::log(-s.t));
      la.push_back(std::log(a));
    }
  }
  if (c.samples) {
    c.rms_minus = std::sqrt(sm / static_cast<double>(c.samples));
    c.rms_plus = std::sqrt(sp / static_cast<double>(c.samples));
  }
  if (lx.size() >= 3) c.envelope_exponent = line_fit(lx, la).second;
  else c.envelope_exponent = NAN;
  return c;
}

SolutionClass classify_rb(double r, double b, const ClassifierConfig& cfg) {
  cfg.validate();
  SolutionClass out;
  if (!std::isfinite(r) || !std::isfinite(b)) {
    out.evidence = "non-finite zero data";
    return out;
  }
  const double t_end = classifier_t_end(r, cfg);
  Trajectory tr;
  try {
    tr = integrate({r, 0, b}, t_end, cfg.integrator());
  } catch (const Error& e) {
    out.evidence = std::string("integration failed: ") + e.what();
    return out;
  }
  if (!tr.reached_end) {
    out.evidence = "integration stopped before t_end = " + fmt(t_end);
    return out;
  }
  const WindowCensus c = window_census(tr, t_end, t_end + cfg.window);
  std::ostringstream ev;
  ev.precision(6);
  ev << "t_end=" << t_end << " poles_in_window=" << c.poles.size() << " poles_total=" << tr.poles.size();

  if (c.poles.size() >= 2) {
    ev << " spacing_dev=" << c.max_spacing_dev;
    if (c.max_spacing_dev <= cfg.spacing_tol) {
      out.label = Label::C;
      out.confidence = rel_clamp(c.max_spacing_dev, cfg.spacing_tol);
    }
  } else if (c.poles.empty()) {
    ev << " exponent=" << c.envelope_exponent << " amplitude=" << c.max_amplitude
       << " fit_rms_minus=" << c.rms_minus << " fit_rms_plus=" << c.rms_plus;
    if (c.beyond_barrier) {
      ev << " outside_well";
    } else if (c.max_amplitude < cfg.tiny_amplitude) {
      out.label = Label::A;
      out.confidence = 1;
      ev << " settled";
    } else if (std::abs(c.envelope_exponent + 0.125) <= cfg.exponent_tol) {
      out.label = Label::A;
      out.confidence = rel_clamp(std::abs(c.envelope_exponent + 0.125), cfg.exponent_tol);
    }
  }
  out.evidence = ev.str();
  return out;
}

BoundaryPoint bisect_sigma_boundary(int n, Side side, double A, const ClassifierConfig& cfg,
                                    double rel_width) {
  cfg.validate();
  const double C0 = constants().C0;
  if (!(A > A_crit + kCoalescenceWindow && A < C0 - 0.02))
    throw Error(ErrorCode::InvalidArgument, "A must lie in (A_crit + 0.05, C0 - 0.02)");
  if (n < 1 || !(rel_width > 0)) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and rel_width > 0");

  BoundaryPoint bp;
  bp.n = n;
  bp.side = side;
  bp.A = A;
  bp.xi_asym = sigma_xi(n, side, A);
  const double spacing = kPi / (-2 * alpha0(A).imag());

  auto point = [&](double xi) {
    ScalingParams p;
    p.xi = xi;
    p.A = A;
    p.sgnb = side_sign(side);
    return std::pair{r_from_scaling(p), b_from_scaling(p)};
  };
  ClassifierConfig longer = cfg;
  longer.T_max *= 1.5;
  auto label = [&](double xi) {
    const auto [r, b] = point(xi);
    ++bp.evaluations;
    Label l = classify_rb(r, b, cfg).label;
    if (l == Label::undecided) {
      ++bp.evaluations;
      l = classify_rb(r, b, longer).label;
    }
    return l;
  };

  double half = std::min(0.2 * bp.xi_asym, 0.45 * spacing);
  double lo = 0, hi = 0;
  Label Llo = Label::undecided, Lhi = Label::undecided;
  bool ok = false;
  for (int attempt = 0; attempt < 2 && !ok; ++attempt, half *= 1.5) {
    lo = std::max(bp.xi_asym - half, 0.5 * bp.xi_asym);
    hi = bp.xi_asym + half;
    Llo = label(lo);
    Lhi = label(hi);
    ok = Llo != Label::undecided && Lhi != Label::undecided && Llo != Lhi;
  }
  if (!ok)
    throw Error(ErrorCode::BracketFailure, "labels " + std::string(label_name(Llo)) + " at xi = " + fmt(lo) +
                                               " and " + label_name(Lhi) + " at xi = " + fmt(hi));
  while (hi - lo >= rel_width * 0.5 * (lo + hi)) {
    const double mid = 0.5 * (lo + hi);
    const Label Lm = label(mid);
    if (Lm == Label::undecided)
      throw Error(ErrorCode::BracketFailure, "undecided at xi = " + fmt(mid));
    (Lm == Llo ? lo : hi) = mid;
  }
  bp.xi_lo = lo;
  bp.xi_hi = hi;
  bp.xi_star = 0.5 * (lo + hi);
  bp.label_lo = Llo;
  bp.label_hi = Lhi;
  std::tie(bp.r, bp.b) = point(bp.xi_star);
  return bp;
}

std::vector<double> type_A_signal(const std::vector<double>& t, double d, double phase) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = -t[i];
    out[i] = d * std::pow(x, -0.125) * std::cos(k24q * (0.8 * std::pow(x, 1.25) - 0.625 * d * d * std::log(x) + phase));
  }
  return out;
}

SignatureFit fit_type_A(const std::vector<double>& t, const std::vector<double>& delta, double fit_tol) {
  if (t.size() != delta.size() || t.size() < 8)
    throw Error(ErrorCode::FitRejected, "type A fit needs at least 8 samples");
  // For a frozen drift d0 the model is linear: x^(-1/8) (P cos psi - Q sin psi).
  double d = 0, P = 0, Q = 0, res = 0, norm = 0;
  for (int it = 0; it < 100; ++it) {
    double scc = 0, sss = 0, scs = 0, scy = 0, ssy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double x = -t[i], e = std::pow(x, -0.125);
      const double psi = k24q * (0.8 * std::pow(x, 1.25) - 0.625 * d * d * std::log(x));
      const double cc = e * std::cos(psi), ss = -e * std::sin(psi);
      scc += cc * cc, sss += ss * ss, scs += cc * ss, scy += cc * delta[i], ssy += ss * delta[i];
    }
    const double det = scc * sss - scs * scs;
    if (!(std::abs(det) > 0)) throw Error(ErrorCode::FitRejected, "singular type A normal equations");
    P = (scy * sss - ssy * scs) / det;
    Q = (ssy * scc - scy * scs) / det;
    const double dn = std::hypot(P, Q);
    const bool done = std::abs(dn - d) <= 1e-13 * (1 + dn);
    d = dn;
    if (done) break;
  }
  double phase = std::atan2(Q, P) / k24q;
  const double period = 2 * kPi / k24q;
  phase = std::fmod(phase, period);
  if (phase < 0) phase += period;
  const auto model = type_A_signal(t, d, phase);
  for (std::size_t i = 0; i < t.size(); ++i) {
    res += (delta[i] - model[i]) * (delta[i] - model[i]);
    norm += delta[i] * delta[i];
  }
  SignatureFit f;
  f.sig.kind = Label::A;
  f.sig.d = d;
  f.sig.theta = phase;
  f.sig.boundary = d == 0;
  f.residual = norm > 0 ? std::sqrt(res / norm) : 0;
  f.points = t.size();
  if (f.residual > fit_tol)
    throw Error(ErrorCode::FitRejected, "type A relative residual " + fmt(f.residual));
  return f;
}

SignatureFit fit_signature(const Trajectory& traj, Label label, double t_lo, double t_hi, double fit_tol) {
  if (label == Label::A) {
    for (const auto& p : traj.poles)
      if (p.p >= t_lo && p.p <= t_hi) throw Error(ErrorCode::FitRejected, "pole inside the type A window");
    std::vector<double> t, dl;
    for (const auto& s : traj.samples) {
      if (s.t < t_lo || s.t > t_hi) continue;
      t.push_back(s.t);
      dl.push_back(s.y - slow_manifold(s.t).y);
    }
    return fit_type_A(t, dl, fit_tol);
  }
  if (label == Label::C) {
    std::vector<double> x;
    for (const auto& p : traj.poles)
      if (p.p >= t_lo && p.p <= t_hi) x.push_back(-p.p);
    if (x.size() < 3) throw Error(ErrorCode::FitRejected, "type C fit needs at least 3 poles in the window");
    std::sort(x.begin(), x.end());
    // Phi0(x_j) - k_j pi = (k0 pi - sigma) - (5/8) rho log x_j, k_j counted from the first pole
    std::vector<double> u, y;
    double k = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j) k += std::round((phase_C0(x[j]) - phase_C0(x[j - 1])) / kPi);
      u.push_back(std::log(x[j]));
      y.push_back(phase_C0(x[j]) - k * kPi);
    }
    const auto [alpha, beta] = line_fit(u, y);
    double res = 0;
    for (std::size_t j = 0; j < u.size(); ++j) res += std::pow(y[j] - alpha - beta * u[j], 2);
    SignatureFit f;
    f.sig.kind = Label::C;
    f.sig.rho = -1.6 * beta;
    f.sig.sigma = std::fmod(-alpha, kPi);
    if (f.sig.sigma < 0) f.sig.sigma += kPi;
    f.residual = std::sqrt(res / static_cast<double>(u.size())) / kPi;
    f.points = u.size();
    if (f.residual > fit_tol)
      throw Error(ErrorCode::FitRejected, "type C phase residual " + fmt(f.residual));
    return f;
  }
  throw Error(ErrorCode::SignatureUndefined,
              "type B and undecided trajectories carry no fittable signature in a finite window");
}

void PhaseDiagramGrid::validate() const {
  if (nr < 1 || nb < 1) throw Error(ErrorCode::InvalidArgument, "grid resolutions must be positive");
  if (!(r_max > r_min) || !(b_max > b_min) || !std::isfinite(r_min) || !std::isfinite(r_max) ||
      !std::isfinite(b_min) || !std::isfinite(b_max))
    throw Error(ErrorCode::InvalidArgument, "grid ranges must be finite and increasing");
}

Raster scan_phase_diagram(const PhaseDiagramGrid& grid, const ClassifierConfig& cfg, int workers) {
  grid.validate();
  cfg.validate();
  Raster out;
  out.grid = grid;
  const std::size_t total = static_cast<std::size_t>(grid.nr) * static_cast<std::size_t>(grid.nb);
  out.cells.resize(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx; (idx = next.fetch_add(1)) < total;) {
      const int i = static_cast<int>(idx % static_cast<std::size_t>(grid.nr));
      const int j = static_cast<int>(idx / static_cast<std::size_t>(grid.nr));
      try {
        out.cells[idx] = classify_rb(grid.r_at(i), grid.b_at(j), cfg);
      } catch (const std::exception& e) {
        out.cells[idx] = {Label::undecided, 0, e.what()};
      }
    }
  };
  const int nw = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < nw; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

std::string raster_csv(const Raster& raster) {
  std::string out = "r,b,label,confidence\n";
  const auto& g = raster.grid;
  for (int j = 0; j < g.nb; ++j)
    for (int i = 0; i < g.nr; ++i) {
      const auto& c = raster.cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nr) + i];
      out += csv_row({fmt(g.r_at(i)), fmt(g.b_at(j)), label_name(c.label), fmt(c.confidence)});
    }
  return out;
}

std::string raster_pgm(const Raster& raster) {
  const auto& g = raster.grid;
  std::string out = "P2\n" + std::to_string(g.nr) + " " + std::to_string(g.nb) + "\n255\n";
  for (int j = g.nb - 1; j >= 0; --j) {
    for (int i = 0; i < g.nr; ++i) {
      const Label l = raster.cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nr) + i].label;
      out += (i ? " " : "");
      out += l == Label::A ? "255" : l == Label::C ? "0" : "128";
    }
    out += '\n';
  }
  return out;
}

}  // namespace p1
