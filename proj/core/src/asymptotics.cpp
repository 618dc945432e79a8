#include "p1/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "p1/error.hpp"

namespace p1 {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I1(0.0, 1.0);

double wrap_2pi(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a;
}

const double k24q = std::pow(24.0, 0.25);
}  // namespace

ScalingParams scaling_from_rb(double r, double b) {
  if (b == 0) throw Error(ErrorCode::DegenerateScaling, "b = 0");
  ScalingParams p;
  p.xi = std::pow(std::abs(b) / 2, 5.0 / 3.0);
  p.A = r / (2 * std::pow(p.xi, 0.8));
  p.sgnb = b > 0 ? 1 : -1;
  return p;
}

double r_from_scaling(const ScalingParams& p) { return 2 * p.A * std::pow(p.xi, 0.8); }

double b_from_scaling(const ScalingParams& p) {
  const double q = 1 + p.B1 / p.xi;
  if (q < 0) throw Error(ErrorCode::InvalidArgument, "1 + B1/xi < 0");
  return p.sgnb * 2 * std::pow(p.xi, 0.6) * std::sqrt(q);
}

const char* regime_name(Regime g) {
  switch (g) {
    case Regime::I: return "i";
    case Regime::II: return "ii";
    case Regime::III: return "iii";
    case Regime::IV: return "iv";
  }
  return "?";
}

Regime select_regime(double A, double xi, double w) {
  if (std::abs(A - A_crit) < kCoalescenceWindow)
    throw Error(ErrorCode::CoalescenceRegime, "|A - A_crit| < " + std::to_string(kCoalescenceWindow));
  const double C0 = constants().C0;
  if (std::abs(A - C0) <= w / xi) return Regime::IV;
  if (A < A_crit) return Regime::I;
  return A < C0 ? Regime::II : Regime::III;
}

PredictedStokes theorem_stokes_asymptotics(const ScalingParams& p, double w) {
  if (!(p.xi > 0)) throw Error(ErrorCode::InvalidArgument, "xi must be positive");
  PredictedStokes out;
  out.regime = select_regime(p.A, p.xi, w);
  out.sgnb = p.sgnb;
  auto set = [&](int k, cplx v, double log_abs) {
    const auto i = static_cast<std::size_t>(((k + 2) % 5 + 5) % 5);
    out.s[i] = v;
    out.log_abs[i] = log_abs;
    out.known[i] = true;
  };
  auto mirror = [&](int k) { set(-k, -std::conj(out.at(k)), out.log_abs_at(k)); };

  if (out.regime == Regime::IV) {
    // Theorem IV is stated at A = C0 with b^2 = 4 xi^(6/5)(1 + B1/xi); move the
    // point (r, b) onto that parametrization.
    const auto& k = constants();
    const double r = r_from_scaling(p), b = b_from_scaling(p);
    out.A = k.C0;
    out.xi = std::pow(r / (2 * k.C0), 1.25);
    out.B1 = out.xi * (b * b / (4 * std::pow(out.xi, 1.2)) - 1);
    out.alpha0 = k.at_C0.alpha0;
    out.alpha1 = 2.0 * out.B1 * k.at_C0.alpha11 + (p.sgnb > 0 ? k.at_C0.alpha12_plus : k.at_C0.alpha12_minus);
    const double xi = out.xi, ia0 = out.alpha0.imag();
    const double ra1 = out.alpha1.real(), ia1 = out.alpha1.imag();
    const double ph = 2 * xi * ia0 + 2 * ia1;
    const cplx s0 = I1 * (2 * std::exp(-2 * ra1) * std::cos(ph) - std::exp(-4 * ra1));
    set(0, s0, std::log(std::abs(s0)));
    set(1, I1 * std::exp(cplx(2 * ra1, ph)), 2 * ra1);
    const cplx s2 = -I1 * std::exp(cplx(0, -2 * ph)) + I1 * std::exp(cplx(-2 * ra1, -ph));
    set(2, s2, std::log(std::abs(s2)));
    mirror(1);
    mirror(2);
    return out;
  }

  out.A = p.A;
  out.xi = p.xi;
  out.B1 = p.B1;
  out.alpha0 = alpha0(p.A);
  out.alpha1 = alpha1(p.A, p.sgnb, p.B1);
  const cplx e = 2.0 * p.xi * out.alpha0 + 2.0 * out.alpha1;  // 2 xi alpha0 + 2 alpha1
  switch (out.regime) {
    case Regime::I:
      set(0, I1 * std::exp(-e), -e.real());
      break;
    case Regime::II: {
      const double c = std::cos(e.imag());
      set(0, 2.0 * I1 * std::exp(-e.real()) * c, std::log(2 * std::abs(c)) - e.real());
      set(1, I1 * std::exp(e), e.real());
      set(2, -I1 * std::exp(cplx(0, -2 * e.imag())), 0);
      mirror(1);
      mirror(2);
      break;
    }
    case Regime::III:
      set(0, -I1 * std::exp(-2 * e.real()), -2 * e.real());
      set(1, I1 * std::exp(e), e.real());
      set(2, I1 * std::exp(-e), -e.real());
      mirror(1);
      mirror(2);
      break;
    case Regime::IV:
      break;
  }
  return out;
}

// ---------------------------------------------------------------- Sigma_n

double sigma_xi(int n, Side side, double A) {
  if (!(A > A_crit && A < constants().C0))
    throw Error(ErrorCode::InvalidArgument, "main branch needs A_crit < A < C0");
  if (std::abs(A - A_crit) < kCoalescenceWindow) throw Error(ErrorCode::CoalescenceRegime);
  const cplx a0 = alpha0(A);
  const cplx a1 = alpha1(A, side_sign(side), 0.0);
  return ((n + 0.5 + kN0) * kPi + 2 * a1.imag()) / (-2 * a0.imag());
}

std::vector<CurvePoint> sigma_curves(int n, Side side, const std::vector<double>& A_grid) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n >= 1");
  std::vector<CurvePoint> out;
  out.reserve(A_grid.size());
  for (double A : A_grid) {
    CurvePoint c;
    c.n = n;
    c.side = side;
    c.param = A;
    c.xi = sigma_xi(n, side, A);
    c.r = 2 * A * std::pow(c.xi, 0.8);
    c.b = side_sign(side) * 2 * std::pow(c.xi, 0.6);
    out.push_back(c);
  }
  return out;
}

double fingertip_xi(int n, Side side, double B1) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n >= 1");
  const auto& k = constants();
  const cplx a1 = 2.0 * B1 * k.at_C0.alpha11 + (side == Side::plus ? k.at_C0.alpha12_plus : k.at_C0.alpha12_minus);
  const double c = 0.5 * std::exp(-2 * a1.real());
  if (c > 1) {
    std::ostringstream os;
    os << "B1 = " << B1 << " below Lambda0 = "
       << (side == Side::plus ? k.Lambda0_plus : k.Lambda0_minus);
    throw Error(ErrorCode::ArccosDomain, os.str());
  }
  // n = 2m - 1 takes +arccos, n = 2m takes -arccos
  const int m = (n + 1) / 2;
  const double ac = (n % 2 == 1 ? 1 : -1) * std::acos(c);
  return (ac - 2 * a1.imag() - 2 * (m + kM0) * kPi) / (2 * k.at_C0.alpha0.imag());
}

std::vector<CurvePoint> sigma_fingertips(int n, Side side, const std::vector<double>& B1_grid) {
  const double C0 = constants().C0;
  std::vector<CurvePoint> out;
  out.reserve(B1_grid.size());
  for (double B1 : B1_grid) {
    CurvePoint c;
    c.n = n;
    c.side = side;
    c.param = B1;
    c.fingertip = true;
    c.xi = fingertip_xi(n, side, B1);
    if (!(c.xi > 0)) throw Error(ErrorCode::InvalidArgument, "fingertip xi is not positive");
    c.r = 2 * C0 * std::pow(c.xi, 0.8);
    c.b = side_sign(side) * 2 * std::pow(c.xi, 0.6) * (1 + B1 / (2 * c.xi));
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------- s1 input

StokesInput stokes_input_direct(cplx s1) {
  if (s1 == 0.0) throw Error(ErrorCode::InvalidArgument, "s1 = 0");
  return {std::abs(s1), wrap_2pi(std::arg(s1))};
}

namespace {
// |s2| cos(pi/2 - arg s2), |s2| sin(pi/2 - arg s2)
void s2_parts(cplx s2, double& c, double& s) {
  const double m = std::abs(s2), a = kPi / 2 - std::arg(s2);
  c = m * std::cos(a);
  s = m * std::sin(a);
}
double s1_abs_from(cplx s2, cplx s0) {
  double c, s;
  s2_parts(s2, c, s);
  const double m = std::abs(s2);
  return std::sqrt(1 - 2 * c + m * m) / std::abs(s0);
}
}  // namespace

StokesInput stokes_input_type_A(cplx s2, cplx s0) {
  if (!(s0.imag() > 0)) throw Error(ErrorCode::InvalidArgument, "type A needs Im s0 > 0");
  double c, s;
  s2_parts(s2, c, s);
  return {s1_abs_from(s2, s0), wrap_2pi(kPi / 2 + std::atan(-s / (1 - c)))};
}

StokesInput stokes_input_type_B(double h) {
  return {std::sqrt(h * h + 1) / 2, wrap_2pi(kPi / 2 + std::atan(-h))};
}

StokesInput stokes_input_type_C(cplx s2, cplx s0) {
  if (!(s0.imag() < 0)) throw Error(ErrorCode::InvalidArgument, "type C needs Im s0 < 0");
  double c, s;
  s2_parts(s2, c, s);
  const double base = std::atan(s / (c - 1));
  if (c == 1) {
    std::ostringstream os;
    os.precision(15);
    os << "candidates arg s1 = " << wrap_2pi(kPi / 2 + kPi / 2) << " or " << wrap_2pi(kPi / 2 - kPi / 2);
    throw Error(ErrorCode::BranchBoundary, os.str());
  }
  const double a = c > 1 ? base : kPi + base;
  return {s1_abs_from(s2, s0), wrap_2pi(kPi / 2 + a)};
}

// ---------------------------------------------------------------- zeros

ZeroPrediction predict_zero(const StokesInput& in, int n, Side side, const AlphaSet& at_c0, double C0) {
  if (!(in.s1_abs > 0)) throw Error(ErrorCode::InvalidArgument, "|s1| must be positive");
  const cplx a12 = side == Side::plus ? at_c0.alpha12_plus : at_c0.alpha12_minus;
  const double re11 = at_c0.alpha11.real();
  if (re11 == 0) throw Error(ErrorCode::DegenerateInversion);
  ZeroPrediction z;
  z.n = n;
  z.side = side;
  z.B1 = (std::log(in.s1_abs) - 2 * a12.real()) / (4 * re11);
  z.N = 2 * (n + kN1) * kPi + kPi / 2 + 4 * z.B1 * at_c0.alpha11.imag() + 2 * a12.imag();
  z.xi_n = (z.N - in.s1_arg) / (-2 * at_c0.alpha0.imag());
  z.r_hat = 2 * C0 * std::pow(z.xi_n, 0.8);
  z.b_hat = side_sign(side) * 2 * std::pow(z.xi_n, 0.6) * (1 + z.B1 / (2 * z.xi_n));
  return z;
}

std::vector<ZeroPrediction> predict_zeros(const StokesInput& in, int n_first, int n_last, Side side) {
  const auto& k = constants();
  std::vector<ZeroPrediction> out;
  for (int n = n_first; n <= n_last; ++n) out.push_back(predict_zero(in, n, side, k.at_C0, k.C0));
  return out;
}

// ---------------------------------------------------------------- signatures

AsymptoticSignature signature_type_A(cplx s0, cplx s2) {
  const double m = std::abs(s0);
  if (!(m <= 1) || m == 0) throw Error(ErrorCode::SignatureUndefined, "type A needs 0 < |s0| <= 1");
  AsymptoticSignature g;
  g.kind = Label::A;
  const double d2q = -std::log(m) / kPi;  // 24^(1/4) d^2
  g.d = std::sqrt(d2q / k24q);
  if (d2q == 0) {
    g.boundary = true;
    g.theta = std::nan("");
    return g;
  }
  const double argG = lgamma_complex(cplx(0, -d2q / 2)).imag();
  g.theta = (std::arg(s2) - d2q * (19.0 / 8 * std::log(2.0) + 5.0 / 8 * std::log(3.0)) - kPi / 4 - argG) / k24q;
  return g;
}

AsymptoticSignature signature_type_B(cplx s1, cplx s_minus1) {
  AsymptoticSignature g;
  g.kind = Label::B;
  const cplx h = s1 - s_minus1;
  g.h = h.real();
  g.h_imag = h.imag();
  return g;
}

AsymptoticSignature signature_type_C(cplx s0, cplx s2) {
  const double m = std::abs(s0);
  // |s0| = |s2|^2 - 1, so rho < 0 is allowed
  if (!(m > 0) || !std::isfinite(m)) throw Error(ErrorCode::SignatureUndefined, "type C needs 0 < |s0| < inf");
  AsymptoticSignature g;
  g.kind = Label::C;
  g.rho = std::log(m) / (2 * kPi);
  g.sigma = 19.0 / 8 * g.rho * std::log(2.0) + 5.0 / 8 * g.rho * std::log(3.0) +
            0.5 * lgamma_complex(cplx(0.5, -g.rho)).imag() + kPi / 4 + 0.5 * std::arg(s2);
  return g;
}

AsymptoticSignature signature_from_stokes(const StokesVector& sv, std::optional<Label> label) {
  const Label l = label ? *label : classify_from_stokes(sv).label;
  switch (l) {
    case Label::A: return signature_type_A(sv.at(0), sv.at(2));
    case Label::B: return signature_type_B(sv.at(1), sv.at(-1));
    case Label::C: return signature_type_C(sv.at(0), sv.at(2));
    case Label::undecided: break;
  }
  throw Error(ErrorCode::SignatureUndefined, "no class");
}

}  // namespace p1
