#pragma once

#include <array>
#include <complex>
#include <vector>

#include "p1/label.hpp"

namespace p1 {

using cplx = std::complex<double>;

// Q(lambda) of the scalar problem phi'' = Q phi at a zero (r, b).
cplx potential(cplx lambda, double r, double b);

// A point on the universal cover of the punctured lambda plane.
struct CoverPoint {
  double mod = 1, arg = 0;
  cplx value() const { return std::polar(mod, arg); }
};

// (phi, phi') * exp(log_scale). Keeps the exponential growth out of the mantissa.
struct ScaledJet {
  cplx phi = 1, dphi = 0;
  cplx log_scale = 0;
};

// phi1 phi2' - phi1' phi2 as mantissa * exp(log_scale)
ScaledJet wronskian(const ScaledJet& a, const ScaledJet& b);

// Coefficients a_j of the Riccati series phi'/phi = sum_j a_j lambda^((3-j)/2),
// a_0 = 2 sign.
std::vector<cplx> riccati_coeffs(double r, double b, int sign, int jmax);

// lambda^(-3/4) exp(sign (4/5 lambda^(5/2) + r lambda^(1/2))) (1 + ...) / sqrt(2).
// trunc < 0 truncates the series at its smallest term; otherwise keeps the
// prefactor through lambda^(-trunc/2), trunc = 0 being the bare leading form.
ScaledJet formal_solution(CoverPoint lam, double r, double b, int sign, int trunc = -1);

struct CanonicalPair {
  ScaledJet recessive, dominant;
  int recessive_sign = -1;
};
// Throws AmbiguousDominance on a ray where Re lambda^(5/2) vanishes.
CanonicalPair canonical_pair(CoverPoint lam, double r, double b, int trunc = -1);

struct MonodromyConfig {
  double R = 0;          // matching radius; 0 picks default_radius(r, b)
  int trunc = -1;        // see formal_solution
  // Constraint residuals are absolute, so with |s_k| ~ 1e8 every s_k needs
  // ~1e-15 relative accuracy: long double with a tight tolerance.
  double ode_tol = 1e-16;
  bool extended = true;   // transport and Wronskians in long double
  double hub = 0;         // radius of the connecting arc; 0 picks min(0.45, 1 / (1 + |b|))
  // Rays where rho_m is matched, one per m = -3..3; empty means 2 m pi / 5.
  std::vector<double> ray_angles;
  double threshold = 1e-5;  // scaled constraint residual that counts as converged
};

double max_turning_point(double r, double b);
double default_radius(double r, double b);

struct RayDiagnostics {
  double angle = 0;
  long steps = 0;
};

struct StokesVector {
  std::array<cplx, 5> s{};        // s_{-2..2}
  std::array<double, 5> log_abs{};  // log|s_k|, valid where s_k over/underflows
  std::array<double, 5> defect{};    // |s_k - i(1 + s_{k+2} s_{k+3})|
  double residual_constraint = 0;
  double residual_symmetry = 0;
  double residual_scaled = 0;  // constraint defect / (1 + |s_{k+2} s_{k+3}|)
  // Cancellation factor of the Wronskian behind each s_k; entries that cancel
  // too badly are rebuilt from a constraint and flagged in derived.
  std::array<double, 5> cond{};
  std::array<bool, 5> derived{};
  // |W(rho_{k-1}, rho_k) - (+-2)| over the well-conditioned pairs
  double normalization_defect = 0;
  double R = 0;
  std::vector<RayDiagnostics> rays;

  // period-5 access, k any integer
  cplx at(int k) const { return s[static_cast<std::size_t>(((k + 2) % 5 + 5) % 5)]; }
  double log_abs_at(int k) const {
    return log_abs[static_cast<std::size_t>(((k + 2) % 5 + 5) % 5)];
  }
};

// Fills defect and the residual fields from s.
void fill_residuals(StokesVector& sv);

StokesVector compute_stokes(double r, double b, const MonodromyConfig& cfg = {});

SolutionClass classify_from_stokes(const StokesVector& sv, double tol_cls = 1e-8);

}  // namespace p1
