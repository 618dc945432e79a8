#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "p1/cubic.hpp"
#include "p1/label.hpp"
#include "p1/ode.hpp"
#include "p1/stokes.hpp"

namespace p1 {

// Integer offsets in the asymptotic formulas. Kept as named constants so that
// their claimed values can be tested.
inline constexpr int kN0 = 0;  // Sigma_n main branch
inline constexpr int kM0 = 0;  // fingertips
inline constexpr int kN1 = 0;  // zero predictions

// r = 2 A xi^(4/5), b = sgnb 2 xi^(3/5) (1 + B1/xi)^(1/2)
struct ScalingParams {
  double xi = 1, A = 0;
  int sgnb = 1;
  double B1 = 0;
};

ScalingParams scaling_from_rb(double r, double b);
double r_from_scaling(const ScalingParams& p);
double b_from_scaling(const ScalingParams& p);

enum class Regime { I, II, III, IV };
const char* regime_name(Regime g);

inline constexpr double kCoalescenceWindow = 0.05;  // |A - A_crit| excluded
inline constexpr double kC0Window = 5.0;           // regime IV when |A - C0| <= w / xi

Regime select_regime(double A, double xi, double w = kC0Window);

struct PredictedStokes {
  Regime regime = Regime::II;
  double A = 0, xi = 0, B1 = 0;  // for regime IV: the C0 reparametrization
  int sgnb = 1;
  cplx alpha0, alpha1;
  std::array<cplx, 5> s{};
  std::array<double, 5> log_abs{};
  std::array<bool, 5> known{};

  cplx at(int k) const { return s[static_cast<std::size_t>(((k + 2) % 5 + 5) % 5)]; }
  double log_abs_at(int k) const { return log_abs[static_cast<std::size_t>(((k + 2) % 5 + 5) % 5)]; }
  bool known_at(int k) const { return known[static_cast<std::size_t>(((k + 2) % 5 + 5) % 5)]; }
};

// Leading + alpha_1 order. Throws CoalescenceRegime near A_crit.
PredictedStokes theorem_stokes_asymptotics(const ScalingParams& p, double w = kC0Window);

struct CurvePoint {
  int n = 1;
  Side side = Side::plus;
  double param = 0;  // A on the main branch, B1 on a fingertip
  double xi = 0, r = 0, b = 0;
  bool fingertip = false;
};

// xi_n = ((n + 1/2 + n0) pi + 2 Im alpha_1(A, side)) / (-2 Im alpha_0(A)), B1 = 0
double sigma_xi(int n, Side side, double A);
std::vector<CurvePoint> sigma_curves(int n, Side side, const std::vector<double>& A_grid);
// Fingertip continuation at A = C0. Throws ArccosDomain for B1 < Lambda0.
double fingertip_xi(int n, Side side, double B1);
std::vector<CurvePoint> sigma_fingertips(int n, Side side, const std::vector<double>& B1_grid);

struct StokesInput {
  double s1_abs = 1, s1_arg = 0;  // arg in [0, 2 pi)
};

StokesInput stokes_input_direct(cplx s1);
StokesInput stokes_input_type_A(cplx s2, cplx s0);
StokesInput stokes_input_type_B(double h);
// Throws BranchBoundary (message lists both candidates) when
// |s2| cos(pi/2 - arg s2) == 1.
StokesInput stokes_input_type_C(cplx s2, cplx s0);

struct ZeroPrediction {
  int n = 1;
  Side side = Side::plus;
  double r_hat = 0, b_hat = 0, xi_n = 0, N = 0, B1 = 0;
};

ZeroPrediction predict_zero(const StokesInput& in, int n, Side side, const AlphaSet& at_c0,
                            double C0);
// Uses the cached constants at C0.
std::vector<ZeroPrediction> predict_zeros(const StokesInput& in, int n_first, int n_last, Side side);

struct AsymptoticSignature {
  Label kind = Label::undecided;
  double d = 0, theta = 0;   // A; theta is the phase of the cosine
  double h = 0, h_imag = 0;  // B; h_imag measures the departure from a real h
  double rho = 0, sigma = 0; // C
  bool boundary = false;     // d = 0 on type A
};

AsymptoticSignature signature_type_A(cplx s0, cplx s2);
AsymptoticSignature signature_type_B(cplx s1, cplx s_minus1);
AsymptoticSignature signature_type_C(cplx s0, cplx s2);
// Dispatches on classify_from_stokes unless a label is given.
AsymptoticSignature signature_from_stokes(const StokesVector& sv,
                                          std::optional<Label> label = std::nullopt);

// Principal-branch-continuous log Gamma for complex arguments.
cplx lgamma_complex(cplx z);

}  // namespace p1
