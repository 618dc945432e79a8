#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "p1/asymptotics.hpp"
#include "p1/label.hpp"
#include "p1/ode.hpp"

namespace p1 {

struct ClassifierConfig {
  double T_max = 60;         // integrate at least to -T_max
  double window = 15;        // final window [t_end, t_end + window]
  double fit_tol = 0.1;      // relative rms residual accepted by fit_signature
  double exponent_tol = 0.05;  // type A envelope exponent: -1/8 within this
  double spacing_tol = 0.25;   // type C pole spacing: relative deviation from 2 pi / (24 x)^(1/4)
  double tiny_amplitude = 1e-7;  // action amplitude below which the window is taken as settled
  double rtol = 1e-10, atol = 1e-12;

  void validate() const;  // T_max > 3 window > 0
  IntegratorOptions integrator() const;
};

// t_end = min(-T_max, r - T_max / 2)
double classifier_t_end(double r, const ClassifierConfig& cfg);

// Window statistics shared by classify_rb and the tests.
struct WindowCensus {
  double t_lo = 0, t_hi = 0;
  std::vector<double> poles;      // in the window, ascending
  double max_spacing_dev = 0;     // relative, over consecutive poles and window edges
  double envelope_exponent = 0;   // slope of log a_eff against log(-t)
  double max_amplitude = 0;       // largest a_eff in the window
  double rms_minus = 0, rms_plus = 0;  // rms of y -/+ sqrt(-t/6) over the window, relative
  bool beyond_barrier = false;    // a sample sat outside the potential well
  std::size_t samples = 0;
};

WindowCensus window_census(const Trajectory& traj, double t_lo, double t_hi);

// Adiabatic amplitude about the slow manifold y_s(t) (the negative algebraic
// branch): a_eff = sqrt(2 J / omega), J the action of the frozen cubic well.
// Returns NaN when (t, y, dy) lies outside the well.
double action_amplitude(double t, double y, double dy);

// Integrates (r, 0, b) toward -infinity and labels A, C or undecided. Never B.
SolutionClass classify_rb(double r, double b, const ClassifierConfig& cfg = {});

struct BoundaryPoint {
  int n = 1;
  Side side = Side::plus;
  double A = 0;
  double xi_star = 0, xi_lo = 0, xi_hi = 0, xi_asym = 0;
  double r = 0, b = 0;
  Label label_lo = Label::undecided, label_hi = Label::undecided;
  int evaluations = 0;
};

// Bisection in xi along B1 = 0 at fixed A, starting from the asymptotic Sigma_n
// point. Throws BracketFailure.
BoundaryPoint bisect_sigma_boundary(int n, Side side, double A, const ClassifierConfig& cfg = {},
                                    double rel_width = 1e-4);

struct SignatureFit {
  AsymptoticSignature sig;
  double residual = 0;  // relative rms
  std::size_t points = 0;
};

// Least-squares fit over [t_lo, t_hi]. Type A: (d, phase) including the d^2
// log(-t) drift. Type C: (rho, sigma) from the pole positions. Throws
// FitRejected when residual > fit_tol, SignatureUndefined for B or undecided.
SignatureFit fit_signature(const Trajectory& traj, Label label, double t_lo, double t_hi,
                           double fit_tol = 0.1);

// Fit against synthetic type-A samples; exposed for roundtrip tests.
SignatureFit fit_type_A(const std::vector<double>& t, const std::vector<double>& delta,
                        double fit_tol = 0.1);
std::vector<double> type_A_signal(const std::vector<double>& t, double d, double phase);

struct PhaseDiagramGrid {
  double r_min = -2, r_max = 14, b_min = -8, b_max = 8;
  int nr = 280, nb = 160;

  void validate() const;
  double r_at(int i) const { return r_min + (i + 0.5) * (r_max - r_min) / nr; }
  double b_at(int j) const { return b_min + (j + 0.5) * (b_max - b_min) / nb; }
};

struct Raster {
  PhaseDiagramGrid grid;
  std::vector<SolutionClass> cells;  // index j * nr + i (b slowest)
};

Raster scan_phase_diagram(const PhaseDiagramGrid& grid, const ClassifierConfig& cfg = {},
                          int workers = 1);

std::string raster_csv(const Raster& raster);
// P2 greymap: A = 255, C = 0, undecided = 128, rows top = b_max.
std::string raster_pgm(const Raster& raster);

}  // namespace p1
