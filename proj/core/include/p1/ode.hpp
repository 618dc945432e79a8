#pragma once

#include <optional>
#include <span>
#include <vector>

#include "p1/dopri.hpp"

namespace p1 {

struct RealState {
  double t = 0, y = 0, dy = 0;
};

struct PoleDatum {
  double p = 0, H = 0;
};

enum class Side { minus, plus };

inline int side_sign(Side s) { return s == Side::plus ? 1 : -1; }
const char* side_name(Side s);

struct ZeroDatum {
  double r = 0, b = 0;
  Side side = Side::plus;
  int index = 0;            // poles strictly to the left of r within the trajectory
  bool degenerate = false;  // b == 0
};

struct IntegratorOptions {
  double rtol = 1e-10, atol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-13;
  long max_steps = 5'000'000;
  // Hand-over to the Laurent fit once y passes this value while rising toward
  // a pole. The restart mirrors the switch point, and integration errors near
  // the pole leak into H like rtol |t - p|^-6, so the switch stays low:
  // y = 25 restarts at |t - p| ~ 0.2.
  double y_switch = 25.0;
  double y_blow = 1e6;
  bool cross_poles = true;
  int fit_samples = 20;
};

using Dense2 = dopri::Dense<double, 2>;

struct Trajectory {
  std::vector<RealState> samples;
  std::vector<Dense2> steps;        // one per accepted step, same direction as samples
  std::vector<PoleDatum> poles;     // in order of traversal
  std::vector<double> pole_offsets; // restart offset used for each pole
  long accepted = 0, rejected = 0;
  double rtol = 0, atol = 0;
  bool reached_end = false;
  bool stopped_at_pole = false;

  int direction() const;
  // Dense evaluation; empty when t is outside the integrated range or inside a
  // pole window.
  std::optional<RealState> at(double t) const;
  // |y'' - 6y^2 - t| from the dense interpolant.
  std::optional<double> residual(double t) const;
};

// ---- Laurent series about a double pole: y = sum_k c_k (t-p)^(k-2), c0 = 1.

std::vector<double> laurent_coeffs(const PoleDatum& pole, int kmax);
// Radius estimate from the root test on the computed coefficients.
double laurent_radius(const PoleDatum& pole);
// y and y' at p + u. Throws OffsetTooLarge if the series does not settle.
RealState laurent_state(const PoleDatum& pole, double u);

PoleDatum fit_pole(std::span<const RealState> tail);
RealState restart_from_pole(const PoleDatum& pole, double delta);

Trajectory integrate(const RealState& start, double t_end, const IntegratorOptions& opts = {});
// Starts at p + delta and records the pole itself as the first event.
Trajectory integrate_from_pole(const PoleDatum& pole, double delta, double t_end,
                               const IntegratorOptions& opts = {});

std::vector<ZeroDatum> find_zeros(const Trajectory& traj, double tol_zero = 1e-10);

// ---- special seeds

RealState seed_tritronquee(double t_start);
RealState seed_pole(const PoleDatum& pole, double t_start);

// Algebraic series of the real tritronquee for t -> -infinity,
// y = -sqrt(x/6) sum a_k x^(-5k/2), x = -t.
std::vector<double> tritronquee_coeffs(int kmax);

}  // namespace p1
