#include <cmath>
#include <numbers>

#include "p1/asymptotics.hpp"
#include "p1/error.hpp"

namespace p1 {

// Shift to Re z >= 10 by recurrence, then the Stirling series. Summing the
// principal logs keeps Im log Gamma continuous off the negative real axis.
cplx lgamma_complex(cplx z) {
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
    throw Error(ErrorCode::InvalidArgument, "log Gamma at a pole");
  cplx shift = 0;
  while (z.real() < 10) {
    shift += std::log(z);
    z += 1.0;
  }
  // B_2k / (2k (2k - 1)), k = 1..8
  static constexpr double c[] = {1.0 / 12,      -1.0 / 360,     1.0 / 1260,        -1.0 / 1680,
                                 1.0 / 1188,    -691.0 / 360360, 1.0 / 156,       -3617.0 / 122400};
  const cplx iz = 1.0 / z, iz2 = iz * iz;
  cplx series = 0, p = iz;
  for (double ck : c) {
    series += ck * p;
    p *= iz2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi) + series - shift;
}

}  // namespace p1
