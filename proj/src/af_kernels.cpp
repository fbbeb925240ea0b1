#include "af_kernels.hpp"

#include <cmath>
#include <numbers>

namespace cb::detail {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvTwoPi = 1.0 / kTwoPi;
}  // namespace

void accumulate_af_row(const double* cos_phi, const double* sin_phi, int n, double a, double b,
                       double c, double cur, double* scratch, double* re, double* im) {
  // Geometry phases reach ~1e5 rad; reducing into [-pi, pi] keeps libm on its fast path
  // and costs ~1 ulp of the phase, orders below the quadrature tolerance.
  for (int j = 0; j < n; ++j) {
    const double t = a * cos_phi[j] + b * sin_phi[j] + c;
    scratch[j] = t - kTwoPi * std::nearbyint(t * kInvTwoPi);
  }
  for (int j = 0; j < n; ++j) re[j] += cur * std::cos(scratch[j]);
  for (int j = 0; j < n; ++j) im[j] += cur * std::sin(scratch[j]);
}

}  // namespace cb::detail
