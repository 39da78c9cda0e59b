#pragma once

#include <cmath>

namespace cmkit {

/// Threshold below which t^theta / (1 + e^{-t}) is log-convex on (0, inf).
struct Theta0Pair {
  double t0;      ///< maximizer of t^2 e^t / (e^t + 1)^2
  double theta0;  ///< -t0^2 e^{t0} / (e^{t0} + 1)^2
};

namespace detail {

inline double theta0_residual(double t) { return std::exp(t) * (t - 2.0) - t - 2.0; }
inline double theta0_slope(double t) { return std::exp(t) * (t - 1.0) - 1.0; }

}  // namespace detail

/// Root of t e^t - 2 e^t - t - 2 = 0 on [2, 3] (g(2) < 0 < g(3)): bisection
/// to a narrow bracket, then Newton steps kept inside it.
inline Theta0Pair solve_theta0() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 30; ++i) {
    const double mid = 0.5 * (lo + hi);
    (detail::theta0_residual(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double step = detail::theta0_residual(t) / detail::theta0_slope(t);
    const double next = t - step;
    if (!(next > lo && next < hi)) break;
    t = next;
    if (std::abs(step) <= 1e-16 * t) break;
  }
  const double e = std::exp(t);
  return {t, -t * t * e / ((e + 1.0) * (e + 1.0))};
}

}  // namespace cmkit
