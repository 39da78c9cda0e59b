#pragma once

#include <cmath>
#include <sstream>

#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/gamma.hpp"
#include "cmkit/quadrature.hpp"

namespace cmkit {

/// Tricomi confluent hypergeometric function
///   U(a, b, x) = 1/Gamma(a) int_0^inf t^{a-1} (1+t)^{b-a-1} e^{-xt} dt,  a > 0, x > 0.
///
/// The integral is split at t = 1. On [0, 1] the endpoint factor t^{a-1} is
/// removed for a < 1 by u = t^a. The tail is rescaled with t = 1 + v/x so
/// the exponential weight becomes e^{-v} independent of x.
inline double tricomi_u(double a, double b, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  if (!(a > 0.0) || !(x > 0.0) || !std::isfinite(b)) {
    std::ostringstream os;
    os << "tricomi_u requires a > 0 and x > 0 (got a=" << a << ", b=" << b << ", x=" << x << ")";
    throw domain_error(os.str());
  }
  const double c = b - a - 1.0;
  const double tol = std::max(cfg.rel_tol, 1e-14);

  quad::QuadResult head;
  if (a < 1.0) {
    const double inv_a = 1.0 / a;
    auto g = [&](double u) {
      const double t = std::pow(u, inv_a);
      return std::exp(c * std::log1p(t) - x * t);
    };
    head = quad::integrate_gk15(g, 0.0, 1.0, 0.0, tol, cfg.quad_nodes);
    head.value *= inv_a;
    head.abs_error *= inv_a;
  } else {
    auto g = [&](double t) {
      if (t == 0.0) return a == 1.0 ? 1.0 : 0.0;
      return std::exp((a - 1.0) * std::log(t) + c * std::log1p(t) - x * t);
    };
    head = quad::integrate_gk15(g, 0.0, 1.0, 0.0, tol, cfg.quad_nodes);
  }
  const double head_value = quad::require_converged(head, "tricomi_u (head)");

  // int_1^inf t^{a-1}(1+t)^c e^{-xt} dt = e^{-x}/x int_0^inf (1+v/x)^{a-1} (2+v/x)^c e^{-v} dv
  auto h = [&](double v) {
    const double s = v / x;
    return std::exp((a - 1.0) * std::log1p(s) + c * std::log(2.0 + s) - v);
  };
  const double scale = std::exp(-x) / x;
  const double tail_abs = scale > 0.0 ? 0.1 * tol * head_value / scale : 0.0;
  const auto tail = quad::integrate_semi_infinite(h, 0.0, tail_abs, tol, cfg.quad_nodes);
  const double tail_value = quad::require_converged(tail, "tricomi_u (tail)") * scale;

  return std::exp(std::log(head_value + tail_value) - log_gamma(a));
}

/// U_p(a, b, x) = Gamma(a+p)/Gamma(a) U(a+p, b+p, x), defined for p > -a.
inline double tricomi_u_p(double p, double a, double b, double x,
                          const EvalConfig& cfg = EvalConfig::defaults()) {
  if (!(a > 0.0) || !(p > -a)) {
    std::ostringstream os;
    os << "tricomi_u_p requires a > 0 and p > -a (got p=" << p << ", a=" << a << ")";
    throw domain_error(os.str());
  }
  return gamma_ratio(a + p, a) * tricomi_u(a + p, b + p, x, cfg);
}

}  // namespace cmkit
