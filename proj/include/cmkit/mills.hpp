#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/gamma.hpp"
#include "cmkit/quadrature.hpp"

namespace cmkit {

namespace detail {

inline void check_mills_domain(const char* who, double p, double x) {
  if (!(p > -1.0) || !(x >= 0.0) || !std::isfinite(p) || !std::isfinite(x)) {
    std::ostringstream os;
    os << who << " requires p > -1 and x >= 0 (got p=" << p << ", x=" << x << ")";
    throw domain_error(os.str());
  }
}

}  // namespace detail

/// R_p(x) = sum_k (-1)^k 2^{(k+p-1)/2} Gamma((k+p+1)/2) x^k / k!.
/// Entire in x; used for small x where the alternating terms do not cancel.
inline double mills_series(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_mills_domain("mills_series", p, x);
  const double ln2 = std::numbers::ln2;
  double sum = std::exp(0.5 * (p - 1.0) * ln2 + log_gamma(0.5 * (p + 1.0)));
  if (x == 0.0) return sum;
  const double lx = std::log(x);
  const double eps = std::max(0.1 * cfg.rel_tol, 1e-17);
  for (int k = 1; k < 2000; ++k) {
    const double mag = std::exp(0.5 * (k + p - 1.0) * ln2 + log_gamma(0.5 * (k + p + 1.0)) -
                                std::lgamma(k + 1.0) + k * lx);
    sum += (k % 2 == 0) ? mag : -mag;
    if (mag < eps * std::abs(sum) && k > 2 * x * x) return sum;
  }
  std::ostringstream os;
  os << "mills_series did not converge at p=" << p << ", x=" << x;
  throw convergence_error(os.str());
}

/// Optimally truncated asymptotic series
///   R_p(x) ~ sum_k (-1)^k Gamma(2k+p+1) / (2^k k! x^{2k+p+1}),
/// summed up to (excluding) the smallest term, plus half of that term. The
/// remainder is bounded by the smallest term; when half of it exceeds
/// tol*|R| the expansion is declared unreliable.
inline double mills_asymptotic(double p, double x, double tol) {
  detail::check_mills_domain("mills_asymptotic", p, x);
  if (x == 0.0) throw domain_error("mills_asymptotic requires x > 0");
  const double lx = std::log(x);
  const double ln2 = std::numbers::ln2;
  auto log_mag = [&](int k) {
    return std::lgamma(2.0 * k + p + 1.0) - k * ln2 - std::lgamma(k + 1.0) - (2.0 * k + p + 1.0) * lx;
  };
  double sum = 0.0;
  double mag = std::exp(log_mag(0));
  for (int k = 0; k < 100000; ++k) {
    const double next = std::exp(log_mag(k + 1));
    const double term = (k % 2 == 0) ? mag : -mag;
    if (next >= mag || mag <= 1e-18 * std::abs(sum)) {
      // t_k is the smallest-magnitude term.
      sum += 0.5 * term;
      if (0.5 * mag > tol * std::abs(sum)) {
        std::ostringstream os;
        os << "mills_asymptotic unreliable at p=" << p << ", x=" << x << ": remainder ~"
           << 0.5 * mag / std::abs(sum) << " exceeds tolerance " << tol;
        throw convergence_error(os.str());
      }
      return sum;
    }
    sum += term;
    mag = next;
  }
  throw convergence_error("mills_asymptotic: no smallest term found");
}

/// R_p(x) = int_0^inf t^p e^{-t^2/2} e^{-xt} dt by adaptive quadrature,
/// split at t = 1; for p < 0 the head uses u = t^{p+1}.
inline double mills_quadrature(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_mills_domain("mills_quadrature", p, x);
  const double tol = std::max(cfg.rel_tol, 1e-14);
  quad::QuadResult head;
  if (p < 0.0) {
    const double inv = 1.0 / (p + 1.0);
    auto g = [&](double u) {
      const double t = std::pow(u, inv);
      return std::exp(-0.5 * t * t - x * t);
    };
    head = quad::integrate_gk15(g, 0.0, 1.0, 0.0, tol, cfg.quad_nodes);
    head.value *= inv;
  } else {
    auto g = [&](double t) {
      if (t == 0.0) return p == 0.0 ? 1.0 : 0.0;
      return std::exp(p * std::log(t) - 0.5 * t * t - x * t);
    };
    head = quad::integrate_gk15(g, 0.0, 1.0, 0.0, tol, cfg.quad_nodes);
  }
  const double head_value = quad::require_converged(head, "mills_quadrature (head)");
  auto h = [&](double t) { return std::exp(p * std::log(t) - 0.5 * t * t - x * t); };
  const auto tail = quad::integrate_semi_infinite(h, 1.0, 0.1 * tol * head_value, tol, cfg.quad_nodes);
  return head_value + quad::require_converged(tail, "mills_quadrature (tail)");
}

/// Mills ratio of order p, R_p(x) = int_0^inf t^p e^{-t^2/2 - xt} dt, for
/// p > -1 and x >= 0 (R_0 is the classical Mills ratio (1 - Phi)/phi).
///
/// Power series for x <= series_switch_x, optimally truncated asymptotic
/// series for x >= asym_switch_x when its remainder meets rel_tol, and
/// adaptive quadrature otherwise.
inline double mills_ratio_p(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_mills_domain("mills_ratio_p", p, x);
  if (x <= cfg.series_switch_x) return mills_series(p, x, cfg);
  if (x >= cfg.asym_switch_x) {
    try {
      return mills_asymptotic(p, x, std::max(cfg.rel_tol, 1e-15));
    } catch (const convergence_error&) {
      // Too few digits available from the expansion at this (p, x).
    }
  }
  return mills_quadrature(p, x, cfg);
}

}  // namespace cmkit
