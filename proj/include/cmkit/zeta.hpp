#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/gamma.hpp"
#include "cmkit/sequences.hpp"

namespace cmkit {

namespace detail {

inline void check_hurwitz_domain(const char* who, double p, double x) {
  if (!(p > 1.0) || !(x > 0.0) || !std::isfinite(p) || !std::isfinite(x)) {
    std::ostringstream os;
    os << who << " requires p > 1 and x > 0 (got p=" << p << ", x=" << x << ")";
    throw domain_error(os.str());
  }
}

inline void check_alt_domain(const char* who, double p, double x) {
  if (!(p > 0.0) || !(x > 0.0) || !std::isfinite(p) || !std::isfinite(x)) {
    std::ostringstream os;
    os << who << " requires p > 0 and x > 0 (got p=" << p << ", x=" << x << ")";
    throw domain_error(os.str());
  }
}

// One Euler-Maclaurin evaluation with shift N. Returns false when the
// correction terms stop decreasing or the first omitted term exceeds the
// tolerance.
inline bool hurwitz_em(double p, double x, int N, int terms, double rel_tol, double& out) {
  double head = 0.0;
  for (int k = N - 1; k >= 0; --k) head += std::pow(k + x, -p);
  const double w = N + x;
  const double w_pow = std::pow(w, -p);  // (N+x)^{-p}
  double tail = w * w_pow / (p - 1.0) + 0.5 * w_pow;

  const auto& coef = bernoulli_over_factorial();
  const int max_terms = std::min(terms, kMaxEulerMaclaurinTerms - 1);
  // rising = (p)_{2n-1}, power = (N+x)^{-(p+2n-1)}
  double rising = p;
  double power = w_pow / w;
  double previous = std::numeric_limits<double>::infinity();
  double correction = 0.0;
  for (int n = 1; n <= max_terms; ++n) {
    const double term = coef[n] * rising * power;
    if (std::abs(term) > std::abs(previous)) return false;
    correction += term;
    previous = term;
    rising *= (p + 2.0 * n - 1.0) * (p + 2.0 * n);
    power /= w * w;
  }
  const double omitted = coef[max_terms + 1] * rising * power;
  out = head + (tail + correction);
  if (std::abs(omitted) > std::abs(previous) && max_terms > 0) return false;
  return std::abs(omitted) <= rel_tol * std::abs(out);
}

}  // namespace detail

/// Hurwitz zeta zeta(p, x) = sum_{k>=0} (k+x)^{-p} for p > 1, x > 0.
///
/// Euler-Maclaurin summation: the first N terms are summed directly and the
/// remainder is replaced by its integral, the half end term and em_terms
/// Bernoulli corrections. When the first omitted correction is not below
/// rel_tol the shift N is doubled; a convergence_error is raised once N
/// passes 2^20.
inline double hurwitz_zeta(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_hurwitz_domain("hurwitz_zeta", p, x);
  double out = 0.0;
  for (int N = cfg.em_shift_N; N <= (1 << 20); N *= 2) {
    if (detail::hurwitz_em(p, x, N, cfg.em_terms, cfg.rel_tol, out)) {
      if (!std::isfinite(out)) {
        std::ostringstream os;
        os << "hurwitz_zeta overflows at p=" << p << ", x=" << x;
        throw domain_error(os.str());
      }
      return out;
    }
  }
  std::ostringstream os;
  os << "hurwitz_zeta: Euler-Maclaurin corrections did not reach rel_tol=" << cfg.rel_tol
     << " at p=" << p << ", x=" << x;
  throw convergence_error(os.str());
}

/// Riemann zeta(p) = zeta(p, 1).
inline double riemann_zeta(double p, const EvalConfig& cfg = EvalConfig::defaults()) {
  return hurwitz_zeta(p, 1.0, cfg);
}

/// Alternating Hurwitz zeta through 2^{-p}[zeta(p, x/2) - zeta(p, (x+1)/2)]; p > 1.
inline double alt_hurwitz_zeta_pairing(double p, double x,
                                       const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_hurwitz_domain("alt_hurwitz_zeta_pairing", p, x);
  return std::pow(2.0, -p) * (hurwitz_zeta(p, 0.5 * x, cfg) - hurwitz_zeta(p, 0.5 * (x + 1.0), cfg));
}

/// Alternating Hurwitz zeta by the Cohen-Rodriguez Villegas-Zagier
/// acceleration of sum (-1)^k (k+x)^{-p}. The terms are moments of a
/// positive measure on [0, 1], so the relative error after n terms is at
/// most 4 (3+sqrt 8)^{-n}.
inline double alt_hurwitz_zeta_accelerated(double p, double x,
                                           const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_alt_domain("alt_hurwitz_zeta_accelerated", p, x);
  const double rate = 3.0 + 2.0 * std::numbers::sqrt2;
  const double tol = std::max(cfg.rel_tol, 1e-17);
  const int n = static_cast<int>(std::ceil(std::log(4.0 / tol) / std::log(rate))) + 2;
  double d = std::pow(rate, n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * std::pow(k + x, -p);
    b = (static_cast<double>(k + n) * static_cast<double>(k - n) * b) /
        ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

/// Pairing with Hurwitz zeta is used when p exceeds 1 by this margin.
inline constexpr double kAltPairingMargin = 0.5;
/// Above this x the pairing difference cancels too many digits.
inline constexpr double kAltPairingMaxX = 64.0;

/// Alternating Hurwitz zeta zeta*(p, x) = sum_{k>=0} (-1)^k (k+x)^{-p}; p > 0, x > 0.
inline double alt_hurwitz_zeta(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  detail::check_alt_domain("alt_hurwitz_zeta", p, x);
  if (p > 1.0 + kAltPairingMargin && x <= kAltPairingMaxX) return alt_hurwitz_zeta_pairing(p, x, cfg);
  return alt_hurwitz_zeta_accelerated(p, x, cfg);
}

/// Extended polygamma psi_p(x) = Gamma(p+1) zeta(p+1, x); p > 0.
inline double ext_polygamma(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  if (!(p > 0.0)) {
    std::ostringstream os;
    os << "ext_polygamma requires p > 0 (got p=" << p << ")";
    throw domain_error(os.str());
  }
  const double z = hurwitz_zeta(p + 1.0, x, cfg);
  return std::exp(log_gamma(p + 1.0) + std::log(z));
}

/// Nielsen's beta_p(x) = Gamma(p+1) zeta*(p+1, x); p > -1.
inline double nielsen_beta_p(double p, double x, const EvalConfig& cfg = EvalConfig::defaults()) {
  if (!(p > -1.0)) {
    std::ostringstream os;
    os << "nielsen_beta_p requires p > -1 (got p=" << p << ")";
    throw domain_error(os.str());
  }
  const double z = alt_hurwitz_zeta(p + 1.0, x, cfg);
  return std::exp(log_gamma(p + 1.0) + std::log(z));
}

/// Dirichlet lambda(p) = sum 1/(2k-1)^p = (1 - 2^{-p}) zeta(p).
inline double dirichlet_lambda(double p, const EvalConfig& cfg = EvalConfig::defaults()) {
  return -std::expm1(-p * std::numbers::ln2) * riemann_zeta(p, cfg);
}

/// Dirichlet eta(p) = zeta*(p, 1).
inline double dirichlet_eta(double p, const EvalConfig& cfg = EvalConfig::defaults()) {
  return alt_hurwitz_zeta(p, 1.0, cfg);
}

/// Dirichlet beta(p) = 2^{-p} zeta*(p, 1/2).
inline double dirichlet_beta_fn(double p, const EvalConfig& cfg = EvalConfig::defaults()) {
  return std::pow(2.0, -p) * alt_hurwitz_zeta(p, 0.5, cfg);
}

/// Dirichlet beta(p) = 4^{-p} [zeta(p, 1/4) - zeta(p, 3/4)], valid for p > 1.
inline double dirichlet_beta_hurwitz_form(double p, const EvalConfig& cfg = EvalConfig::defaults()) {
  return std::pow(4.0, -p) * (hurwitz_zeta(p, 0.25, cfg) - hurwitz_zeta(p, 0.75, cfg));
}

}  // namespace cmkit
