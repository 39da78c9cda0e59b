#pragma once

#include <cmath>
#include <span>
#include <sstream>

#include "cmkit/errors.hpp"

namespace cmkit {

/// ln Gamma(x) for x > 0. Backed by the C library's lgamma, which is accurate
/// to a few ulp on the positive axis.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "log_gamma requires x > 0 (got " << x << ")";
    throw domain_error(os.str());
  }
  return std::lgamma(x);
}

/// Gamma(a) / Gamma(b), evaluated in log space.
inline double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << "gamma_ratio requires a > 0 and b > 0 (got a=" << a << ", b=" << b << ")";
    throw domain_error(os.str());
  }
  return std::exp(log_gamma(a) - log_gamma(b));
}

/// Logarithm of prod_j Gamma(p_j - theta + 1) / Gamma(q_j - theta + 1).
inline double log_lambda_constant(std::span<const double> p, std::span<const double> q,
                                  double theta) {
  if (p.size() != q.size()) throw precondition_error("lambda_constant: p and q differ in length");
  double acc = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double a = p[j] - theta + 1.0;
    const double b = q[j] - theta + 1.0;
    if (!(a > 0.0) || !(b > 0.0)) {
      std::ostringstream os;
      os << "lambda_constant: gamma argument <= 0 at index " << j << " (theta=" << theta
         << " must satisfy theta < 1 + min(p_n, q_n))";
      throw domain_error(os.str());
    }
    acc += log_gamma(a) - log_gamma(b);
  }
  return acc;
}

/// The sharp constant lambda_n^[theta] = prod_j Gamma(p_j-theta+1)/Gamma(q_j-theta+1).
inline double lambda_constant(std::span<const double> p, std::span<const double> q,
                              double theta) {
  return std::exp(log_lambda_constant(p, q, theta));
}

/// lambda_n^* = prod_j Gamma(b+p_j-1) Gamma(a+q_j) / (Gamma(b+q_j-1) Gamma(a+p_j)),
/// the sharp constant for ratios of Tricomi functions.
inline double tricomi_lambda_star(double a, double b, std::span<const double> p,
                                  std::span<const double> q) {
  if (p.size() != q.size()) throw precondition_error("tricomi_lambda_star: length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    acc += log_gamma(b + p[j] - 1.0) + log_gamma(a + q[j]) - log_gamma(b + q[j] - 1.0) -
           log_gamma(a + p[j]);
  return std::exp(acc);
}

}  // namespace cmkit
