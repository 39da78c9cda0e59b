#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/gamma.hpp"
#include "cmkit/majorization.hpp"
#include "cmkit/mills.hpp"
#include "cmkit/theta0.hpp"
#include "cmkit/tricomi.hpp"
#include "cmkit/zeta.hpp"

namespace cmkit {

/// One Laplace-transform family F_p(x) = int t^p f(t) e^{-xt} dt.
///
/// theta_logconcave / theta_logconvex are the exponents at which t^theta f(t)
/// is log-concave / log-convex; they select the sharp constants lambda^[theta].
/// A missing theta_logconvex means only the limit theta -> -inf is available,
/// where lambda = 1.
struct FamilySpec {
  enum class Kind { hurwitz, alternating, tricomi, gaussian };

  Kind kind = Kind::hurwitz;
  double a = 0.0;  // tricomi only
  double b = 0.0;  // tricomi only
  std::optional<double> theta_logconcave;
  std::optional<double> theta_logconvex;

  /// f(t) = 1/(1-e^{-t}), F_p = psi_p.
  static FamilySpec hurwitz() { return {Kind::hurwitz, 0.0, 0.0, 1.0, 0.0}; }
  /// f(t) = 1/(1+e^{-t}), F_p = beta_p.
  static FamilySpec alternating() {
    return {Kind::alternating, 0.0, 0.0, 0.0, solve_theta0().theta0};
  }
  /// f(t) = t^{a-1}(1+t)^{b-a-1}, F_p = Gamma(a+p) U(a+p, b+p, x).
  static FamilySpec tricomi(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(b)) {
      std::ostringstream os;
      os << "tricomi family requires a > 0 and finite b (got a=" << a << ", b=" << b << ")";
      throw domain_error(os.str());
    }
    const double t1 = 1.0 - a, t2 = 2.0 - b;
    return {Kind::tricomi, a, b, std::max(t1, t2), std::min(t1, t2)};
  }
  /// f(t) = e^{-t^2/2}, F_p = R_p.
  static FamilySpec gaussian() { return {Kind::gaussian, 0.0, 0.0, 0.0, std::nullopt}; }

  static FamilySpec from_name(const std::string& name, double a = 2.0, double b = 2.0) {
    if (name == "hurwitz") return hurwitz();
    if (name == "alternating") return alternating();
    if (name == "tricomi") return tricomi(a, b);
    if (name == "gaussian") return gaussian();
    throw precondition_error("unknown family '" + name +
                             "' (expected hurwitz, alternating, tricomi, gaussian)");
  }

  std::string name() const {
    switch (kind) {
      case Kind::hurwitz: return "hurwitz";
      case Kind::alternating: return "alternating";
      case Kind::tricomi: return "tricomi";
      case Kind::gaussian: return "gaussian";
    }
    return "?";
  }

  /// Indices must lie strictly above this bound.
  double index_lower_bound() const {
    switch (kind) {
      case Kind::hurwitz: return 0.0;
      case Kind::alternating: return -1.0;
      case Kind::tricomi: return -a;
      case Kind::gaussian: return -1.0;
    }
    return 0.0;
  }

  bool index_valid(double p) const { return p > index_lower_bound() && std::isfinite(p); }
};

/// F_p(x) for the given family.
inline double family_F(const FamilySpec& spec, double p, double x,
                       const EvalConfig& cfg = EvalConfig::defaults()) {
  if (!spec.index_valid(p)) {
    std::ostringstream os;
    os << spec.name() << " family requires p > " << spec.index_lower_bound() << " (got p=" << p
       << ")";
    throw domain_error(os.str());
  }
  switch (spec.kind) {
    case FamilySpec::Kind::hurwitz: return ext_polygamma(p, x, cfg);
    case FamilySpec::Kind::alternating: return nielsen_beta_p(p, x, cfg);
    case FamilySpec::Kind::tricomi:
      return std::exp(log_gamma(spec.a + p)) * tricomi_u(spec.a + p, spec.b + p, x, cfg);
    case FamilySpec::Kind::gaussian: return mills_ratio_p(p, x, cfg);
  }
  return 0.0;
}

/// The sharp constant sanctioned for sign +1 (log-concave side) or sign -1
/// (log-convex side). Throws domain_error when theta violates
/// theta < 1 + min(p_n, q_n).
inline double sanctioned_lambda(const FamilySpec& spec, const MajorizationPair& pair, int sign) {
  const auto& th = sign > 0 ? spec.theta_logconcave : spec.theta_logconvex;
  if (!th) return 1.0;
  return lambda_constant(pair.p().entries(), pair.q().entries(), *th);
}

}  // namespace cmkit
