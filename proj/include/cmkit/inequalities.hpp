#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cmkit/cm_verifier.hpp"
#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/family.hpp"
#include "cmkit/gamma.hpp"
#include "cmkit/majorization.hpp"
#include "cmkit/mills.hpp"
#include "cmkit/sequences.hpp"
#include "cmkit/theta0.hpp"
#include "cmkit/tricomi.hpp"
#include "cmkit/zeta.hpp"

namespace cmkit {

/// Normalized slacks below this are treated as equality.
inline constexpr double kStrictnessFloor = 1e-12;
/// Floor for the exact-sequence cases, whose bounds are evaluated with 50
/// significant digits.
inline constexpr double kExactStrictnessFloor = 1e-30;

/// One auxiliary check attached to a report: a sharpness probe, a
/// log-convexity corollary, or conjecture evidence.
struct IneqCheck {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  bool pass = true;
  bool gating = true;
};

struct IneqReport {
  std::string id;
  std::vector<std::pair<std::string, std::vector<double>>> params;
  std::size_t samples = 0;
  /// min over samples of (middle - lower)/|middle| and (upper - middle)/|middle|;
  /// +inf when the case has no bound on that side.
  double min_slack_lower = std::numeric_limits<double>::infinity();
  double min_slack_upper = std::numeric_limits<double>::infinity();
  std::vector<double> worst_lower_at;
  std::vector<double> worst_upper_at;
  double floor = kStrictnessFloor;
  std::vector<std::string> flags;
  std::vector<IneqCheck> checks;
  bool gating = true;  // false for conjecture evidence
  std::string verdict;

  bool passed() const { return verdict == "pass"; }
};

/// Evaluation context shared by all cases.
struct CatalogOptions {
  EvalConfig eval = EvalConfig::defaults();
  std::optional<std::vector<double>> grid;  // replaces the default x grid
  std::optional<int> n_max;                 // bernoulli, euler, yang-tian
};

/// 25 log-spaced points on [1e-2, 1e2].
inline std::vector<double> default_ineq_grid() { return log_grid(1e-2, 1e2, 25); }

namespace detail {

inline void add_sample(IneqReport& r, std::vector<double> at, std::optional<double> lower,
                       double middle, std::optional<double> upper) {
  ++r.samples;
  const double scale = std::fabs(middle);
  if (lower) {
    const double s = (middle - *lower) / scale;
    if (!(s >= r.min_slack_lower)) {  // also catches NaN
      r.min_slack_lower = s;
      r.worst_lower_at = at;
    }
  }
  if (upper) {
    const double s = (*upper - middle) / scale;
    if (!(s >= r.min_slack_upper)) {
      r.min_slack_upper = s;
      r.worst_upper_at = at;
    }
  }
}

inline void finalize(IneqReport& r) {
  bool ok = r.samples > 0 && r.min_slack_lower > r.floor && r.min_slack_upper > r.floor;
  for (const auto& c : r.checks)
    if (c.gating && !c.pass) ok = false;
  if (r.gating)
    r.verdict = ok ? "pass" : "fail";
  else
    r.verdict = ok ? "evidence-consistent" : "evidence-inconsistent";
}

/// Sharpness of a bound approached at x_probe: the ratio must be within 1% of
/// the bound, and moving the bound 5% towards the ratio must be violated at
/// some point of grid + {x_probe}.
inline void sharpness_checks(IneqReport& r, const std::string& label, double bound,
                             bool is_lower, double x_probe, const std::function<double(double)>& ratio,
                             const std::vector<double>& grid) {
  const double v = ratio(x_probe);
  std::ostringstream n1;
  n1 << label << ": ratio at x=" << x_probe << " within 1% of bound";
  r.checks.push_back({n1.str(), v, bound, std::fabs(v / bound - 1.0) <= 0.01, true});

  const double tightened = is_lower ? bound * 1.05 : bound * 0.95;
  bool violated = is_lower ? v < tightened : v > tightened;
  double where = x_probe;
  for (double x : grid) {
    if (violated) break;
    const double w = ratio(x);
    if (is_lower ? w < tightened : w > tightened) {
      violated = true;
      where = x;
    }
  }
  std::ostringstream n2;
  n2 << label << ": bound tightened by 5% is violated";
  r.checks.push_back({n2.str(), violated ? where : 0.0, tightened, violated, true});
}

/// Discrete second differences of p -> log g(p) on a p-grid; sign > 0 asserts
/// convexity, sign < 0 concavity. tol is absolute on the log scale.
inline IneqCheck log_second_difference_check(const std::string& name,
                                             const std::function<double(double)>& log_g,
                                             const std::vector<double>& pgrid, int sign,
                                             double tol = 1e-10, bool gating = true) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < pgrid.size(); ++i) {
    const double h1 = pgrid[i] - pgrid[i - 1], h2 = pgrid[i + 1] - pgrid[i];
    // Divided second difference scaled to unit spacing; exact for quadratics.
    const double d = ((log_g(pgrid[i + 1]) - log_g(pgrid[i])) / h2 -
                      (log_g(pgrid[i]) - log_g(pgrid[i - 1])) / h1) *
                     2.0 / (h1 + h2);
    worst = std::min(worst, sign * d);
  }
  return {name, worst, -tol, worst >= -tol, gating};
}

inline std::string short_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
  return v;
}

using HP = boost::multiprecision::cpp_bin_float_50;

inline HP hp_pi() { return boost::math::constants::pi<HP>(); }

inline HP to_hp(const BigRational& r) {
  return HP(boost::multiprecision::numerator(r)) / HP(boost::multiprecision::denominator(r));
}

/// Sample from high-precision values: slacks are formed before rounding.
inline void add_sample_hp(IneqReport& r, std::vector<double> at, const HP& lower, const HP& middle,
                          const HP& upper) {
  ++r.samples;
  const double sl = static_cast<double>((middle - lower) / abs(middle));
  const double su = static_cast<double>((upper - middle) / abs(middle));
  if (!(sl >= r.min_slack_lower)) {
    r.min_slack_lower = sl;
    r.worst_lower_at = at;
  }
  if (!(su >= r.min_slack_upper)) {
    r.min_slack_upper = su;
    r.worst_upper_at = at;
  }
}

inline const std::vector<double>& grid_of(const CatalogOptions& o, std::vector<double>& storage) {
  if (o.grid) return *o.grid;
  storage = default_ineq_grid();
  return storage;
}

inline double product_ratio(const std::function<double(double)>& F, const std::vector<double>& p,
                            const std::vector<double>& q) {
  double acc = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) acc += std::log(F(p[j])) - std::log(F(q[j]));
  return std::exp(acc);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hurwitz family

/// prod Gamma(p_j)/Gamma(q_j) < prod psi_{p_j}(x)/psi_{q_j}(x) < prod Gamma(p_j+1)/Gamma(q_j+1).
inline IneqReport case_psi_ratio(const MajorizationPair& pair, const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "psi.ratio";
  const auto& p = pair.p().entries();
  const auto& q = pair.q().entries();
  r.params = {{"p", p}, {"q", q}};
  const double lower = lambda_constant(p, q, 1.0);
  const double upper = lambda_constant(p, q, 0.0);
  auto ratio = [&](double x) {
    return detail::product_ratio([&](double s) { return ext_polygamma(s, x, o.eval); }, p, q);
  };
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (double x : grid) detail::add_sample(r, {x}, lower, ratio(x), upper);
  detail::sharpness_checks(r, "lower (x -> inf)", lower, true, 1e3, ratio, grid);
  detail::sharpness_checks(r, "upper (x -> 0+)", upper, false, 1e-3, ratio, grid);
  detail::finalize(r);
  return r;
}

/// prod (q_j-1)/(p_j-1) < prod zeta(p_j,x)/zeta(q_j,x) < 1.
/// The lower bound is the x -> inf limit, the upper bound the x -> 0+ limit.
inline IneqReport case_hurwitz_ratio(const MajorizationPair& pair, const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "hurwitz.ratio";
  const auto& p = pair.p().entries();
  const auto& q = pair.q().entries();
  r.params = {{"p", p}, {"q", q}};
  for (double v : p)
    if (!(v > 1.0)) throw domain_error("hurwitz.ratio requires all entries > 1");
  double lower = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) lower *= (q[j] - 1.0) / (p[j] - 1.0);
  const double upper = 1.0;
  auto ratio = [&](double x) {
    return detail::product_ratio([&](double s) { return hurwitz_zeta(s, x, o.eval); }, p, q);
  };
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (double x : grid) detail::add_sample(r, {x}, lower, ratio(x), upper);
  detail::sharpness_checks(r, "lower (x -> inf)", lower, true, 1e3, ratio, grid);
  detail::sharpness_checks(r, "upper (x -> 0+)", upper, false, 1e-3, ratio, grid);
  detail::finalize(r);
  return r;
}

/// (p-1)(q-1)/((p+q)/2-1)^2 < zeta((p+q)/2,x)^2/(zeta(p,x) zeta(q,x)) < 1, together
/// with the log-convexity of zeta(., x) and log-concavity of (.-1) zeta(., x).
inline IneqReport case_turan_hurwitz(double p, double q, const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "hurwitz.turan";
  r.params = {{"p", {p}}, {"q", {q}}};
  if (!(p > 1.0) || !(q > 1.0)) throw domain_error("hurwitz.turan requires p, q > 1");
  if (p == q) throw precondition_error("hurwitz.turan requires p != q (p = q is an identity)");
  const double m = 0.5 * (p + q);
  const double lower = (p - 1.0) * (q - 1.0) / ((m - 1.0) * (m - 1.0));
  auto ratio = [&](double x) {
    const double zm = hurwitz_zeta(m, x, o.eval);
    return std::exp(2.0 * std::log(zm) - std::log(hurwitz_zeta(p, x, o.eval)) -
                    std::log(hurwitz_zeta(q, x, o.eval)));
  };
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (double x : grid) detail::add_sample(r, {x}, lower, ratio(x), 1.0);
  const auto pgrid = detail::linspace(1.25, 6.0, 20);
  for (double x : {0.1, 1.0, 10.0}) {
    std::ostringstream a, b;
    a << "zeta(., " << x << ") log-convex";
    b << "(.-1) zeta(., " << x << ") log-concave";
    r.checks.push_back(detail::log_second_difference_check(
        a.str(), [&](double s) { return std::log(hurwitz_zeta(s, x, o.eval)); }, pgrid, +1));
    r.checks.push_back(detail::log_second_difference_check(
        b.str(), [&](double s) { return std::log(s - 1.0) + std::log(hurwitz_zeta(s, x, o.eval)); },
        pgrid, -1));
  }
  detail::finalize(r);
  return r;
}

/// zeta(p+r)/zeta(p) between ((p-1)/(p+r-1)) U and U, U = (2^p-1) 2^r/(2^{p+r}-1).
inline IneqReport case_zeta_ratio(const std::vector<double>& ps, const std::vector<double>& rs,
                                  const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "zeta.ratio";
  r.params = {{"p", ps}, {"r", rs}};
  for (double p : ps)
    for (double s : rs) {
      if (!(p > 1.0) || !(s > 0.0)) throw domain_error("zeta.ratio requires p > 1 and r > 0");
      const double upper = std::expm1(p * std::numbers::ln2) * std::exp2(s) /
                           std::expm1((p + s) * std::numbers::ln2);
      const double lower = (p - 1.0) / (p + s - 1.0) * upper;
      const double mid = riemann_zeta(p + s, o.eval) / riemann_zeta(p, o.eval);
      detail::add_sample(r, {p, s}, lower, mid, upper);
    }
  detail::finalize(r);
  return r;
}

/// |B_{2n+2}|/|B_{2n}| between (2n+2)(2n-1)/pi^2 c_n and (2n+2)(2n+1)/pi^2 c_n,
/// c_n = (2^{2n}-1)/(2^{2n+2}-1), for n = 1..n_max. The middle is exact and the
/// bounds carry 50 digits; the upper slack decays like 9^{-n}.
inline IneqReport case_bernoulli_ratio(int n_max) {
  if (n_max < 1) throw precondition_error("bernoulli.ratio requires n_max >= 1");
  IneqReport r;
  r.id = "bernoulli.ratio";
  r.params = {{"n_max", {double(n_max)}}};
  r.floor = kExactStrictnessFloor;
  r.flags.push_back("exact rational middle; bounds in 50-digit arithmetic; floor 1e-30");
  const auto B = bernoulli_numbers(n_max + 1);
  const detail::HP pi2 = detail::hp_pi() * detail::hp_pi();
  for (int n = 1; n <= n_max; ++n) {
    const BigRational mid = abs(B[2 * n + 2]) / abs(B[2 * n]);
    const BigInt a = (BigInt(1) << (2 * n)) - 1, b = (BigInt(1) << (2 * n + 2)) - 1;
    const detail::HP c = detail::HP(a) / detail::HP(b);
    const detail::HP lower = detail::HP((2 * n + 2) * (2 * n - 1)) / pi2 * c;
    const detail::HP upper = detail::HP((2 * n + 2) * (2 * n + 1)) / pi2 * c;
    detail::add_sample_hp(r, {double(n)}, lower, detail::to_hp(mid), upper);
  }
  detail::finalize(r);
  return r;
}

/// 1/zeta(p+q) < alpha/zeta(p+2q) + beta/zeta(p). A non-gating check records
/// the form obtained from the convexity argument, where alpha multiplies
/// 1/zeta(p) and beta multiplies 1/zeta(p+2q).
inline IneqReport case_zeta_reciprocal_convexity(const std::vector<double>& ps,
                                                 const std::vector<double>& qs,
                                                 const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "zeta.reciprocal-convexity";
  r.params = {{"p", ps}, {"q", qs}};
  double worst_alt = std::numeric_limits<double>::infinity();
  for (double p : ps)
    for (double q : qs) {
      if (!(p > 1.0) || !(q > 0.0))
        throw domain_error("zeta.reciprocal-convexity requires p > 1 and q > 0");
      const double alpha = (p + q - 1.0) / (p - 1.0) * std::expm1((p + q) * std::numbers::ln2) /
                           (std::exp2(q + 1.0) * std::expm1(p * std::numbers::ln2));
      const double beta = (p + q - 1.0) / (p + 2.0 * q - 1.0) * std::exp2(q - 1.0) *
                          std::expm1((p + q) * std::numbers::ln2) /
                          std::expm1((p + 2.0 * q) * std::numbers::ln2);
      const double z0 = riemann_zeta(p, o.eval), z1 = riemann_zeta(p + q, o.eval),
                   z2 = riemann_zeta(p + 2.0 * q, o.eval);
      const double lhs = 1.0 / z1;
      detail::add_sample(r, {p, q}, std::nullopt, lhs, alpha / z2 + beta / z0);
      worst_alt = std::min(worst_alt, (alpha / z0 + beta / z2 - lhs) / lhs);
    }
  r.checks.push_back({"coefficients as produced by the convexity argument (alpha/zeta(p) + "
                      "beta/zeta(p+2q))",
                      worst_alt, 0.0, worst_alt > kStrictnessFloor, false});
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Alternating family

/// prod Gamma(p_j-vt+1)/Gamma(q_j-vt+1) < prod beta_{p_j}/beta_{q_j} < prod Gamma(p_j-th+1)/Gamma(q_j-th+1).
inline IneqReport case_beta_ratio(const MajorizationPair& pair, double theta, double vartheta,
                                  const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "beta.ratio";
  const auto& p = pair.p().entries();
  const auto& q = pair.q().entries();
  r.params = {{"p", p}, {"q", q}, {"theta", {theta}}, {"vartheta", {vartheta}}};
  const double th0 = solve_theta0().theta0;
  if (theta > th0) throw precondition_error("beta.ratio requires theta <= theta0");
  const double lower = lambda_constant(p, q, vartheta);
  const double upper = lambda_constant(p, q, theta);
  auto ratio = [&](double x) {
    return detail::product_ratio([&](double s) { return nielsen_beta_p(s, x, o.eval); }, p, q);
  };
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (double x : grid) detail::add_sample(r, {x}, lower, ratio(x), upper);
  if (vartheta == 0.0) {
    detail::sharpness_checks(r, "lower (x -> 0+)", lower, true, 1e-3, ratio, grid);
    detail::sharpness_checks(r, "lower (x -> inf)", lower, true, 1e3, ratio, grid);
  }
  detail::finalize(r);
  return r;
}

/// prod Gamma(p_j-vt)Gamma(q_j)/(Gamma(q_j-vt)Gamma(p_j)) < prod zeta*(p_j,x)/zeta*(q_j,x)
///   < the same with theta in place of vt.
inline IneqReport case_alt_hurwitz_ratio(const MajorizationPair& pair, double theta,
                                         double vartheta, const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "alt-hurwitz.ratio";
  const auto& p = pair.p().entries();
  const auto& q = pair.q().entries();
  r.params = {{"p", p}, {"q", q}, {"theta", {theta}}, {"vartheta", {vartheta}}};
  if (theta > solve_theta0().theta0) throw precondition_error("alt-hurwitz.ratio requires theta <= theta0");
  auto bound = [&](double t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      acc += log_gamma(p[j] - t) + log_gamma(q[j]) - log_gamma(q[j] - t) - log_gamma(p[j]);
    return std::exp(acc);
  };
  const double lower = bound(vartheta), upper = bound(theta);
  auto ratio = [&](double x) {
    return detail::product_ratio([&](double s) { return alt_hurwitz_zeta(s, x, o.eval); }, p, q);
  };
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (double x : grid) detail::add_sample(r, {x}, lower, ratio(x), upper);
  if (vartheta == 0.0) {
    detail::sharpness_checks(r, "lower (x -> 0+)", lower, true, 1e-3, ratio, grid);
    detail::sharpness_checks(r, "lower (x -> inf)", lower, true, 1e3, ratio, grid);
  }
  detail::finalize(r);
  return r;
}

/// 1 < zeta*((p+q)/2,x)^2/(zeta*(p,x) zeta*(q,x))
///   < Gamma(m-th0)^2 Gamma(p) Gamma(q) / (Gamma(m)^2 Gamma(p-th0) Gamma(q-th0)), m = (p+q)/2,
/// with the log-concavity of zeta*(., x) and log-convexity of
/// Gamma(.)/Gamma(.-th0) zeta*(., x) on (1, inf).
inline IneqReport case_turan_alt_hurwitz(double p, double q, const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "alt-hurwitz.turan";
  r.params = {{"p", {p}}, {"q", {q}}};
  if (!(p > 0.0) || !(q > 0.0)) throw domain_error("alt-hurwitz.turan requires p, q > 0");
  if (p == q) throw precondition_error("alt-hurwitz.turan requires p != q (p = q is an identity)");
  const double th0 = solve_theta0().theta0;
  const double m = 0.5 * (p + q);
  const double upper = std::exp(2.0 * log_gamma(m - th0) + log_gamma(p) + log_gamma(q) -
                                2.0 * log_gamma(m) - log_gamma(p - th0) - log_gamma(q - th0));
  auto ratio = [&](double x) {
    return std::exp(2.0 * std::log(alt_hurwitz_zeta(m, x, o.eval)) -
                    std::log(alt_hurwitz_zeta(p, x, o.eval)) -
                    std::log(alt_hurwitz_zeta(q, x, o.eval)));
  };
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (double x : grid) detail::add_sample(r, {x}, 1.0, ratio(x), upper);
  const auto pgrid = detail::linspace(1.25, 6.0, 20);
  for (double x : {0.1, 1.0, 10.0}) {
    std::ostringstream a, b;
    a << "zeta*(., " << x << ") log-concave";
    b << "Gamma(.)/Gamma(.-theta0) zeta*(., " << x << ") log-convex";
    r.checks.push_back(detail::log_second_difference_check(
        a.str(), [&](double s) { return std::log(alt_hurwitz_zeta(s, x, o.eval)); }, pgrid, -1));
    r.checks.push_back(detail::log_second_difference_check(
        b.str(),
        [&](double s) {
          return log_gamma(s) - log_gamma(s - th0) + std::log(alt_hurwitz_zeta(s, x, o.eval));
        },
        pgrid, +1));
  }
  detail::finalize(r);
  return r;
}

/// For n = 2..n_max:
///   8/pi^2 n(2n-1) < |E_{2n}|/|E_{2n-2}| < n(2n-1),
///   (4n+1)(4n-1)/15 < |E_{2n}|/|E_{2n-2}| < (4n+1)(4n-1)/pi^2.
/// Both pairs are attained with equality at n = 1, which is flagged and skipped.
inline IneqReport case_euler_ratio(int n_max) {
  if (n_max < 2) throw precondition_error("euler.ratio requires n_max >= 2");
  IneqReport r;
  r.id = "euler.ratio";
  r.params = {{"n_min", {2.0}}, {"n_max", {double(n_max)}}};
  r.floor = kExactStrictnessFloor;
  r.flags.push_back("n=1 excluded: |E_2|/|E_0| = 1 equals both n(2n-1) and (4n+1)(4n-1)/15");
  r.flags.push_back("exact integer middle; bounds in 50-digit arithmetic; floor 1e-30");
  const auto E = euler_numbers(n_max);
  const detail::HP pi2 = detail::hp_pi() * detail::hp_pi();
  for (int n = 2; n <= n_max; ++n) {
    const detail::HP mid = detail::HP(abs(E[2 * n])) / detail::HP(abs(E[2 * n - 2]));
    const detail::HP a = detail::HP(n * (2 * n - 1));
    const detail::HP b = detail::HP((4 * n + 1) * (4 * n - 1));
    detail::add_sample_hp(r, {double(n), 1.0}, 8 * a / pi2, mid, a);
    detail::add_sample_hp(r, {double(n), 2.0}, b / 15, mid, b / pi2);
  }
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Tricomi family

/// Sharp variant: lambda* < (>) prod U(a+p_j,b+p_j,x)/U(a+q_j,b+q_j,x) for a-b+1 > (<) 0.
/// Unit variant: the same ratio < (>) 1. Each (a, b) configuration keys its
/// own direction; b = a + 1 makes the ratio identically 1 and is rejected.
enum class TricomiVariant { sharp, unit };

inline IneqReport case_tricomi_ratio(const std::vector<std::pair<double, double>>& ab,
                                     const MajorizationPair& pair, TricomiVariant variant,
                                     const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = variant == TricomiVariant::sharp ? "tricomi.ratio-sharp" : "tricomi.ratio-unit";
  const auto& p = pair.p().entries();
  const auto& q = pair.q().entries();
  std::vector<double> as, bs;
  for (auto [a, b] : ab) {
    as.push_back(a);
    bs.push_back(b);
  }
  r.params = {{"a", as}, {"b", bs}, {"p", p}, {"q", q}};
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (auto [a, b] : ab) {
    const double d = a - b + 1.0;
    if (!(a > 0.0)) throw domain_error("tricomi ratio requires a > 0");
    if (d == 0.0) throw precondition_error("tricomi ratio excludes b = a + 1 (ratio is identically 1)");
    if (variant == TricomiVariant::sharp && !(b > 1.0))
      throw domain_error("tricomi.ratio-sharp requires b > 1");
    for (double v : pair.q())
      if (!(a + v > 0.0)) throw domain_error("tricomi ratio requires entries > -a");
    auto ratio = [&, a = a, b = b](double x) {
      return detail::product_ratio([&](double s) { return tricomi_u(a + s, b + s, x, o.eval); }, p,
                                   q);
    };
    const double bound = variant == TricomiVariant::sharp ? tricomi_lambda_star(a, b, p, q) : 1.0;
    // Sharp variant: lambda* is a lower bound when d > 0. Unit variant: 1 is an upper bound when d > 0.
    const bool bound_is_lower = (variant == TricomiVariant::sharp) == (d > 0.0);
    for (double x : grid) {
      const double v = ratio(x);
      if (bound_is_lower)
        detail::add_sample(r, {x, a, b}, bound, v, std::nullopt);
      else
        detail::add_sample(r, {x, a, b}, std::nullopt, v, bound);
    }
    std::ostringstream label;
    label << "a=" << a << ", b=" << b << (bound_is_lower ? " lower" : " upper");
    if (variant == TricomiVariant::sharp) {
      // lambda* is the x -> 0+ limit; the approach is only fast when every
      // b + q_j - 1 is at least 1.
      double slowest = std::numeric_limits<double>::infinity();
      for (double v : q) slowest = std::min(slowest, b + v - 1.0);
      if (slowest >= 1.0)
        detail::sharpness_checks(r, label.str() + " (x -> 0+)", bound, bound_is_lower, 1e-3, ratio,
                                 grid);
      else
        r.flags.push_back(label.str() + ": sharpness probe skipped (limit approached like x^" +
                          detail::short_number(slowest) + ")");
    } else {
      detail::sharpness_checks(r, label.str() + " (x -> inf)", bound, bound_is_lower, 1e3, ratio,
                               grid);
    }
  }
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Gaussian family

/// prod Gamma(p_j+1)/Gamma(q_j+1) < prod R_{p_j}(x)/R_{q_j}(x) < 1, for each pair.
inline IneqReport case_mills_ratio(const std::vector<MajorizationPair>& pairs,
                                   const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "mills.ratio";
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i].p().entries();
    const auto& q = pairs[i].q().entries();
    const std::string suffix = pairs.size() > 1 ? "[" + std::to_string(i) + "]" : "";
    r.params.push_back({"p" + suffix, p});
    r.params.push_back({"q" + suffix, q});
    const double lower = lambda_constant(p, q, 0.0);
    auto ratio = [&](double x) {
      return detail::product_ratio([&](double s) { return mills_ratio_p(s, x, o.eval); }, p, q);
    };
    for (double x : grid) detail::add_sample(r, {x, double(i)}, lower, ratio(x), 1.0);
    detail::sharpness_checks(r, "pair " + std::to_string(i) + " lower (x=50)", lower, true, 50.0,
                             ratio, grid);
  }
  detail::finalize(r);
  return r;
}

/// Gamma(n/2)Gamma(n/2+1)/Gamma(n/2+1/2)^2 < R_{n-1}R_{n+1}/R_n^2 < (n+1)/n, n = 1..n_max.
inline IneqReport case_yang_tian(int n_max, const CatalogOptions& o = {}) {
  if (n_max < 1) throw precondition_error("mills.yang-tian requires n_max >= 1");
  IneqReport r;
  r.id = "mills.yang-tian";
  r.params = {{"n_max", {double(n_max)}}};
  std::vector<double> gs;
  const auto& grid = detail::grid_of(o, gs);
  for (int n = 1; n <= n_max; ++n) {
    const double h = 0.5 * n;
    const double lower = std::exp(log_gamma(h) + log_gamma(h + 1.0) - 2.0 * log_gamma(h + 0.5));
    const double upper = double(n + 1) / n;
    for (double x : grid) {
      const double mid =
          std::exp(std::log(mills_ratio_p(n - 1, x, o.eval)) +
                   std::log(mills_ratio_p(n + 1, x, o.eval)) - 2.0 * std::log(mills_ratio_p(n, x, o.eval)));
      detail::add_sample(r, {x, double(n)}, lower, mid, upper);
    }
  }
  detail::finalize(r);
  return r;
}

/// Evidence for log-convexity of p -> R_p(x)/Gamma(p/2+1/2). Never gates.
inline IneqReport case_conjecture_rp(const std::vector<std::vector<double>>& pgrids,
                                     const std::vector<double>& xs, const CatalogOptions& o = {}) {
  IneqReport r;
  r.id = "mills.conjecture";
  r.gating = false;
  r.flags.push_back("conjecture");
  for (std::size_t i = 0; i < pgrids.size(); ++i)
    r.params.push_back({"p_grid[" + std::to_string(i) + "]", pgrids[i]});
  r.params.push_back({"x", xs});
  for (const auto& pg : pgrids)
    for (double x : xs) {
      std::ostringstream name;
      name << "R_p(" << x << ")/Gamma(p/2+1/2) log-convex on p in [" << pg.front() << ", "
           << pg.back() << "]";
      auto check = detail::log_second_difference_check(
          name.str(),
          [&](double s) { return std::log(mills_ratio_p(s, x, o.eval)) - log_gamma(0.5 * s + 0.5); },
          pg, +1, 1e-10, true);
      ++r.samples;
      r.checks.push_back(check);
    }
  r.min_slack_lower = r.min_slack_upper = std::numeric_limits<double>::infinity();
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Catalog

/// Stable ids in catalog order.
inline const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "psi.ratio",          "hurwitz.ratio",       "hurwitz.turan",
      "zeta.ratio",         "bernoulli.ratio",     "zeta.reciprocal-convexity",
      "beta.ratio",         "alt-hurwitz.ratio",   "alt-hurwitz.turan",
      "euler.ratio",        "tricomi.ratio-sharp", "tricomi.ratio-unit",
      "mills.ratio",        "mills.yang-tian",     "mills.conjecture"};
  return ids;
}

/// Evaluates one catalog case with its default parameters.
inline IneqReport run_case(const std::string& id, const CatalogOptions& o = {}) {
  const double th0 = solve_theta0().theta0;
  const std::vector<std::pair<double, double>> tricomi_ab = {{2.0, 2.0}, {1.0, 3.0}, {0.5, 1.2}};
  if (id == "psi.ratio") return case_psi_ratio(MajorizationPair({2, 2}, {3, 1}), o);
  if (id == "hurwitz.ratio") return case_hurwitz_ratio(MajorizationPair({2.5, 2.5}, {3, 2}), o);
  if (id == "hurwitz.turan") return case_turan_hurwitz(3.0, 2.0, o);
  if (id == "zeta.ratio") return case_zeta_ratio({1.5, 2, 3, 5, 10}, {0.5, 1, 2}, o);
  if (id == "bernoulli.ratio") return case_bernoulli_ratio(o.n_max.value_or(20));
  if (id == "zeta.reciprocal-convexity")
    return case_zeta_reciprocal_convexity({1.5, 2, 4}, {0.5, 1, 3}, o);
  if (id == "beta.ratio") return case_beta_ratio(MajorizationPair({1, 1}, {2, 0}), th0, 0.0, o);
  if (id == "alt-hurwitz.ratio")
    return case_alt_hurwitz_ratio(MajorizationPair({2, 2}, {3, 1}), th0, 0.0, o);
  if (id == "alt-hurwitz.turan") return case_turan_alt_hurwitz(3.0, 1.0, o);
  if (id == "euler.ratio") return case_euler_ratio(o.n_max.value_or(15));
  if (id == "tricomi.ratio-sharp")
    return case_tricomi_ratio(tricomi_ab, MajorizationPair({1, 1}, {2, 0}), TricomiVariant::sharp, o);
  if (id == "tricomi.ratio-unit")
    return case_tricomi_ratio(tricomi_ab, MajorizationPair({1, 1}, {2, 0}), TricomiVariant::unit, o);
  if (id == "mills.ratio")
    return case_mills_ratio({MajorizationPair({1, 1}, {2, 0}), MajorizationPair({1, 1, 1}, {2, 1, 0})},
                            o);
  if (id == "mills.yang-tian") return case_yang_tian(o.n_max.value_or(10), o);
  if (id == "mills.conjecture")
    return case_conjecture_rp({{0, 1, 2}, {0.5, 1.0, 1.5}, detail::linspace(-0.5, 8.0, 18)},
                              {0.5, 1.0, 2.0, 10.0}, o);
  throw precondition_error("unknown inequality case '" + id + "'");
}

/// Runs the selected cases in the order given; "all" expands to every id.
/// Unknown ids are rejected before anything is evaluated.
inline std::vector<IneqReport> run_catalog(const std::vector<std::string>& selection,
                                           const CatalogOptions& o = {}) {
  std::vector<std::string> ids;
  for (const auto& s : selection) {
    if (s == "all") {
      ids.insert(ids.end(), catalog_ids().begin(), catalog_ids().end());
      continue;
    }
    if (std::find(catalog_ids().begin(), catalog_ids().end(), s) == catalog_ids().end())
      throw precondition_error("unknown inequality case '" + s + "'");
    ids.push_back(s);
  }
  std::vector<IneqReport> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(run_case(id, o));
  return out;
}

/// True iff every gating report passed.
inline bool catalog_passed(const std::vector<IneqReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const IneqReport& r) { return !r.gating || r.passed(); });
}

}  // namespace cmkit
