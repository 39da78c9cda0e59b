#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmkit/config.hpp"
#include "cmkit/errors.hpp"
#include "cmkit/family.hpp"
#include "cmkit/majorization.hpp"

namespace cmkit {

inline constexpr int kCmMaxOrder = 8;
inline constexpr double kCmTolerance = 1e-9;
inline constexpr std::size_t kMaxLeibnizTerms = 1'000'000;

/// n log-spaced points on [lo, hi]; a single point is lo.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw precondition_error("log_grid: need 0 < lo <= hi");
  std::vector<double> g;
  g.reserve(n);
  if (n == 1) {
    g.push_back(lo);
    return g;
  }
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    g.push_back(i == 0 ? lo : i + 1 == n ? hi : std::exp(l0 + (l1 - l0) * double(i) / double(n - 1)));
  return g;
}

/// 25 log-spaced points on [2^-3, 2^6].
inline std::vector<double> default_cm_grid() { return log_grid(0.125, 64.0, 25); }

namespace detail {

/// Number of compositions of m into n nonnegative parts, C(m+n-1, n-1),
/// saturating at max+1.
inline std::size_t composition_count(std::size_t n, std::size_t m, std::size_t max) {
  double c = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    c = c * double(m + i) / double(i);
    if (c > double(max)) return max + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

/// F values at one x, cached by (slot, shift).
class ShiftCache {
 public:
  ShiftCache(const FamilySpec& spec, const RTuple& t, double x, const EvalConfig& cfg)
      : spec_(spec), t_(t), x_(x), cfg_(cfg) {}

  double get(std::size_t slot, int shift) {
    const auto key = std::make_pair(slot, shift);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double v = family_F(spec_, t_[slot] + shift, x_, cfg_);
    memo_.emplace(key, v);
    return v;
  }

 private:
  const FamilySpec& spec_;
  const RTuple& t_;
  double x_;
  const EvalConfig& cfg_;
  std::map<std::pair<std::size_t, int>, double> memo_;
};

/// sum over compositions of m of m!/prod(m_j!) prod F_{p_j+m_j}.
inline double leibniz_sum(ShiftCache& cache, std::size_t n, int m) {
  std::vector<int> parts(n, 0);
  std::vector<double> log_fact(m + 1, 0.0);
  for (int i = 2; i <= m; ++i) log_fact[i] = log_fact[i - 1] + std::log(double(i));
  double total = 0.0;
  // Enumerate compositions recursively, slot by slot.
  auto rec = [&](auto&& self, std::size_t slot, int remaining) -> void {
    if (slot + 1 == n) {
      parts[slot] = remaining;
      double lc = log_fact[m];
      double prod = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        lc -= log_fact[parts[j]];
        prod *= cache.get(j, parts[j]);
      }
      total += std::round(std::exp(lc)) * prod;
      return;
    }
    for (int r = 0; r <= remaining; ++r) {
      parts[slot] = r;
      self(self, slot + 1, remaining - r);
    }
  };
  rec(rec, 0, m);
  return total;
}

}  // namespace detail

/// (-1)^m d^m/dx^m prod_j F_{p_j}(x), via F_p' = -F_{p+1} and the
/// multinomial Leibniz rule. No finite differences are involved.
inline double product_derivative(const FamilySpec& spec, const RTuple& tuple, int m, double x,
                                 const EvalConfig& cfg = EvalConfig::defaults()) {
  if (m < 0) throw precondition_error("product_derivative: order must be >= 0");
  if (detail::composition_count(tuple.size(), std::size_t(m), kMaxLeibnizTerms) >
      kMaxLeibnizTerms) {
    std::ostringstream os;
    os << "product_derivative: n=" << tuple.size() << ", m=" << m << " exceeds "
       << kMaxLeibnizTerms << " Leibniz terms";
    throw precondition_error(os.str());
  }
  detail::ShiftCache cache(spec, tuple, x, cfg);
  return detail::leibniz_sum(cache, tuple.size(), m);
}

struct CMOrderResult {
  int order = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_x = 0.0;
  bool pass = true;
};

struct CMReport {
  std::string family;
  std::vector<double> p, q;
  double lambda = 0.0;
  int sign = 1;
  int orders_requested = 0;
  int orders_checked = 0;  // highest order actually evaluated
  std::string clip_note;   // non-empty when orders were clipped
  std::vector<double> grid;
  double cm_tol = kCmTolerance;
  std::vector<CMOrderResult> orders;

  bool pass() const {
    return std::all_of(orders.begin(), orders.end(), [](const CMOrderResult& o) { return o.pass; });
  }
  /// First failing order, or -1.
  int first_failing_order() const {
    for (const auto& o : orders)
      if (!o.pass) return o.order;
    return -1;
  }
};

/// Checks that sign * (-1)^m D^{(m)}(x; lambda) >= 0 for m = 0..K on the grid,
/// where D = prod F_{p_j} - lambda prod F_{q_j}. Margins are normalized by the
/// larger of the two m-th derivative products. K is clipped to kCmMaxOrder,
/// and to the last order whose evaluation succeeds; clips are recorded.
inline CMReport cm_check(const FamilySpec& spec, const MajorizationPair& pair, double lambda,
                         int sign, const std::vector<double>& grid, int K,
                         const EvalConfig& cfg = EvalConfig::defaults(),
                         double cm_tol = kCmTolerance) {
  if (sign != 1 && sign != -1) throw precondition_error("cm_check: sign must be +1 or -1");
  if (K < 0) throw precondition_error("cm_check: K must be >= 0");
  if (grid.empty()) throw precondition_error("cm_check: empty grid");
  for (double x : grid)
    if (!(x > 0.0)) throw precondition_error("cm_check: grid points must be positive");
  for (double v : pair.p())
    if (!spec.index_valid(v)) throw domain_error("cm_check: index outside family range in p");
  for (double v : pair.q())
    if (!spec.index_valid(v)) throw domain_error("cm_check: index outside family range in q");

  CMReport rep;
  rep.family = spec.name();
  rep.p = pair.p().entries();
  rep.q = pair.q().entries();
  rep.lambda = lambda;
  rep.sign = sign;
  rep.orders_requested = K;
  rep.grid = grid;
  rep.cm_tol = cm_tol;

  int k_eff = K;
  if (k_eff > kCmMaxOrder) {
    k_eff = kCmMaxOrder;
    rep.clip_note = "K clipped to the maximum order " + std::to_string(kCmMaxOrder);
  }

  const std::size_t n = pair.size();
  std::vector<CMOrderResult> orders(k_eff + 1);
  for (int m = 0; m <= k_eff; ++m) orders[m].order = m;

  int last_ok = k_eff;
  for (double x : grid) {
    detail::ShiftCache cp(spec, pair.p(), x, cfg), cq(spec, pair.q(), x, cfg);
    for (int m = 0; m <= last_ok; ++m) {
      double A, B;
      try {
        A = detail::leibniz_sum(cp, n, m);
        B = lambda * detail::leibniz_sum(cq, n, m);
      } catch (const std::exception& e) {
        if (m == 0) throw;
        last_ok = m - 1;
        rep.clip_note = "K clipped to " + std::to_string(last_ok) + " (order " +
                        std::to_string(m) + " failed at x=" + std::to_string(x) + ": " +
                        e.what() + ")";
        break;
      }
      const double scale = std::max(std::fabs(A), std::fabs(B));
      const double margin = scale > 0.0 ? sign * (A - B) / scale : 0.0;
      auto& o = orders[m];
      if (margin < o.worst_margin) {
        o.worst_margin = margin;
        o.worst_x = x;
      }
    }
  }
  orders.resize(last_ok + 1);
  for (auto& o : orders) o.pass = o.worst_margin >= -cm_tol;
  rep.orders = std::move(orders);
  rep.orders_checked = last_ok;
  return rep;
}

/// prod F_{p_j}(x) / prod F_{q_j}(x) at both ends, computed in log space.
struct SharpnessResult {
  double ratio_at_small = 0.0;
  double ratio_at_large = 0.0;
};

inline double log_product_ratio(const FamilySpec& spec, const MajorizationPair& pair, double x,
                                const EvalConfig& cfg = EvalConfig::defaults()) {
  double acc = 0.0;
  for (std::size_t j = 0; j < pair.size(); ++j)
    acc += std::log(family_F(spec, pair.p()[j], x, cfg)) -
           std::log(family_F(spec, pair.q()[j], x, cfg));
  return acc;
}

inline SharpnessResult sharpness_scan(const FamilySpec& spec, const MajorizationPair& pair,
                                      double x_small, double x_large,
                                      const EvalConfig& cfg = EvalConfig::defaults()) {
  if (!(x_small > 0.0) || !(x_large > x_small))
    throw precondition_error("sharpness_scan: need 0 < x_small < x_large");
  return {std::exp(log_product_ratio(spec, pair, x_small, cfg)),
          std::exp(log_product_ratio(spec, pair, x_large, cfg))};
}

}  // namespace cmkit
