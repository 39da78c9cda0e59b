#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cmkit/errors.hpp"

namespace cmkit {

/// A finite real tuple kept in nonincreasing order.
class RTuple {
 public:
  RTuple() = default;

  /// Accepts entries already in nonincreasing order. Violations no larger than
  /// the comparison tolerance are rounding noise and get sorted away; anything
  /// larger is a caller error.
  explicit RTuple(std::vector<double> entries) : v_(std::move(entries)) {
    if (v_.empty()) throw precondition_error("RTuple: length must be >= 1");
    for (double e : v_)
      if (!std::isfinite(e)) throw precondition_error("RTuple: entries must be finite");
    for (std::size_t j = 0; j + 1 < v_.size(); ++j) {
      if (v_[j] + tolerance() < v_[j + 1]) {
        std::ostringstream os;
        os << "RTuple: entries must be nonincreasing (entry " << j + 1 << " = " << v_[j]
           << " < entry " << j + 2 << " = " << v_[j + 1] << ")";
        throw precondition_error(os.str());
      }
    }
    std::stable_sort(v_.begin(), v_.end(), std::greater<>());
  }
  RTuple(std::initializer_list<double> il) : RTuple(std::vector<double>(il)) {}

  /// Builds a tuple from entries in any order.
  static RTuple sorted(std::vector<double> entries) {
    std::sort(entries.begin(), entries.end(), std::greater<>());
    return RTuple(std::move(entries));
  }

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t j) const { return v_[j]; }
  const std::vector<double>& entries() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  double sum() const {
    double s = 0.0;
    for (double e : v_) s += e;
    return s;
  }
  double max_abs() const {
    double m = 0.0;
    for (double e : v_) m = std::max(m, std::fabs(e));
    return m;
  }
  /// Absolute comparison tolerance 1e-12 * (1 + magnitude of the partial sums).
  double tolerance() const {
    double m = 0.0;
    for (double e : v_) m += std::fabs(e);
    return 1e-12 * (1.0 + m);
  }

  friend bool operator==(const RTuple&, const RTuple&) = default;

 private:
  std::vector<double> v_;
};

inline std::string to_string(const RTuple& t) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << t[j];
  os << ')';
  return os.str();
}

namespace detail {

inline double pair_tolerance(const RTuple& p, const RTuple& q) {
  return std::max(p.tolerance(), q.tolerance());
}

inline bool approx_equal(const RTuple& p, const RTuple& q, double tol) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (std::fabs(p[j] - q[j]) > tol) return false;
  return true;
}

}  // namespace detail

/// Describes the first way in which p fails to be strictly majorized by q, or
/// nullopt when p < q holds. Lengths must match.
inline std::optional<std::string> majorization_violation(const RTuple& p, const RTuple& q) {
  if (p.size() != q.size()) {
    std::ostringstream os;
    os << "length mismatch: p has " << p.size() << " entries, q has " << q.size();
    throw precondition_error(os.str());
  }
  const double tol = detail::pair_tolerance(p, q);
  double sp = 0.0, sq = 0.0;
  for (std::size_t l = 0; l + 1 < p.size(); ++l) {
    sp += p[l];
    sq += q[l];
    if (sq + tol < sp) {
      std::ostringstream os;
      os.precision(17);
      os << "partial sum " << l + 1 << " violated: sum(q) = " << sq << " < sum(p) = " << sp;
      return os.str();
    }
  }
  const double tp = p.sum(), tq = q.sum();
  if (std::fabs(tp - tq) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "totals differ: sum(p) = " << tp << ", sum(q) = " << tq;
    return os.str();
  }
  if (detail::approx_equal(p, q, tol)) return std::string("p equals q (majorization is not strict)");
  return std::nullopt;
}

/// True iff p is strictly majorized by q.
inline bool is_majorized(const RTuple& p, const RTuple& q) {
  return !majorization_violation(p, q).has_value();
}

/// A validated pair p < q. A pair with p = q is representable only through
/// trivial(), which marks it so callers can treat its Delta as identically zero.
class MajorizationPair {
 public:
  MajorizationPair(RTuple p, RTuple q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.size() < 2) throw precondition_error("MajorizationPair: length must be >= 2");
    if (auto why = majorization_violation(p_, q_))
      throw precondition_error("MajorizationPair: p is not majorized by q: " + *why);
  }

  /// Either a strict pair or, when p and q agree within tolerance, a pair
  /// flagged trivial-equal.
  static MajorizationPair strict_or_trivial(RTuple p, RTuple q) {
    if (p.size() == q.size() && detail::approx_equal(p, q, detail::pair_tolerance(p, q))) {
      MajorizationPair out;
      out.p_ = std::move(p);
      out.q_ = std::move(q);
      out.trivial_ = true;
      return out;
    }
    return MajorizationPair(std::move(p), std::move(q));
  }

  const RTuple& p() const { return p_; }
  const RTuple& q() const { return q_; }
  std::size_t size() const { return p_.size(); }
  bool trivial() const { return trivial_; }
  double tolerance() const { return detail::pair_tolerance(p_, q_); }

 private:
  MajorizationPair() = default;
  RTuple p_, q_;
  bool trivial_ = false;
};

// ---------------------------------------------------------------------------
// Hardy-Littlewood-Polya

/// sum_j phi(q_j) - sum_j phi(p_j); nonnegative for convex phi when p < q.
inline double hlp_delta(const std::function<double(double)>& phi, const MajorizationPair& pair) {
  double sp = 0.0, sq = 0.0;
  for (double v : pair.p()) sp += phi(v);
  for (double v : pair.q()) sq += phi(v);
  return sq - sp;
}

/// True iff sum phi(p_j) <= sum phi(q_j) up to a rounding allowance scaled to
/// the sums themselves.
inline bool hlp_check(const std::function<double(double)>& phi, const MajorizationPair& pair) {
  double sp = 0.0, sq = 0.0, mag = 0.0;
  for (double v : pair.p()) {
    const double f = phi(v);
    sp += f;
    mag += std::fabs(f);
  }
  for (double v : pair.q()) {
    const double f = phi(v);
    sq += f;
    mag += std::fabs(f);
  }
  return sp <= sq + 1e-12 * (1.0 + mag);
}

// ---------------------------------------------------------------------------
// Random test data

namespace detail {

/// Uniform on [0, 1) from the top 53 bits, identical on every platform
/// (std::uniform_real_distribution is not).
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Deterministic random strict pair of length n with entries in [lo, hi].
/// q is drawn first; p is obtained by Robin-Hood transfers. The first transfer
/// moves a nontrivial share of the gap between the extreme entries, so p != q.
inline MajorizationPair random_majorized_pair(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                              double hi = 10.0) {
  if (n < 2) throw precondition_error("random_majorized_pair: n must be >= 2");
  if (!(hi > lo)) throw precondition_error("random_majorized_pair: need hi > lo");
  std::mt19937_64 rng(seed);
  const double width = hi - lo;
  for (;;) {
    std::vector<double> q(n);
    for (auto& v : q) v = lo + width * detail::unit_uniform(rng);
    std::sort(q.begin(), q.end(), std::greater<>());
    if (q.front() - q.back() < 1e-3 * width) continue;

    std::vector<double> p = q;
    const std::size_t transfers = 1 + static_cast<std::size_t>(rng() % (2 * n));
    for (std::size_t t = 0; t < transfers; ++t) {
      std::size_t i = 0, j = n - 1;
      if (t > 0) {
        i = static_cast<std::size_t>(rng() % n);
        j = static_cast<std::size_t>(rng() % n);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
      }
      const double gap = p[i] - p[j];
      if (gap <= 0.0) continue;
      const double share = t == 0 ? 0.1 + 0.9 * detail::unit_uniform(rng) : detail::unit_uniform(rng);
      const double delta = 0.5 * gap * share;
      p[i] -= delta;
      p[j] += delta;
      std::sort(p.begin(), p.end(), std::greater<>());
    }
    RTuple pt(std::move(p)), qt(std::move(q));
    if (is_majorized(pt, qt)) return MajorizationPair(std::move(pt), std::move(qt));
  }
}

}  // namespace cmkit
