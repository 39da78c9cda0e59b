#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "cmkit/errors.hpp"

namespace cmkit::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) and weights, with
// the embedded 7-point Gauss weights at the odd Kronrod nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  double err = std::abs(kronrod - gauss);
  // Roundoff floor: no estimate below a few ulp of the segment value.
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return {a, b, kronrod, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Bisects the segment with the largest error estimate until the summed
/// error satisfies max(abs_tol, rel_tol*|I|) or the interval budget runs out.
template <class F>
QuadResult integrate_gk15(const F& f, double a, double b, double abs_tol, double rel_tol,
                          int max_intervals) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Segment> heap;
  const auto first = detail::gk15(f, a, b);
  heap.push(first);
  double total = first.value;
  double error = first.error;
  int count = 1;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::abs(total));
    if (error <= target) {
      out.converged = true;
      break;
    }
    if (count >= max_intervals) break;
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot subdivide further in double precision; keep the estimate.
      heap.push({worst.a, worst.b, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum from the segments to shed accumulated cancellation in the running total.
  double sum = 0.0, err = 0.0;
  std::vector<double> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top().value);
    err += heap.top().error;
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  for (double v : parts) sum += v;
  out.value = sum;
  out.abs_error = err;
  out.intervals = count;
  return out;
}

/// Integral of f over [a, infinity) via t = a + s/(1-s), s in [0, 1).
template <class F>
QuadResult integrate_semi_infinite(const F& f, double a, double abs_tol, double rel_tol,
                                   int max_intervals) {
  auto mapped = [&](double s) {
    const double one_minus = 1.0 - s;
    const double t = a + s / one_minus;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v / (one_minus * one_minus);
  };
  return integrate_gk15(mapped, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
}

/// Value of a quadrature that must converge; throws convergence_error otherwise.
inline double require_converged(const QuadResult& r, const std::string& who) {
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream os;
    os << who << ": adaptive quadrature stalled after " << r.intervals
       << " intervals (estimate " << r.value << ", error " << r.abs_error << ")";
    throw convergence_error(os.str());
  }
  return r.value;
}

}  // namespace cmkit::quad
