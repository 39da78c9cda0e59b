#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmkit/errors.hpp"

namespace cmkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact Bernoulli numbers B_0..B_{2K} (convention B_1 = -1/2).
struct BernoulliTable {
  std::vector<BigRational> values;

  const BigRational& operator[](std::size_t n) const { return values.at(n); }
  std::size_t size() const { return values.size(); }
};

/// Exact Euler numbers E_0..E_{2K} (secant numbers with alternating sign).
struct EulerTable {
  std::vector<BigInt> values;

  const BigInt& operator[](std::size_t n) const { return values.at(n); }
  std::size_t size() const { return values.size(); }
};

namespace detail {

// Row n of Pascal's triangle, C(n, 0..n).
inline std::vector<BigInt> binomial_row(std::size_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) row[j] = row[j - 1] * BigInt(n - j + 1) / BigInt(j);
  return row;
}

}  // namespace detail

/// B_n from sum_{j=0}^{n} C(n+1, j) B_j = 0, for n = 0..2K.
inline BernoulliTable bernoulli_numbers(int K) {
  if (K < 1) throw domain_error("bernoulli_numbers requires K >= 1");
  const std::size_t top = 2 * static_cast<std::size_t>(K);
  BernoulliTable t;
  t.values.assign(top + 1, BigRational(0));
  t.values[0] = 1;
  for (std::size_t n = 1; n <= top; ++n) {
    // Odd indices past 1 vanish; skip the O(n) sum for them.
    if (n > 1 && n % 2 == 1) continue;
    const auto c = detail::binomial_row(n + 1);
    BigRational acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (t.values[j] != 0) acc += BigRational(c[j]) * t.values[j];
    t.values[n] = -acc / BigRational(c[n]);
  }
  return t;
}

/// E_{2n} from sum_{j even, 0 <= j <= 2n} C(2n, j) E_j = 0 for n >= 1; odd E vanish.
inline EulerTable euler_numbers(int K) {
  if (K < 1) throw domain_error("euler_numbers requires K >= 1");
  const std::size_t top = 2 * static_cast<std::size_t>(K);
  EulerTable t;
  t.values.assign(top + 1, BigInt(0));
  t.values[0] = 1;
  for (std::size_t n = 2; n <= top; n += 2) {
    const auto c = detail::binomial_row(n);
    BigInt acc = 0;
    for (std::size_t j = 0; j < n; j += 2) acc += c[j] * t.values[j];
    t.values[n] = -acc;
  }
  return t;
}

/// B_{2n}/(2n)! as doubles for n = 0..kMaxEulerMaclaurinTerms, built once.
inline constexpr int kMaxEulerMaclaurinTerms = 60;

inline const std::vector<double>& bernoulli_over_factorial() {
  static const std::vector<double> table = [] {
    const auto b = bernoulli_numbers(kMaxEulerMaclaurinTerms);
    std::vector<double> out(kMaxEulerMaclaurinTerms + 1);
    BigInt fact = 1;
    for (int n = 0; n <= kMaxEulerMaclaurinTerms; ++n) {
      if (n > 0) fact *= BigInt(2 * n - 1) * BigInt(2 * n);
      const BigRational r = b[2 * n] / BigRational(fact);
      out[n] = r.convert_to<double>();
    }
    return out;
  }();
  return table;
}

}  // namespace cmkit
