#pragma once

// Exact integer and rational arithmetic plus the combinatorial helpers used
// across the library. Rationals are always in lowest terms with a positive
// denominator (Boost.Multiprecision maintains that invariant).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace boson {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// "p/q" with the sign on the numerator; zero renders as "0/1".
inline std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

inline BigInt factorial(std::int64_t n) {
  BigInt out = 1;
  for (std::int64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

/// n!! with the convention (-1)!! = 0!! = 1.
inline BigInt double_factorial(std::int64_t n) {
  BigInt out = 1;
  for (std::int64_t i = n; i > 1; i -= 2) out *= i;
  return out;
}

/// C(n, k), defined as 0 whenever k < 0 or k > n (so also for negative n).
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

/// Falling-factorial binomial n(n-1)...(n-k+1)/k!, valid for negative n.
/// Only the polynomial continuation of level-difference sums needs this.
inline BigInt generalized_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0) return 0;
  if (n >= 0) return binomial(n, k);
  // C(-s, k) = (-1)^k C(s + k - 1, k)
  BigInt out = binomial(-n + k - 1, k);
  return (k % 2 == 0) ? out : BigInt(-out);
}

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

}  // namespace boson
