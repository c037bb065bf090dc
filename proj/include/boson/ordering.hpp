#pragma once

// Closed-form normal ordering of (a + a†)^m:
//
//   (a + a†)_N^m = Σ_{r = 0, 2, 4, ...} t_r C(m, r) :(a + a†)^(m - r):
//
// with t_0 = t_2 = 1 and t_r = (r-1)! / (2^(r/2-1) (r/2-1)!) for r >= 4.
// t_r counts the perfect pairings of r operators, i.e. (r-1)!!.

#include <boson/errors.hpp>
#include <boson/normal_polynomial.hpp>
#include <boson/rational.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace boson {

inline Rational t_coeff(int r) {
  if (r < 0 || r % 2 != 0) {
    throw DomainError("t_coeff: r must be a non-negative even integer, got " + std::to_string(r));
  }
  if (r <= 2) return 1;
  const int half = r / 2;
  Rational t(factorial(r - 1), pow2(half - 1) * factorial(half - 1));
  if (t != Rational(double_factorial(r - 1))) {
    throw std::logic_error("t_coeff: factorial form disagrees with (r-1)!!");
  }
  return t;
}

struct ExpansionTerm {
  unsigned r = 0;
  BigInt weight;  // t_r C(m, r)

  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

struct OrderingExpansion {
  unsigned m = 0;
  std::vector<ExpansionTerm> terms;

  /// Σ_r weight_r · :(a + a†)^(m - r):
  NormalPolynomial materialize() const {
    NormalPolynomial out;
    for (const auto& term : terms) out += colon_power(m - term.r) * Rational(term.weight);
    return out;
  }
};

inline OrderingExpansion theorem2_expansion(int m) {
  if (m < 1) throw DomainError("theorem2_expansion: m must be >= 1, got " + std::to_string(m));
  OrderingExpansion out{static_cast<unsigned>(m), {}};
  for (int r = 0; r <= m; r += 2) {
    const Rational w = t_coeff(r) * Rational(binomial(m, r));
    if (!is_integer(w) || w <= 0) throw std::logic_error("theorem2_expansion: non-integral weight");
    out.terms.push_back({static_cast<unsigned>(r), numerator(w)});
  }
  return out;
}

/// :(a + a†)^m: (a + a†) == :(a + a†)^(m+1): + m :(a + a†)^(m-1):, checked exactly.
inline bool verify_theorem1(int m) {
  if (m < 1) throw DomainError("verify_theorem1: m must be >= 1, got " + std::to_string(m));
  const auto um = static_cast<unsigned>(m);
  const NormalPolynomial lhs = mul_normal(colon_power(um), NormalPolynomial::quadrature());
  const NormalPolynomial rhs = colon_power(um + 1) + colon_power(um - 1) * Rational(m);
  return lhs == rhs;
}

}  // namespace boson
