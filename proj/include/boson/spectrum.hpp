#pragma once

// First-order spectrum of H = H0 + (λ/m) x^m with x = (a + a†)/√2, and the
// multiple-scale frequency-shift quantities built from it.
//
//   E1(n)       = (n + ½) + λ Δ1(m, n),   Δ1 = ⟨n|(a + a†)^m|n⟩ / (2^(m/2) m)
//   ω(m, n)     = Δ1(m, n) - Δ1(m, n-1)
//   Ω(n+½)      : Ω(n+½) + Ω(n-½) = 2 ω(m, n), a polynomial in h = n + ½
//   G(n)        = 2 cos[(λt/2)(Ω(n+½) - Ω(n-½))]

#include <boson/errors.hpp>
#include <boson/ordering.hpp>
#include <boson/rational.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace boson {

struct OscillatorSpec {
  int m = 4;
  double lambda = 0.0;
  int n = 0;

  void validate() const {
    if (m < 2) throw DomainError("oscillator exponent m must be >= 2, got " + std::to_string(m));
    if (n < 0) throw DomainError("level n must be >= 0, got " + std::to_string(n));
  }
};

namespace detail {

inline void require_even_exponent(int m) {
  if (m < 2 || m % 2 != 0) throw UnsupportedExponent(m);
}

inline void require_level(int n, int min, const char* what) {
  if (n < min) {
    throw DomainError(std::string(what) + ": level n must be >= " + std::to_string(min) +
                      ", got " + std::to_string(n));
  }
}

inline Rational slope_scale(int m) { return Rational(1) / Rational(pow2(m / 2) * m); }

/// Shared body of the explicit level-difference sum; `binom` picks the
/// binomial convention for C(n-1, ·).
template <typename Binomial>
Rational omega_sum(int m, int n, Binomial binom) {
  BigInt total = 0;
  for (int r = 0; r <= m - 2; r += 2) {
    const int half = (m - r) / 2;
    total += numerator(t_coeff(r)) * binomial(m, r) * binomial(m - r, half) *
             binom(n - 1, half - 1) * factorial(half);
  }
  return Rational(total) * slope_scale(m);
}

}  // namespace detail

/// ⟨n|(a + a†)^m|n⟩ from the closed-form expansion. Zero for odd m.
inline Rational diagonal_expectation(int m, int n) {
  if (m < 0) throw DomainError("diagonal_expectation: m must be >= 0");
  detail::require_level(n, 0, "diagonal_expectation");
  if (m % 2 != 0) return 0;
  BigInt total = 0;
  for (int r = 0; r <= m; r += 2) {
    const int half = (m - r) / 2;
    total += numerator(t_coeff(r)) * binomial(m, r) * binomial(m - r, half) *
             binomial(n, half) * factorial(half);
  }
  return Rational(total);
}

/// Δ1(m, n); exactly zero for odd m by parity.
inline Rational first_order_slope(int m, int n) {
  OscillatorSpec{m, 0.0, n}.validate();
  if (m % 2 != 0) return 0;
  return diagonal_expectation(m, n) * detail::slope_scale(m);
}

struct FirstOrderEnergy {
  Rational base;   // n + ½
  Rational slope;  // Δ1
  double value = 0.0;
};

inline FirstOrderEnergy first_order_energy(const OscillatorSpec& spec) {
  spec.validate();
  FirstOrderEnergy e;
  e.base = Rational(2 * spec.n + 1, 2);
  e.slope = first_order_slope(spec.m, spec.n);
  e.value = to_double(e.base) + spec.lambda * to_double(e.slope);
  return e;
}

inline Rational omega_by_difference(int m, int n) {
  detail::require_even_exponent(m);
  detail::require_level(n, 1, "omega");
  return first_order_slope(m, n) - first_order_slope(m, n - 1);
}

inline Rational omega_by_sum(int m, int n) {
  detail::require_even_exponent(m);
  detail::require_level(n, 1, "omega");
  return detail::omega_sum(m, n, [](std::int64_t a, std::int64_t b) { return binomial(a, b); });
}

/// ω(m, n), the first-order shift of the n -> n-1 spacing. Both routes are
/// evaluated and must agree.
inline Rational omega_small(int m, int n) {
  Rational diff = omega_by_difference(m, n);
  if (diff != omega_by_sum(m, n)) throw std::logic_error("omega_small: routes disagree");
  return diff;
}

/// ω(m, n) continued as a polynomial in n down to n = 0. There is no level
/// below the ground state, so this is the explicit sum with C(-1, k) = (-1)^k.
/// It vanishes when m/2 is even and equals 2 Δ1(m, 0) when m/2 is odd.
inline Rational omega_continued_at_zero(int m) {
  detail::require_even_exponent(m);
  return detail::omega_sum(m, 0, [](std::int64_t a, std::int64_t b) {
    return generalized_binomial(a, b);
  });
}

/// Ω(n + ½) by the alternating sum
///   2 Σ_{k=0}^{n} (-1)^(n-k) ω(m, k) + (-1)^(n + m/2) t_m / (2^((m-2)/2) m).
inline Rational capital_omega_half(int m, int n) {
  detail::require_even_exponent(m);
  detail::require_level(n, 0, "capital_omega_half");
  Rational sum = omega_continued_at_zero(m) * ((n % 2 == 0) ? 1 : -1);
  for (int k = 1; k <= n; ++k) {
    const Rational w = omega_small(m, k);
    sum += ((n - k) % 2 == 0) ? w : Rational(-w);
  }
  const Rational boundary = t_coeff(m) / Rational(pow2((m - 2) / 2) * m);
  const bool negative = ((n + m / 2) % 2) != 0;
  return 2 * sum + (negative ? Rational(-boundary) : boundary);
}

/// Polynomial with rational coefficients in h = n + ½ (the eigenvalue of H0).
/// coeffs[d] multiplies h^d.
class HalfIntPolynomial {
 public:
  HalfIntPolynomial() = default;
  explicit HalfIntPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  Rational operator()(const Rational& h) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * h + *it;
    return acc;
  }

  double operator()(double h) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * h + to_double(*it);
    return acc;
  }

  /// Value at h = n + ½.
  Rational at_level(int n) const { return (*this)(Rational(2 * n + 1, 2)); }

  friend bool operator==(const HalfIntPolynomial&, const HalfIntPolynomial&) = default;

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
  }

  std::vector<Rational> coeffs_;
};

inline nlohmann::ordered_json to_json(const HalfIntPolynomial& p) {
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
  return {{"var", "h"}, {"coeffs", coeffs}};
}

/// Ω(H0) as a polynomial in h. Built by Newton divided differences on the
/// (m-2)/2 + 1 nodes h = ½, 3/2, ..., then checked on m further levels.
inline HalfIntPolynomial omega_polynomial(int m) {
  detail::require_even_exponent(m);
  const int nodes = (m - 2) / 2 + 1;

  std::vector<Rational> xs(nodes), table(nodes);
  for (int i = 0; i < nodes; ++i) {
    xs[i] = Rational(2 * i + 1, 2);
    table[i] = capital_omega_half(m, i);
  }
  for (int level = 1; level < nodes; ++level) {
    for (int i = nodes - 1; i >= level; --i) {
      table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level]);
    }
  }

  // Expand the Newton form c0 + c1 (h - x0) + c2 (h - x0)(h - x1) + ...
  std::vector<Rational> coeffs{table[nodes - 1]};
  for (int i = nodes - 2; i >= 0; --i) {
    std::vector<Rational> next(coeffs.size() + 1, Rational(0));
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
      next[d + 1] += coeffs[d];
      next[d] -= coeffs[d] * xs[i];
    }
    next[0] += table[i];
    coeffs = std::move(next);
  }

  HalfIntPolynomial poly(std::move(coeffs));
  for (int n = 0; n < nodes + m; ++n) {
    if (poly.at_level(n) != capital_omega_half(m, n)) {
      throw std::logic_error("omega_polynomial: interpolant misses level " + std::to_string(n));
    }
  }
  return poly;
}

/// δ(m, n) = (Ω(n+½) - Ω(n-½)) / 2.
inline Rational omega_half_difference(int m, int n) {
  detail::require_even_exponent(m);
  detail::require_level(n, 1, "g_factor");
  return (capital_omega_half(m, n) - capital_omega_half(m, n - 1)) / 2;
}

/// G(n) = 2 cos(λ t δ(m, n)), evaluated in extended precision.
inline long double g_factor_extended(int m, int n, double lambda, double t) {
  const long double delta = to_long_double(omega_half_difference(m, n));
  return 2.0L * std::cos(static_cast<long double>(lambda) * t * delta);
}

inline double g_factor(int m, int n, double lambda, double t) {
  return static_cast<double>(g_factor_extended(m, n, lambda, t));
}

}  // namespace boson
