#pragma once

#include <boson/errors.hpp>
#include <boson/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>

namespace boson {

/// a†^j a^k, already normal ordered.
struct Monomial {
  unsigned dagger_power = 0;
  unsigned plain_power = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Serialization order: dagger power descending, then plain power descending.
struct SerializationOrder {
  bool operator()(const Monomial& x, const Monomial& y) const noexcept {
    if (x.dagger_power != y.dagger_power) return x.dagger_power > y.dagger_power;
    return x.plain_power > y.plain_power;
  }
};

/// Coefficient of a^k a†^j -> a†^(j-i) a^(k-i): C(k,i) C(j,i) i!.
inline BigInt contraction_weight(unsigned k, unsigned j, unsigned i) {
  return binomial(k, i) * binomial(j, i) * factorial(i);
}

/// Normal-ordered polynomial in a and a† with exact rational coefficients.
///
/// Stored sparsely; a zero coefficient is never kept, so structural equality
/// of the term maps is operator equality.
class NormalPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational, SerializationOrder>;

  NormalPolynomial() = default;

  static NormalPolynomial constant(const Rational& c) { return monomial(0, 0, c); }
  static NormalPolynomial identity() { return constant(1); }

  static NormalPolynomial monomial(unsigned j, unsigned k, const Rational& c = 1) {
    NormalPolynomial p;
    p.add_term({j, k}, c);
    return p;
  }

  static NormalPolynomial annihilation() { return monomial(0, 1); }
  static NormalPolynomial creation() { return monomial(1, 0); }
  /// a + a†
  static NormalPolynomial quadrature() { return annihilation() + creation(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(unsigned j, unsigned k) const {
    auto it = terms_.find({j, k});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  NormalPolynomial& operator+=(const NormalPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  NormalPolynomial& operator-=(const NormalPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  NormalPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend NormalPolynomial operator+(NormalPolynomial p, const NormalPolynomial& q) { return p += q; }
  friend NormalPolynomial operator-(NormalPolynomial p, const NormalPolynomial& q) { return p -= q; }
  friend NormalPolynomial operator*(NormalPolynomial p, const Rational& s) { return p *= s; }
  friend NormalPolynomial operator*(const Rational& s, NormalPolynomial p) { return p *= s; }
  friend NormalPolynomial operator-(NormalPolynomial p) { return p *= Rational(-1); }

  friend bool operator==(const NormalPolynomial& p, const NormalPolynomial& q) {
    return p.terms_ == q.terms_;
  }

 private:
  TermMap terms_;
};

/// Normal-ordered product p·q (p stands to the left of q).
///
/// Each pair of terms a†^j1 a^k1 · a†^j2 a^k2 is reordered in one step with
/// a^k a†^j = Σ_i C(k,i) C(j,i) i! a†^(j-i) a^(k-i).
inline NormalPolynomial mul_normal(const NormalPolynomial& p, const NormalPolynomial& q) {
  NormalPolynomial out;
  for (const auto& [left, cl] : p.terms()) {
    for (const auto& [right, cr] : q.terms()) {
      const unsigned k = left.plain_power;
      const unsigned j = right.dagger_power;
      const Rational c = cl * cr;
      for (unsigned i = 0; i <= std::min(k, j); ++i) {
        out.add_term({left.dagger_power + j - i, k - i + right.plain_power},
                     c * Rational(contraction_weight(k, j, i)));
      }
    }
  }
  return out;
}

inline NormalPolynomial operator*(const NormalPolynomial& p, const NormalPolynomial& q) {
  return mul_normal(p, q);
}

/// :(a + a†)^m:, the binomial expansion with every a† moved left and no
/// commutator corrections.
inline NormalPolynomial colon_power(unsigned m) {
  NormalPolynomial out;
  for (unsigned r = 0; r <= m; ++r) out.add_term({r, m - r}, Rational(binomial(m, r)));
  return out;
}

/// (a + a†)^m normal ordered by m successive multiplications. Reference
/// route for the closed-form expansion; practical up to m ≈ 64.
inline NormalPolynomial brute_force_normal_order(unsigned m) {
  const NormalPolynomial x = NormalPolynomial::quadrature();
  NormalPolynomial out = NormalPolynomial::identity();
  for (unsigned i = 0; i < m; ++i) out = mul_normal(out, x);
  return out;
}

/// [{"j":..,"k":..,"c":"p/q"}, ...] in serialization order.
inline nlohmann::ordered_json to_json(const NormalPolynomial& p) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    out.push_back({{"j", m.dagger_power}, {"k", m.plain_power}, {"c", to_string(c)}});
  }
  return out;
}

inline NormalPolynomial normal_polynomial_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array()) throw DomainError("normal polynomial JSON must be an array");
  NormalPolynomial out;
  for (const auto& term : j) {
    const auto jp = term.at("j").get<long long>();
    const auto kp = term.at("k").get<long long>();
    if (jp < 0 || kp < 0) throw DomainError("monomial powers must be non-negative");
    out.add_term({static_cast<unsigned>(jp), static_cast<unsigned>(kp)},
                 Rational(term.at("c").get<std::string>()));
  }
  return out;
}

}  // namespace boson
