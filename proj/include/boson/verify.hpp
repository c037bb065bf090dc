#pragma once

// The invariant suite behind `boson_order verify`. Every check is
// deterministic; randomized checks draw from a fixed seed.

#include <boson/dynamics.hpp>
#include <boson/fock.hpp>
#include <boson/normal_polynomial.hpp>
#include <boson/ordering.hpp>
#include <boson/spectrum.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace boson {

inline constexpr std::uint64_t kVerifySeed = 0x5eed'b050'2024ULL;

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int max_m = 25;
  int max_n = 20;
  std::uint64_t seed = kVerifySeed;
};

/// Sparse polynomial with up to `max_terms` terms, powers <= `max_power` and
/// small signed rational coefficients.
template <typename Rng>
NormalPolynomial random_normal_polynomial(Rng& rng, int max_terms = 6, unsigned max_power = 8) {
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<unsigned> power(0, max_power);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  NormalPolynomial p;
  const int count = terms(rng);
  for (int i = 0; i < count; ++i) p.add_term({power(rng), power(rng)}, Rational(num(rng), den(rng)));
  return p;
}

namespace detail {

class SuiteBuilder {
 public:
  void check(const std::string& module, const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{module, name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

inline std::string at(const char* what, int m, int n = -1) {
  std::ostringstream s;
  s << what << " at m=" << m;
  if (n >= 0) s << " n=" << n;
  return s.str();
}

}  // namespace detail

inline std::vector<CheckResult> run_invariant_suite(const VerifyOptions& opts = {}) {
  detail::SuiteBuilder suite;
  const int max_even_m = 16;

  suite.check("opalg", "closed-form expansion equals brute force", [&]() -> std::string {
    for (int m = 1; m <= opts.max_m; ++m) {
      if (!(theorem2_expansion(m).materialize() == brute_force_normal_order(m))) return detail::at("mismatch", m);
    }
    return {};
  });

  suite.check("opalg", "one-step recursion for (a+a†)^m", [&]() -> std::string {
    for (int m = 1; m <= opts.max_m; ++m)
      if (!verify_theorem1(m)) return detail::at("identity fails", m);
    return {};
  });

  suite.check("opalg", "mul_normal associative and distributive", [&]() -> std::string {
    std::mt19937_64 rng(opts.seed);
    for (int trial = 0; trial < 40; ++trial) {
      const auto p = random_normal_polynomial(rng);
      const auto q = random_normal_polynomial(rng);
      const auto r = random_normal_polynomial(rng);
      if (!(mul_normal(mul_normal(p, q), r) == mul_normal(p, mul_normal(q, r))))
        return "associativity fails at trial " + std::to_string(trial);
      if (!(mul_normal(p, q + r) == mul_normal(p, q) + mul_normal(p, r)))
        return "left distributivity fails at trial " + std::to_string(trial);
      if (!(mul_normal(p + q, r) == mul_normal(p, r) + mul_normal(q, r)))
        return "right distributivity fails at trial " + std::to_string(trial);
    }
    return {};
  });

  suite.check("opalg", "adjoint symmetry and parity of (a+a†)^m", [&]() -> std::string {
    for (int m = 1; m <= opts.max_m; ++m) {
      const auto p = brute_force_normal_order(m);
      for (const auto& [mono, c] : p.terms()) {
        if ((mono.dagger_power + mono.plain_power) % 2 != static_cast<unsigned>(m % 2)) return detail::at("parity", m);
        if (p.coefficient(mono.plain_power, mono.dagger_power) != c) return detail::at("adjoint", m);
      }
    }
    return {};
  });

  suite.check("opalg", "expansion weights are positive integers", [&]() -> std::string {
    for (int m = 1; m <= opts.max_m; ++m)
      for (const auto& t : theorem2_expansion(m).terms)
        if (t.weight <= 0 || t.weight != numerator(t_coeff(static_cast<int>(t.r)) * Rational(binomial(m, t.r))))
          return detail::at("weight", m);
    return {};
  });

  suite.check("spectrum", "consistency recurrence Ω(n+½)+Ω(n-½)=2ω", [&]() -> std::string {
    for (int m = 2; m <= max_even_m; m += 2)
      for (int n = 1; n <= opts.max_n; ++n)
        if (capital_omega_half(m, n) + capital_omega_half(m, n - 1) != 2 * omega_small(m, n))
          return detail::at("recurrence", m, n);
    return {};
  });

  suite.check("spectrum", "ω difference route equals explicit sum", [&]() -> std::string {
    for (int m = 2; m <= max_even_m; m += 2)
      for (int n = 1; n <= opts.max_n; ++n)
        if (omega_by_difference(m, n) != omega_by_sum(m, n)) return detail::at("routes", m, n);
    return {};
  });

  suite.check("spectrum", "Ω polynomial reproduces Ω(n+½)", [&]() -> std::string {
    for (int m = 2; m <= max_even_m; m += 2) {
      const auto poly = omega_polynomial(m);
      if (poly.degree() != (m - 2) / 2) return detail::at("degree", m);
      for (int n = 0; n <= 2 * m; ++n)
        if (poly.at_level(n) != capital_omega_half(m, n)) return detail::at("value", m, n);
    }
    return {};
  });

  suite.check("spectrum", "closed form equals ladder oracle", [&]() -> std::string {
    for (int m = 2; m <= max_even_m; m += 2)
      for (int n = 0; n <= opts.max_n; ++n)
        if (diagonal_expectation(m, n) != Rational(ladder_expectation(m, n))) return detail::at("oracle", m, n);
    return {};
  });

  suite.check("spectrum", "Δ1 positive and increasing in n", [&]() -> std::string {
    for (int m = 2; m <= max_even_m; m += 2)
      for (int n = 0; n <= opts.max_n; ++n) {
        if (first_order_slope(m, n) <= 0) return detail::at("positivity", m, n);
        if (n > 0 && first_order_slope(m, n) <= first_order_slope(m, n - 1)) return detail::at("monotone", m, n);
      }
    return {};
  });

  suite.check("spectrum", "G(n) trig identity", [&]() -> std::string {
    for (int m : {4, 6, 8, 10})
      for (int n = 1; n <= 10; ++n) {
        const double lo = to_double(capital_omega_half(m, n - 1));
        const double hi = to_double(capital_omega_half(m, n));
        const double w = to_double(omega_small(m, n));
        for (double lambda : {0.001, 0.01, 0.05})
          for (double t : {0.5, 3.0, 17.0}) {
            const double lhs = std::cos((1 + lambda * lo) * t) + std::cos((1 + lambda * hi) * t);
            const double rhs = g_factor(m, n, lambda, t) * std::cos((1 + lambda * w) * t);
            const double scale = std::max(1.0, (1 + lambda * std::max(std::abs(lo), std::abs(hi))) * t);
            if (std::abs(lhs - rhs) > 1e-14 * scale) return detail::at("identity", m, n);
          }
      }
    return {};
  });

  suite.check("fock", "harmonic spectrum and eigen residual", [&]() -> std::string {
    const auto es = eigendecompose(build_hamiltonian(4, 0.0, 32));
    for (std::size_t k = 0; k < es.dim; ++k)
      if (std::abs(es.eigenvalues[k] - (k + 0.5)) > 1e-12) return "harmonic level " + std::to_string(k);
    const auto h = build_hamiltonian(4, 0.1, 64);
    const auto sys = eigendecompose(h);
    if (eigen_residual(h, sys) > 1e-10 * h.inf_norm()) return "residual bound";
    return {};
  });

  suite.check("fock", "λ=0 Heisenberg amplitude is √(n/2)", [&]() -> std::string {
    for (int n = 1; n <= 4; ++n) {
      const HeisenbergElement e(4, 0.0, 32, n);
      for (double t : {0.0, 1.3, 7.7})
        if (std::abs(std::abs(e(t)) - std::sqrt(n / 2.0)) > 1e-12) return "amplitude at n=" + std::to_string(n);
    }
    return {};
  });

  suite.check("fock", "truncation robustness (D vs 2D)", [&]() -> std::string {
    for (int m : {4, 6, 8}) {
      const HeisenbergElement small(m, 0.05, 96, 3);
      const HeisenbergElement large(m, 0.05, 192, 3);
      for (double t : {0.0, 10.0, 25.0, 50.0})
        if (std::abs(small(t) - large(t)) >= 1e-8) return detail::at("delta >= 1e-8", m, 3);
    }
    return {};
  });

  suite.check("dynamics", "MSPT amplitude, phase linearity, operator form", [&]() -> std::string {
    for (int m : {4, 6, 8, 10})
      for (int n = 1; n <= 5; ++n) {
        const MsptElement e(m, n);
        const double lambda = 0.01, dt = 0.05;
        for (int i = 0; i < 50; ++i) {
          const double t = i * dt;
          const auto z = e(lambda, t);
          if (std::abs(std::abs(z) - std::sqrt(n / 2.0)) > 1e-14) return detail::at("amplitude", m, n);
          const auto step = e(lambda, t + dt) / z;
          if (std::abs(std::arg(step) + e.phase_rate(lambda) * dt) > 1e-12) return detail::at("phase", m, n);
          if (std::abs(e.operator_form(lambda, t) - z) > 1e-12) return detail::at("operator form", m, n);
        }
      }
    return {};
  });

  suite.check("dynamics", "secular-term suppression (m=4, λ=0.01, n=1, t=25)", [&]() -> std::string {
    const MsptElement e(4, 1);
    const HeisenbergElement exact(4, 0.01, 128, 1);
    const double t = 25.0;
    const double mspt_err = std::abs(e(0.01, t) - exact(t));
    const double naive_err = std::abs(e.naive(0.01, t) - exact(t));
    if (naive_err < 5.0 * mspt_err) {
      std::ostringstream s;
      s << "naive/mspt error ratio " << naive_err / mspt_err << " < 5";
      return s.str();
    }
    return {};
  });

  return suite.take();
}

}  // namespace boson
