#pragma once

// First-order multiple-scale solution of ẍ + x + λ x^(m-1) = 0 between
// adjacent number states, and the harness that compares it with the
// truncated-basis Heisenberg evolution.
//
// With ⟨n-1|x(0)|n⟩ = √(n/2) and ⟨n-1|p(0)|n⟩ = -i√(n/2) (p = i(a† - a)/√2):
//
//   ⟨n-1|x0(t)|n⟩ = √(n/2) e^{-iθ},   θ = (1 + λ ω(m, n)) t

#include <boson/errors.hpp>
#include <boson/fock.hpp>
#include <boson/format.hpp>
#include <boson/spectrum.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace boson {

/// Everything the multiple-scale element needs for one (m, n). Phases and
/// trig sums are evaluated in long double.
class MsptElement {
 public:
  MsptElement(int m, int n) : m_(m), n_(n) {
    detail::require_even_exponent(m);
    detail::require_level(n, 1, "mspt_matrix_element");
    omega_ = to_long_double(omega_small(m, n));
    upper_shift_ = to_long_double(capital_omega_half(m, n));
    lower_shift_ = to_long_double(capital_omega_half(m, n - 1));
    amplitude_ = std::sqrt(n / 2.0L);
  }

  double omega() const noexcept { return static_cast<double>(omega_); }
  double amplitude() const noexcept { return static_cast<double>(amplitude_); }

  /// 1 + λ ω(m, n)
  double phase_rate(double lambda) const noexcept { return static_cast<double>(1.0L + lambda * omega_); }

  std::complex<double> operator()(double lambda, double t) const {
    const long double theta = (1.0L + lambda * omega_) * t;
    return {static_cast<double>(amplitude_ * std::cos(theta)), static_cast<double>(-amplitude_ * std::sin(theta))};
  }

  /// Symmetrized two-cosine/two-sine form with Ω(H0) evaluated at n ± ½,
  /// divided by G(n). Agrees with operator() through the sum-to-product
  /// identity wherever G is not near zero.
  std::complex<double> operator_form(double lambda, double t) const {
    const long double g = g_factor_extended(m_, n_, lambda, t);
    if (std::abs(g) <= 1e-6L) throw NearSingularNormalization(static_cast<double>(g));
    const long double upper = (1.0L + lambda * upper_shift_) * t;
    const long double lower = (1.0L + lambda * lower_shift_) * t;
    // x(0)cos + cos x(0) picks up √(n/2) cos at both ends; p(0)sin + sin p(0)
    // picks up -i√(n/2) sin.
    const long double re = amplitude_ * (std::cos(upper) + std::cos(lower)) / g;
    const long double im = -amplitude_ * (std::sin(upper) + std::sin(lower)) / g;
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  /// Plain first-order perturbation theory: harmonic phase with the secular
  /// correction -iλωt left unresummed.
  std::complex<double> naive(double lambda, double t) const {
    return static_cast<double>(amplitude_) * std::polar(1.0, -t) *
           std::complex<double>(1.0, static_cast<double>(-lambda * omega_ * t));
  }

 private:
  int m_;
  int n_;
  long double omega_ = 0.0L;
  long double upper_shift_ = 0.0L;
  long double lower_shift_ = 0.0L;
  long double amplitude_ = 0.0L;
};

inline std::complex<double> mspt_matrix_element(int m, int n, double lambda, double t) {
  return MsptElement(m, n)(lambda, t);
}

inline std::complex<double> mspt_element_via_operator_form(int m, int n, double lambda, double t) {
  return MsptElement(m, n).operator_form(lambda, t);
}

inline std::complex<double> naive_first_order_element(int m, int n, double lambda, double t) {
  return MsptElement(m, n).naive(lambda, t);
}

struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }

  static TimeGrid uniform(double t_max, double dt) {
    if (!(dt > 0.0)) throw DomainError("time grid: dt must be > 0");
    if (!(t_max >= dt)) throw DomainError("time grid: t_max must be >= dt");
    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    return {0.0, dt, steps + 1};
  }
};

/// Least-squares slope of the unwrapped phase, negated: the angular rate of a
/// series that rotates as e^{-iνt}.
inline double fit_phase_rate(std::span<const std::complex<double>> series, const TimeGrid& grid) {
  if (series.size() < 2) throw DomainError("fit_phase_rate: need at least two samples");
  std::vector<double> phase(series.size());
  double offset = 0.0;
  double last = std::arg(series[0]);
  phase[0] = last;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double raw = std::arg(series[i]);
    double step = raw - last;
    while (step > std::numbers::pi) { step -= 2 * std::numbers::pi; offset -= 2 * std::numbers::pi; }
    while (step < -std::numbers::pi) { step += 2 * std::numbers::pi; offset += 2 * std::numbers::pi; }
    phase[i] = raw + offset;
    last = raw;
  }
  const double count = static_cast<double>(series.size());
  double st = 0, sp = 0, stt = 0, stp = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = grid.at(i);
    st += t;
    sp += phase[i];
    stt += t * t;
    stp += t * phase[i];
  }
  const double slope = (count * stp - st * sp) / (count * stt - st * st);
  return -slope;
}

struct TraceSummary {
  double max_abs_err = 0.0;
  double exact_phase_rate = 0.0;
  double mspt_phase_rate = 0.0;
  /// max over the grid of |exact(D) - exact(2D)|; NaN when not computed.
  double truncation_delta = std::numeric_limits<double>::quiet_NaN();
};

struct TimeTrace {
  OscillatorSpec spec;
  int dim = 0;
  TimeGrid grid;
  std::vector<std::complex<double>> mspt;
  std::vector<std::complex<double>> exact;
  std::vector<double> err;
  TraceSummary summary;
};

struct TraceOptions {
  bool truncation_delta = true;
};

inline TimeTrace run_trace(int m, int n, double lambda, int dim, double t_max, double dt,
                           const TraceOptions& opts = {}) {
  TimeTrace trace;
  trace.spec = {m, lambda, n};
  trace.spec.validate();
  trace.dim = dim;
  trace.grid = TimeGrid::uniform(t_max, dt);

  const MsptElement mspt(m, n);
  const HeisenbergElement exact(m, lambda, dim, n);

  const std::size_t count = trace.grid.count;
  trace.mspt.resize(count);
  trace.exact.resize(count);
  trace.err.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = trace.grid.at(i);
    trace.mspt[i] = mspt(lambda, t);
    trace.exact[i] = exact(t);
    trace.err[i] = std::abs(trace.mspt[i] - trace.exact[i]);
    trace.summary.max_abs_err = std::max(trace.summary.max_abs_err, trace.err[i]);
  }
  trace.summary.exact_phase_rate = fit_phase_rate(trace.exact, trace.grid);
  trace.summary.mspt_phase_rate = mspt.phase_rate(lambda);

  if (opts.truncation_delta) {
    const HeisenbergElement doubled(m, lambda, 2 * dim, n);
    double delta = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      delta = std::max(delta, std::abs(trace.exact[i] - doubled(trace.grid.at(i))));
    }
    trace.summary.truncation_delta = delta;
  }
  return trace;
}

/// Two comment lines (parameters, summary), a header row, then one row per sample.
inline std::string to_csv(const TimeTrace& trace) {
  std::ostringstream out;
  out << "# m=" << trace.spec.m << " n=" << trace.spec.n
      << " lambda=" << format_double(trace.spec.lambda) << " D=" << trace.dim << '\n';
  out << "# max_abs_err=" << format_double(trace.summary.max_abs_err)
      << " exact_phase_rate=" << format_double(trace.summary.exact_phase_rate)
      << " mspt_phase_rate=" << format_double(trace.summary.mspt_phase_rate)
      << " truncation_delta=" << format_double(trace.summary.truncation_delta) << '\n';
  out << "t,mspt_re,mspt_im,exact_re,exact_im,abs_err\n";
  for (std::size_t i = 0; i < trace.grid.count; ++i) {
    out << format_double(trace.grid.at(i)) << ',' << format_double(trace.mspt[i].real()) << ','
        << format_double(trace.mspt[i].imag()) << ',' << format_double(trace.exact[i].real())
        << ',' << format_double(trace.exact[i].imag()) << ',' << format_double(trace.err[i])
        << '\n';
  }
  return out.str();
}

}  // namespace boson
