#pragma once

// Command dispatch for boson_order, kept out of main() so tests can drive it
// in-process. Exit codes: 0 ok, 1 domain or numerical failure, 2 usage.

#include <boson/boson.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace boson::cli {

inline constexpr int kDefaultDim = 128;
inline constexpr const char* kDimEnv = "BOSON_ORDER_DIM";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int default_dimension() {
  const char* env = std::getenv(kDimEnv);
  if (env == nullptr || *env == '\0') return kDefaultDim;
  try {
    std::size_t used = 0;
    const int d = std::stoi(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return d;
  } catch (const std::exception&) {
    throw UsageError(std::string(kDimEnv) + " must be an integer, got '" + env + "'");
  }
}

inline std::string order_record(int m, std::optional<bool> check) {
  const auto expansion = theorem2_expansion(m);
  std::ostringstream out;
  out << "{\"m\":" << m << ",\"weights\":[";
  for (std::size_t i = 0; i < expansion.terms.size(); ++i) {
    if (i) out << ',';
    out << "{\"r\":" << expansion.terms[i].r << ",\"weight\":" << expansion.terms[i].weight.str() << '}';
  }
  out << ']';
  if (check) out << ",\"check\":" << quoted(*check ? "pass" : "fail");
  out << '}';
  return out.str();
}

inline std::string energy_record(int m, int n, double lambda, bool exact_slope) {
  const auto e = first_order_energy({m, lambda, n});
  const bool shifts = (m % 2 == 0);
  std::ostringstream out;
  out << "{\"m\":" << m << ",\"n\":" << n << ",\"lambda\":" << format_double(lambda)
      << ",\"E1\":" << format_double(e.value) << ",\"delta1\":" << quoted(to_string(e.slope))
      << ",\"omega\":" << (shifts && n >= 1 ? quoted(to_string(omega_small(m, n))) : "null")
      << ",\"Omega_half\":" << (shifts ? quoted(to_string(capital_omega_half(m, n))) : "null");
  if (exact_slope) out << ",\"base\":" << quoted(to_string(e.base));
  out << '}';
  return out.str();
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact normal ordering, anharmonic spectra and multiple-scale dynamics", "boson_order"};
  app.require_subcommand(1);

  int m = 0;
  int n = 0;
  double lambda = 0.0;

  auto* order = app.add_subcommand("order", "closed-form weights t_r C(m,r) of (a+a†)^m");
  bool check = false;
  order->add_option("--m", m, "exponent m >= 1")->required();
  order->add_flag("--check", check, "compare against brute-force normal ordering");

  auto* normal = app.add_subcommand("normal-order", "normal order an expression in a, ad");
  std::string expr;
  normal->add_option("--expr", expr, "expression, e.g. \"(a+ad)^4\"")->required();

  auto* energy = app.add_subcommand("energy", "first-order energy record");
  bool exact_slope = false;
  energy->add_option("--m", m)->required();
  energy->add_option("--n", n)->required();
  energy->add_option("--lambda", lambda)->required();
  energy->add_flag("--exact-slope", exact_slope, "also emit the exact base n+1/2");

  auto* shift = app.add_subcommand("shift", "frequency shift Ω(n+½) or the Ω(H0) polynomial");
  std::optional<int> shift_n;
  bool poly = false;
  shift->add_option("--m", m)->required();
  auto* shift_n_opt = shift->add_option("--n", shift_n);
  auto* poly_opt = shift->add_flag("--poly", poly);
  shift_n_opt->excludes(poly_opt);
  poly_opt->excludes(shift_n_opt);

  auto* dynamics = app.add_subcommand("dynamics", "MSPT vs truncated-basis time trace (CSV)");
  double t_max = 0.0;
  double dt = 0.0;
  std::optional<int> dim;
  std::string out_file;
  dynamics->add_option("--m", m)->required();
  dynamics->add_option("--n", n)->required();
  dynamics->add_option("--lambda", lambda)->required();
  dynamics->add_option("--t-max", t_max)->required();
  dynamics->add_option("--dt", dt)->required();
  dynamics->add_option("--dim", dim, "basis dimension (default $BOSON_ORDER_DIM or 128)");
  dynamics->add_option("--out", out_file, "write CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  VerifyOptions vopts;
  verify->add_option("--max-m", vopts.max_m)->capture_default_str();
  verify->add_option("--max-n", vopts.max_n)->capture_default_str();

  std::vector<const char*> argv{"boson_order"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (order->parsed()) {
      std::optional<bool> result;
      if (check) result = theorem2_expansion(m).materialize() == brute_force_normal_order(static_cast<unsigned>(m));
      out << order_record(m, result) << '\n';
      return (result && !*result) ? 1 : 0;
    }
    if (normal->parsed()) {
      out << to_json(normal_order_expression(expr)).dump() << '\n';
      return 0;
    }
    if (energy->parsed()) {
      out << energy_record(m, n, lambda, exact_slope) << '\n';
      return 0;
    }
    if (shift->parsed()) {
      if (poly) {
        out << to_json(omega_polynomial(m)).dump() << '\n';
      } else if (shift_n) {
        out << "{\"m\":" << m << ",\"n\":" << *shift_n << ",\"Omega_half\":"
            << quoted(to_string(capital_omega_half(m, *shift_n))) << "}\n";
      } else {
        err << "usage error: shift needs --n N or --poly\n";
        return 2;
      }
      return 0;
    }
    if (dynamics->parsed()) {
      const int d = dim ? *dim : default_dimension();
      const std::string csv = to_csv(run_trace(m, n, lambda, d, t_max, dt));
      if (out_file.empty()) {
        out << csv;
      } else {
        std::ofstream file(out_file);
        if (!file) throw DomainError("cannot open output file '" + out_file + "'");
        file << csv;
      }
      return 0;
    }
    if (verify->parsed()) {
      if (vopts.max_m < 1 || vopts.max_n < 1) throw UsageError("--max-m and --max-n must be >= 1");
      const auto results = run_invariant_suite(vopts);
      std::size_t passed = 0;
      for (const auto& r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(10) << r.module << r.name;
        if (!r.passed) out << "  [" << r.detail << ']';
        out << '\n';
        passed += r.passed;
      }
      out << passed << '/' << results.size() << " checks passed\n";
      return passed == results.size() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace boson::cli
