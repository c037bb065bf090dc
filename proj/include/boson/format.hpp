#pragma once

#include <boson/fock.hpp>
#include <boson/rational.hpp>

#include <cstdio>
#include <sstream>
#include <string>

namespace boson {

/// 17 significant digits, lowercase exponent; byte-stable for a given value.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

/// Eigenvalue dump: header "m,lambda,D,level,energy", one row per level.
inline std::string spectrum_csv(int m, double lambda, const EigenSystem& es) {
  std::ostringstream out;
  out << "m,lambda,D,level,energy\n";
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
    out << m << ',' << format_double(lambda) << ',' << es.dim << ',' << k << ','
        << format_double(es.eigenvalues[k]) << '\n';
  }
  return out.str();
}

}  // namespace boson
