#pragma once

// Independent numerical and exact oracles in the number basis:
//  * exact ⟨n|(a + a†)^m|n⟩ by walking the ladder (no ordering theorem),
//  * truncated-basis x and H = H0 + (λ/m) x^m,
//  * a cyclic Jacobi eigensolver,
//  * Heisenberg-picture matrix elements ⟨ψ_{n-1}|X(t)|ψ_n⟩.

#include <boson/errors.hpp>
#include <boson/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace boson {

/// Σ c_n e_n in the unnormalized basis e_n = a†^n |0⟩, where
/// a† e_n = e_{n+1} and a e_n = n e_{n-1}. Coefficients stay integral.
class LadderVector {
 public:
  LadderVector() = default;

  static LadderVector basis(unsigned level) {
    LadderVector v;
    v.coeffs_[level] = 1;
    return v;
  }

  LadderVector raised() const {
    LadderVector out;
    for (const auto& [level, c] : coeffs_) out.coeffs_[level + 1] = c;
    return out;
  }

  LadderVector lowered() const {
    LadderVector out;
    for (const auto& [level, c] : coeffs_) {
      if (level > 0) out.coeffs_[level - 1] = c * level;
    }
    return out;
  }

  LadderVector& operator+=(const LadderVector& o) {
    for (const auto& [level, c] : o.coeffs_) {
      auto& slot = coeffs_[level];
      slot += c;
      if (slot == 0) coeffs_.erase(level);
    }
    return *this;
  }

  BigInt coefficient(unsigned level) const {
    auto it = coeffs_.find(level);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  const std::map<unsigned, BigInt>& coeffs() const noexcept { return coeffs_; }

 private:
  std::map<unsigned, BigInt> coeffs_;
};

/// ⟨n|(a + a†)^m|n⟩, exact, by applying (a + a†) m times to e_n.
inline BigInt ladder_expectation(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("ladder_expectation: m and n must be >= 0");
  LadderVector v = LadderVector::basis(static_cast<unsigned>(n));
  for (int i = 0; i < m; ++i) {
    LadderVector next = v.lowered();
    next += v.raised();
    v = std::move(next);
  }
  return v.coefficient(static_cast<unsigned>(n));
}

/// Dense real square matrix over the truncated number basis, row-major.
class FockMatrix {
 public:
  FockMatrix() = default;
  explicit FockMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static FockMatrix identity(std::size_t dim) {
    FockMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
  }

  std::size_t dim() const noexcept { return dim_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  FockMatrix operator*(const FockMatrix& o) const {
    FockMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * o(k, j);
      }
    }
    return out;
  }

  FockMatrix transposed() const {
    FockMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  /// (A + Aᵀ)/2
  FockMatrix symmetrized() const {
    FockMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  /// max row sum of |entries|
  double inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
      best = std::max(best, row);
    }
    return best;
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// ⟨u|A|v⟩
  double sandwich(std::span<const double> u, std::span<const double> v) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i] == 0.0) continue;
      double row = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) row += (*this)(i, j) * v[j];
      acc += u[i] * row;
    }
    return acc;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// x = (a + a†)/√2: x[i][i+1] = x[i+1][i] = √((i+1)/2).
inline FockMatrix build_position_matrix(int dim) {
  if (dim < 2) throw DomainError("build_position_matrix: dimension must be >= 2, got " + std::to_string(dim));
  FockMatrix x(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i + 1 < x.dim(); ++i) {
    x(i, i + 1) = x(i + 1, i) = std::sqrt(static_cast<double>(i + 1) / 2.0);
  }
  return x;
}

/// H = diag(i + ½) + (λ/m) Xᵐ, with Xᵐ symmetrized after the power.
inline FockMatrix build_hamiltonian(int m, double lambda, int dim) {
  if (m < 2) throw DomainError("build_hamiltonian: m must be >= 2, got " + std::to_string(m));
  if (dim < m + 2) {
    throw DomainError("build_hamiltonian: dimension " + std::to_string(dim) +
                      " too small for m=" + std::to_string(m) + " (need D >= m + 2)");
  }
  const FockMatrix x = build_position_matrix(dim);
  FockMatrix xm = x;
  for (int i = 1; i < m; ++i) xm = xm * x;
  xm = xm.symmetrized();

  FockMatrix h(static_cast<std::size_t>(dim));
  const double scale = lambda / m;
  for (std::size_t i = 0; i < h.dim(); ++i) {
    for (std::size_t j = 0; j < h.dim(); ++j) h(i, j) = scale * xm(i, j);
    h(i, i) += static_cast<double>(i) + 0.5;
  }
  return h;
}

struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;  // ascending
  FockMatrix eigenvectors;          // column k pairs with eigenvalues[k]

  std::vector<double> vector(std::size_t k) const { return eigenvectors.column(k); }
};

struct JacobiOptions {
  int max_sweeps = 100;
  double residual_bound = 1e-10;  // relative to ‖H‖∞
};

/// ‖H V - V diag(E)‖∞ (max-abs entry) over all eigenpairs.
inline double eigen_residual(const FockMatrix& h, const EigenSystem& es) {
  double worst = 0.0;
  const std::size_t d = h.dim();
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      double acc = -es.eigenvalues[k] * es.eigenvectors(i, k);
      for (std::size_t j = 0; j < d; ++j) acc += h(i, j) * es.eigenvectors(j, k);
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

/// Full spectrum of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps visit (p, q) in row order, so results are deterministic. An
/// off-diagonal entry is annihilated unless it is negligible against
/// √|a_pp a_qq|; this keeps small eigenvalues of the graded oscillator
/// Hamiltonians accurate relative to their own size rather than to ‖H‖.
/// Eigenvectors are phase-fixed so that their largest-magnitude component is
/// positive.
inline EigenSystem eigendecompose(const FockMatrix& h, const JacobiOptions& opts = {}) {
  const std::size_t d = h.dim();
  if (!h.is_symmetric()) throw DomainError("eigendecompose: input matrix is not symmetric");

  FockMatrix a = h;
  FockMatrix v = FockMatrix::identity(d);
  constexpr double kNegligible = 1e-18;

  bool converged = (d <= 1);
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (std::abs(apq) <= kNegligible * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        ++rotations;
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < d; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = (rotations == 0);
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenSystem es;
  es.dim = d;
  es.eigenvalues.resize(d);
  es.eigenvectors = FockMatrix(d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = order[k];
    es.eigenvalues[k] = a(src, src);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < d; ++i)
      if (std::abs(v(i, src)) > std::abs(v(peak, src))) peak = i;
    const double sign = v(peak, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < d; ++i) es.eigenvectors(i, k) = sign * v(i, src);
  }

  const double residual = eigen_residual(h, es);
  if (!converged || residual > opts.residual_bound * std::max(h.inf_norm(), 1.0)) {
    throw NumericalFailure("eigendecompose: Jacobi iteration did not converge within " +
                               std::to_string(opts.max_sweeps) + " sweeps",
                           residual);
  }
  return es;
}

/// ⟨ψ_k|N|ψ_k⟩
inline double mean_occupation(std::span<const double> psi) {
  double acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) acc += static_cast<double>(i) * psi[i] * psi[i];
  return acc;
}

/// ⟨ψ_{n-1}| e^{iHt} X e^{-iHt} |ψ_n⟩ for the truncated anharmonic oscillator.
///
/// The eigensystem is computed once; evaluating at a time t is then
/// A e^{-i(E_n - E_{n-1}) t} with A = ⟨ψ_{n-1}|X|ψ_n⟩ real.
class HeisenbergElement {
 public:
  HeisenbergElement(int m, double lambda, int dim, int n) : n_(n) {
    if (n < 1) throw DomainError("heisenberg_element: level n must be >= 1, got " + std::to_string(n));
    if (n > dim / 4) {
      throw DomainError("heisenberg_element: level n=" + std::to_string(n) +
                        " exceeds D/4 for D=" + std::to_string(dim));
    }
    const FockMatrix h = build_hamiltonian(m, lambda, dim);
    EigenSystem es = eigendecompose(h);

    // level k is paired with the k-th ascending eigenvalue
    double previous = -1.0;
    for (int k = 0; k <= n + 1; ++k) {
      const double occ = mean_occupation(es.vector(static_cast<std::size_t>(k)));
      if (occ <= previous) {
        throw NumericalFailure("heisenberg_element: occupation not increasing at level " +
                                   std::to_string(k) + "; eigenstates may be mispaired",
                               occ - previous);
      }
      previous = occ;
    }

    const auto lower = es.vector(static_cast<std::size_t>(n - 1));
    const auto upper = es.vector(static_cast<std::size_t>(n));
    amplitude_ = build_position_matrix(dim).sandwich(lower, upper);
    frequency_ = es.eigenvalues[static_cast<std::size_t>(n)] -
                 es.eigenvalues[static_cast<std::size_t>(n - 1)];
  }

  int level() const noexcept { return n_; }
  double amplitude() const noexcept { return amplitude_; }
  /// E_n - E_{n-1}
  double frequency() const noexcept { return frequency_; }

  std::complex<double> operator()(double t) const {
    return amplitude_ * std::polar(1.0, -frequency_ * t);
  }

 private:
  int n_;
  double amplitude_ = 0.0;
  double frequency_ = 0.0;
};

inline std::complex<double> heisenberg_element(int m, double lambda, int dim, int n, double t) {
  return HeisenbergElement(m, lambda, dim, n)(t);
}

}  // namespace boson
