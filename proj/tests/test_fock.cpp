#include <boson/fock.hpp>
#include <boson/format.hpp>
#include <boson/spectrum.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace boson;

namespace {

double max_orthonormality_error(const EigenSystem& es) {
  double worst = 0.0;
  for (std::size_t a = 0; a < es.dim; ++a)
    for (std::size_t b = a; b < es.dim; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < es.dim; ++i) dot += es.eigenvectors(i, a) * es.eigenvectors(i, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("ladder_expectation examples", "[fock]") {
  CHECK(ladder_expectation(4, 0) == 3);
  CHECK(ladder_expectation(0, 7) == 1);
  CHECK(ladder_expectation(2, 5) == 11);
  for (int m = 1; m <= 15; m += 2)
    for (int n = 0; n <= 6; ++n) CHECK(ladder_expectation(m, n) == 0);
  CHECK(Rational(ladder_expectation(6, 2)) == diagonal_expectation(6, 2));
}

TEST_CASE("LadderVector keeps integer coefficients", "[fock]") {
  auto v = LadderVector::basis(3).lowered();
  CHECK(v.coefficient(2) == 3);
  v += LadderVector::basis(3).raised();
  CHECK(v.coefficient(4) == 1);
  CHECK(LadderVector::basis(0).lowered().coeffs().empty());
}

TEST_CASE("position matrix", "[fock]") {
  const auto x2 = build_position_matrix(2);
  CHECK(x2(0, 1) == std::sqrt(0.5));
  CHECK(x2(1, 0) == std::sqrt(0.5));
  CHECK(x2(0, 0) == 0.0);
  CHECK(build_position_matrix(3)(1, 2) == 1.0);

  const auto x = build_position_matrix(20);
  CHECK(x.is_symmetric());
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j)
      if (i + 1 != j && j + 1 != i) CHECK(x(i, j) == 0.0);
  const auto xx = x * x;
  for (std::size_t i = 0; i + 1 < 20; ++i) CHECK(xx(i, i) == Catch::Approx(i + 0.5).epsilon(1e-15));

  CHECK_THROWS_AS(build_position_matrix(1), DomainError);
}

TEST_CASE("hamiltonian construction", "[fock]") {
  const auto h0 = build_hamiltonian(4, 0.0, 10);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(h0(i, j) == (i == j ? i + 0.5 : 0.0));

  const auto h = build_hamiltonian(5, 0.3, 24);
  CHECK(h.is_symmetric());
  // (λ/m) ⟨0|x^4|0⟩ = (0.1/4)(3/4)
  CHECK(build_hamiltonian(4, 0.1, 12)(0, 0) == Catch::Approx(0.5 + 0.1 / 4 * 0.75).epsilon(1e-15));

  CHECK_THROWS_AS(build_hamiltonian(6, 0.1, 7), DomainError);
  CHECK_THROWS_AS(build_hamiltonian(1, 0.1, 10), DomainError);
}

TEST_CASE("eigendecompose of a diagonal matrix is the identity", "[fock]") {
  FockMatrix d(4);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  d(2, 2) = 2.0;
  d(3, 3) = 0.5;
  const auto es = eigendecompose(d);
  CHECK(es.eigenvalues == std::vector<double>{-1.0, 0.5, 2.0, 3.0});
  CHECK(es.eigenvectors(1, 0) == 1.0);
  CHECK(es.eigenvectors(3, 1) == 1.0);
  CHECK(es.eigenvectors(2, 2) == 1.0);
  CHECK(es.eigenvectors(0, 3) == 1.0);
}

TEST_CASE("eigendecompose rejects asymmetric input", "[fock]") {
  FockMatrix a(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(eigendecompose(a), DomainError);
}

TEST_CASE("harmonic spectrum", "[fock]") {
  const auto es = eigendecompose(build_hamiltonian(4, 0.0, 32));
  for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(es.eigenvalues[k] - (k + 0.5)) <= 1e-12);
}

TEST_CASE("eigen system invariants", "[fock]") {
  for (int m : {3, 4, 6}) {
    const auto h = build_hamiltonian(m, 0.1, 64);
    const auto es = eigendecompose(h);
    CHECK(eigen_residual(h, es) <= 1e-10 * h.inf_norm());
    CHECK(max_orthonormality_error(es) <= 1e-12);
    for (std::size_t k = 1; k < es.dim; ++k) CHECK(es.eigenvalues[k - 1] <= es.eigenvalues[k]);

    // V diag(E) Vᵀ reproduces H
    double worst = 0.0;
    for (std::size_t i = 0; i < es.dim; ++i)
      for (std::size_t j = 0; j < es.dim; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < es.dim; ++k)
          acc += es.eigenvectors(i, k) * es.eigenvalues[k] * es.eigenvectors(j, k);
        worst = std::max(worst, std::abs(acc - h(i, j)));
      }
    CHECK(worst < 1e-10 * std::max(1.0, h.inf_norm()));
  }
}

TEST_CASE("eigenvector phase convention", "[fock]") {
  const auto es = eigendecompose(build_hamiltonian(4, 0.2, 40));
  for (std::size_t k = 0; k < es.dim; ++k) {
    const auto v = es.vector(k);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[peak])) peak = i;
    CHECK(v[peak] > 0.0);
  }
}

TEST_CASE("quartic spectrum converges in the basis size", "[fock]") {
  const auto small = eigendecompose(build_hamiltonian(4, 0.1, 64));
  const auto large = eigendecompose(build_hamiltonian(4, 0.1, 128));
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(small.eigenvalues[k] - large.eigenvalues[k]) <= 1e-9);
}

TEST_CASE("quartic ground state matches first order for small λ", "[fock]") {
  const double lambda = 1e-4;
  const auto es = eigendecompose(build_hamiltonian(4, lambda, 64));
  // second-order remainder is about 0.16 λ²
  CHECK(std::abs(es.eigenvalues[0] - (0.5 + 3 * lambda / 16)) <= lambda * lambda);
}

TEST_CASE("m = 2 is a rescaled oscillator", "[fock]") {
  const double lambda = 0.1;
  const auto es = eigendecompose(build_hamiltonian(2, lambda, 128));
  for (int n = 0; n <= 3; ++n) CHECK(std::abs(es.eigenvalues[n] - (n + 0.5) * std::sqrt(1 + lambda)) <= 1e-8);
}

TEST_CASE("heisenberg element, harmonic case", "[fock]") {
  for (int n = 1; n <= 4; ++n) {
    const HeisenbergElement e(4, 0.0, 32, n);
    for (double t : {0.0, 0.7, 3.0, 19.0}) {
      const auto expected = std::sqrt(n / 2.0) * std::polar(1.0, -t);
      CHECK(std::abs(e(t) - expected) <= 1e-12);
      CHECK(std::abs(std::abs(e(t)) - std::sqrt(n / 2.0)) <= 1e-12);
    }
  }
}

TEST_CASE("heisenberg element at t = 0 for small λ", "[fock]") {
  const auto z = heisenberg_element(4, 1e-3, 64, 2, 0.0);
  CHECK(std::abs(z - std::sqrt(1.0)) <= 1e-2);
  CHECK(z.imag() == 0.0);
}

TEST_CASE("heisenberg phase advances at the first-order level spacing", "[fock]") {
  const double lambda = 0.01;
  const double full = HeisenbergElement(4, lambda, 128, 1).frequency() - (1 + 0.75 * lambda);
  const double half = HeisenbergElement(4, lambda / 2, 128, 1).frequency() - (1 + 0.75 * lambda / 2);
  // remainder is O(λ²): about 1.1 λ² here, and it quarters when λ halves
  CHECK(std::abs(full) <= 2 * lambda * lambda);
  CHECK(full / half == Catch::Approx(4.0).margin(0.2));
}

TEST_CASE("heisenberg element preconditions", "[fock]") {
  CHECK_THROWS_AS(HeisenbergElement(4, 0.01, 64, 0), DomainError);
  CHECK_THROWS_AS(HeisenbergElement(4, 0.01, 64, 17), DomainError);
  CHECK_NOTHROW(HeisenbergElement(4, 0.01, 64, 16));
}

TEST_CASE("truncation robustness: doubling D barely moves the element", "[fock][slow]") {
  for (int m : {4, 6, 8})
    for (int n : {1, 3}) {
      const HeisenbergElement small(m, 0.05, 96, n);
      const HeisenbergElement large(m, 0.05, 192, n);
      for (double t : {0.0, 12.5, 25.0, 50.0}) {
        INFO("m=" << m << " n=" << n << " t=" << t);
        CHECK(std::abs(small(t) - large(t)) < 1e-8);
      }
    }
}

TEST_CASE("spectrum CSV dump", "[fock]") {
  const auto es = eigendecompose(build_hamiltonian(4, 0.0, 6));
  CHECK(spectrum_csv(4, 0.0, es) ==
        "m,lambda,D,level,energy\n"
        "4,0,6,0,0.5\n4,0,6,1,1.5\n4,0,6,2,2.5\n4,0,6,3,3.5\n4,0,6,4,4.5\n4,0,6,5,5.5\n");
}
