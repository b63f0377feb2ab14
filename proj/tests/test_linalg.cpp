#include "doctest.h"

#include <cmath>
#include <vector>

#include "bellsim/linalg.hpp"
#include "test_support.hpp"

using namespace bellsim;
using testsupport::TestRng;

namespace {

Matrix diag4(double a, double b, double c, double d) {
  Matrix m(4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

Matrix random_hermitian(TestRng& rng, int dim) {
  Matrix m(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m(r, c) = Complex{rng.range(-1, 1), rng.range(-1, 1)};
  return m + m.adjoint();
}

}  // namespace

TEST_CASE("matrix arithmetic and adjoint") {
  Matrix m(2);
  m(0, 0) = 1.0;
  m(0, 1) = Complex{0.0, 2.0};
  m(1, 0) = 3.0;
  m(1, 1) = Complex{4.0, -1.0};

  const Matrix sum = m + Matrix::identity(2);
  CHECK(sum(0, 0) == Complex{2.0, 0.0});
  CHECK(sum(1, 1) == Complex{5.0, -1.0});

  const Matrix adj = m.adjoint();
  CHECK(adj(1, 0) == Complex{0.0, -2.0});
  CHECK(adj(0, 1) == Complex{3.0, 0.0});

  CHECK(m.trace() == Complex{5.0, -1.0});
  CHECK(m.max_abs() == doctest::Approx(std::sqrt(17.0)));

  const Matrix scaled = 2.0 * m;
  CHECK(scaled(0, 1) == Complex{0.0, 4.0});

  const Matrix diff = scaled - m;
  CHECK(approx_equal(diff, m, 0.0));
}

TEST_CASE("matrix product against hand expansion") {
  Matrix a(2), b(2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 3.0;
  a(1, 1) = 4.0;
  b(0, 0) = 5.0;
  b(0, 1) = 6.0;
  b(1, 0) = 7.0;
  b(1, 1) = 8.0;

  const Matrix p = a * b;
  CHECK(p(0, 0) == Complex{19.0, 0.0});
  CHECK(p(0, 1) == Complex{22.0, 0.0});
  CHECK(p(1, 0) == Complex{43.0, 0.0});
  CHECK(p(1, 1) == Complex{50.0, 0.0});
}

TEST_CASE("vector norm, matrix-vector product, inner product") {
  const Vector v{Complex{3.0, 0.0}, Complex{0.0, 4.0}};
  CHECK(v.norm() == doctest::Approx(5.0));

  Matrix m = Matrix::identity(2);
  m *= Complex{2.0, 0.0};
  const Vector w = m * v;
  CHECK(w[0] == Complex{6.0, 0.0});
  CHECK(w[1] == Complex{0.0, 8.0});

  // conjugate-linear in the first argument
  const Vector e0{Complex{0.0, 1.0}, Complex{0.0, 0.0}};
  const Vector e1{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  CHECK(inner(e0, e1) == Complex{0.0, -1.0});
  CHECK(inner(e1, e0) == Complex{0.0, 1.0});
  CHECK(inner(v, v).real() == doctest::Approx(25.0));
}

TEST_CASE("kron follows the product-basis ordering") {
  Matrix a(2), b(2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 3.0;
  a(1, 1) = 4.0;
  b(0, 0) = 0.0;
  b(0, 1) = 5.0;
  b(1, 0) = 6.0;
  b(1, 1) = 7.0;

  const Matrix k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          CHECK(k(i * 2 + p, j * 2 + q) == a(i, j) * b(p, q));

  CHECK_THROWS_AS(kron(Matrix::identity(4), Matrix::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("hermiticity defect") {
  CHECK(hermiticity_defect(Matrix::identity(2)) == 0.0);
  Matrix m(2);
  m(0, 1) = Complex{0.0, 1.0};
  m(1, 0) = Complex{0.0, 1.0};  // should be -i for Hermitian
  CHECK(hermiticity_defect(m) == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues: closed form at dimension 2") {
  Matrix m(2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 2.0;
  const auto ev = hermitian_eigenvalues(m);
  REQUIRE(ev.size() == 2);
  CHECK(std::abs(ev[0] - 1.0) < 1e-12);
  CHECK(std::abs(ev[1] - 3.0) < 1e-12);

  Matrix sy(2);
  sy(0, 1) = Complex{0.0, -1.0};
  sy(1, 0) = Complex{0.0, 1.0};
  const auto ev2 = hermitian_eigenvalues(sy);
  CHECK(std::abs(ev2[0] + 1.0) < 1e-12);
  CHECK(std::abs(ev2[1] - 1.0) < 1e-12);
}

TEST_CASE("eigenvalues: dimension 4 via inertia bisection") {
  SUBCASE("diagonal matrix, shuffled entries") {
    const auto ev = hermitian_eigenvalues(diag4(4.0, 1.0, 3.0, 2.0));
    REQUIRE(ev.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - (i + 1.0)) < 1e-9);
  }

  SUBCASE("degenerate spectrum") {
    const auto ev = hermitian_eigenvalues(diag4(1.0, 1.0, 1.0, 1.0));
    for (double x : ev) CHECK(std::abs(x - 1.0) < 1e-9);
  }

  SUBCASE("tensor of Pauli x with itself: spectrum {-1,-1,1,1}") {
    Matrix sx(2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    const auto ev = hermitian_eigenvalues(kron(sx, sx));
    CHECK(std::abs(ev[0] + 1.0) < 1e-9);
    CHECK(std::abs(ev[1] + 1.0) < 1e-9);
    CHECK(std::abs(ev[2] - 1.0) < 1e-9);
    CHECK(std::abs(ev[3] - 1.0) < 1e-9);
  }

  SUBCASE("trace and Frobenius invariants on random Hermitian input") {
    TestRng rng(101);
    for (int it = 0; it < 50; ++it) {
      const Matrix h = random_hermitian(rng, 4);
      const auto ev = hermitian_eigenvalues(h);
      REQUIRE(ev.size() == 4);
      double sum = 0.0, sum_sq = 0.0;
      for (double x : ev) {
        sum += x;
        sum_sq += x * x;
      }
      CHECK(std::abs(sum - h.trace().real()) < 1e-9);
      CHECK(std::abs(sum_sq - (h * h).trace().real()) < 1e-9);
      // ascending order
      for (int i = 1; i < 4; ++i) CHECK(ev[i] >= ev[i - 1]);
    }
  }

  SUBCASE("spectrum shifts with the diagonal") {
    TestRng rng(202);
    const Matrix h = random_hermitian(rng, 4);
    Matrix shifted = h;
    shifted += 2.5 * Matrix::identity(4);
    const auto ev = hermitian_eigenvalues(h);
    const auto evs = hermitian_eigenvalues(shifted);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(evs[i] - ev[i] - 2.5) < 1e-9);
  }
}

TEST_CASE("eigenvalue routine rejects non-Hermitian input") {
  Matrix m(2);
  m(0, 1) = 1.0;  // m(1,0) left zero
  CHECK_THROWS_AS(hermitian_eigenvalues(m), std::invalid_argument);
}

TEST_CASE("min_eigenvalue") {
  CHECK(std::abs(min_eigenvalue(diag4(0.5, 2.0, -0.25, 1.0)) + 0.25) < 1e-9);
  CHECK(std::abs(min_eigenvalue(Matrix::identity(2)) - 1.0) < 1e-12);
}

TEST_CASE("dimension guards") {
  CHECK_THROWS_AS(Matrix(3), std::invalid_argument);
  CHECK_THROWS_AS(Vector(5), std::invalid_argument);
  CHECK_THROWS_AS(Matrix::identity(2) + Matrix::identity(4),
                  std::invalid_argument);
}
