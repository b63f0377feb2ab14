// Small fixed-dimension complex linear algebra for 2- and 4-dimensional
// Hilbert spaces. Everything is value-semantic and allocation-free; the
// Hermitian eigenvalue routine is deterministic (closed form at dim 2,
// Sylvester inertia bisection at dim 4 -- no iterative eigensolver).

#pragma once

#include <array>
#include <complex>
#include <vector>

namespace bellsim {

using Complex = std::complex<double>;

// Square complex matrix of dimension 2 or 4, row-major.
class Matrix {
 public:
  explicit Matrix(int dim);
  static Matrix identity(int dim);

  int dim() const { return dim_; }

  Complex& operator()(int r, int c) { return a_[r * dim_ + c]; }
  const Complex& operator()(int r, int c) const { return a_[r * dim_ + c]; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);

  Matrix adjoint() const;
  Complex trace() const;
  double max_abs() const;

 private:
  int dim_;
  std::array<Complex, 16> a_{};
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Complex s, Matrix m);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

// Complex column vector of dimension 2 or 4.
class Vector {
 public:
  explicit Vector(int dim);
  Vector(std::initializer_list<Complex> entries);

  int dim() const { return dim_; }
  Complex& operator[](int i) { return a_[i]; }
  const Complex& operator[](int i) const { return a_[i]; }

  double norm() const;

 private:
  int dim_;
  std::array<Complex, 4> a_{};
};

Vector operator*(const Matrix& m, const Vector& v);

// Inner product, conjugate-linear in the first argument.
Complex inner(const Vector& bra, const Vector& ket);

// Kronecker product restricted to 2x2 (x) 2x2 -> 4x4 in the ordering
// |00>,|01>,|10>,|11> of the factor bases.
Matrix kron(const Matrix& a, const Matrix& b);

// max entry magnitude of m - m^dagger
double hermiticity_defect(const Matrix& m);

bool approx_equal(const Matrix& a, const Matrix& b, double tol);

// Eigenvalues of a Hermitian matrix, ascending with multiplicity.
// Throws if the input is materially non-Hermitian.
std::vector<double> hermitian_eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& m);

}  // namespace bellsim
