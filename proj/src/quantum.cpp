#include "bellsim/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bellsim {

namespace {

Matrix make_pauli(Complex a01, Complex a10, Complex a00 = 0.0, Complex a11 = 0.0) {
  Matrix m(2);
  m(0, 0) = a00;
  m(0, 1) = a01;
  m(1, 0) = a10;
  m(1, 1) = a11;
  return m;
}

}  // namespace

const Matrix& pauli_x() {
  static const Matrix m = make_pauli(1.0, 1.0);
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = make_pauli(Complex(0.0, -1.0), Complex(0.0, 1.0));
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = make_pauli(0.0, 0.0, 1.0, -1.0);
  return m;
}

Matrix projector_from_direction(const Direction& n, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("projector_from_direction: sign must be +1 or -1");
  }
  const double s = static_cast<double>(sign);
  Matrix p = Matrix::identity(2);
  p += (s * n.x()) * pauli_x();
  p += (s * n.y()) * pauli_y();
  p += (s * n.z()) * pauli_z();
  p *= 0.5;
  return p;
}

PureState::PureState(Vector amplitudes) : amplitudes_(amplitudes) {
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > kStructuralTol) {
    throw std::invalid_argument("PureState: norm " + std::to_string(n) +
                                " is not 1 within tolerance");
  }
}

PureState singlet() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return PureState(Vector{0.0, inv_sqrt2, -inv_sqrt2, 0.0});
}

DensityMatrix::DensityMatrix(Matrix m) : m_(m) {
  if (hermiticity_defect(m_) > kStructuralTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > kStructuralTol ||
      std::abs(m_.trace().imag()) > kStructuralTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (min_eigenvalue(m_) < -kStructuralTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  Matrix m = Matrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  Matrix m(psi.dim());
  for (int r = 0; r < psi.dim(); ++r)
    for (int c = 0; c < psi.dim(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  return DensityMatrix(m);
}

Matrix tensor(const Matrix& a, const Matrix& b) { return kron(a, b); }

namespace {

double real_part_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) > kStructuralTol) {
    throw std::invalid_argument(std::string(what) +
                                ": imaginary residue exceeds tolerance "
                                "(operand not Hermitian?)");
  }
  return value.real();
}

}  // namespace

double expectation(const PureState& psi, const Matrix& m) {
  if (m.dim() != psi.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return real_part_checked(inner(psi.amplitudes(), m * psi.amplitudes()),
                           "expectation");
}

double expectation(const DensityMatrix& rho, const Matrix& m) {
  if (m.dim() != rho.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return real_part_checked((rho.matrix() * m).trace(), "expectation");
}

}  // namespace bellsim
