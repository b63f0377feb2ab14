// States, spin projectors and expectation values for one and two qubits.
// Basis convention, fixed everywhere: matrices are written in the z
// eigenbasis; the two-qubit product basis is ordered
// |+,+>, |+,->, |-,+>, |-,-> along z.

#pragma once

#include "bellsim/direction.hpp"
#include "bellsim/linalg.hpp"

namespace bellsim {

// Tolerance for structural checks (Hermiticity, normalization, PSD).
inline constexpr double kStructuralTol = 1e-9;

const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();

// Rank-1 projector onto the spin-(sign) eigenstate along n:
// P = (I + sign * n.sigma) / 2.  sign must be +1 or -1.
Matrix projector_from_direction(const Direction& n, int sign);

// Normalized pure state of dimension 2 or 4.
class PureState {
 public:
  explicit PureState(Vector amplitudes);  // throws unless ||amplitudes|| = 1

  int dim() const { return amplitudes_.dim(); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  Vector amplitudes_;
};

// Two-qubit singlet (|+,-> - |-,+>)/sqrt(2).
PureState singlet();

// Density matrix of dimension 2 or 4: Hermitian, unit trace, PSD.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);  // validates all three invariants

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix pure(const PureState& psi);

  int dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Kronecker product of single-qubit operators into the fixed product basis.
Matrix tensor(const Matrix& a, const Matrix& b);

// <psi|M|psi> resp. Tr(rho M) for Hermitian M. The imaginary residue is
// checked against kStructuralTol and discarded; a larger residue means a
// non-Hermitian operand and raises.
double expectation(const PureState& psi, const Matrix& m);
double expectation(const DensityMatrix& rho, const Matrix& m);

}  // namespace bellsim
