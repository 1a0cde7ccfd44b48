#pragma once

// Dense complex linear algebra for 1 to 4 qubits: states, observables,
// tensor products, partial trace/transpose, Hermitian spectra.
//
// Conventions used throughout the library:
//   * subsystem 1 is the leftmost tensor factor;
//   * the computational basis index is big-endian over qubits, so for a
//     4-qubit operator the row index is q1*8 + q2*4 + q3*2 + q4.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bilocal/errors.hpp"

namespace bilocal {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Structural tolerances. All arithmetic is double precision on matrices of
// dimension at most 16, where these bounds are comfortable.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kEigsHermitianGate = 1e-8;

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity(int dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Maximum absolute deviation from Hermitian symmetry, max_ij |m - m^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

// A positive unit-trace Hermitian operator. The constructor validates all
// three properties and throws InvariantError on breach, so a held value can
// be trusted downstream without re-checking.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

private:
    ComplexMatrix mat_;
};

// A Hermitian operator with outcomes labelled by eigenvalue sign. Outcome
// bit t corresponds to the eigenvalue (-1)^t, so bit 0 is the +1 outcome.
class Observable {
public:
    explicit Observable(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    // Spectral projector onto the +1 (bit=0) or -1 (bit=1) eigenspace.
    // Requires eigenvalues in {+1,-1}; checked at construction for dim 2.
    ComplexMatrix outcome_projector(int bit) const;

private:
    ComplexMatrix mat_;
};

// Trace out all subsystems not listed in `keep` (0-based indices into
// `dims`). `keep` must be sorted ascending; the kept factors preserve their
// relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<int>& keep,
                            const std::vector<int>& dims);

// Transpose of one factor of a two-qubit operator. subsystem is 0 or 1.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int subsystem);

struct EigenSystem {
    Eigen::VectorXd values;  // sorted descending
    ComplexMatrix vectors;   // column k pairs with values[k]
};

// Spectral decomposition of a Hermitian matrix. Rejects inputs whose
// Hermiticity defect exceeds kEigsHermitianGate; symmetrizes the remainder
// before solving so the output system is exactly real.
EigenSystem hermitian_eigs(const ComplexMatrix& m);

// cos(alpha) sigma_z + sin(alpha) sigma_x: the measurement family reachable
// with a half-wave plate, covering the x-z great circle of the Bloch sphere.
Observable bloch_observable(double alpha);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Projector onto one of the four maximally entangled two-qubit states.
DensityMatrix bell_state(BellKind kind);

// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
// in [0,1], equal to 1 iff the states coincide.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

} // namespace bilocal
