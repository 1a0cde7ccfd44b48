#include "bilocal/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bilocal {

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix make2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

ComplexMatrix pauli_x() { return make2(0, 1, 1, 0); }
ComplexMatrix pauli_y() { return make2(0, -kI, kI, 0); }
ComplexMatrix pauli_z() { return make2(1, 0, 0, -1); }

ComplexMatrix identity(int dim) {
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    ComplexMatrix out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i)
        for (Eigen::Index j = 0; j < ac; ++j)
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
        throw InvariantError("density matrix must be square");
    const double herm = hermiticity_defect(mat_);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "density matrix not Hermitian, defect " << herm;
        throw InvariantError(os.str());
    }
    const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
    if (tr_err > kTraceTol) {
        std::ostringstream os;
        os << "density matrix trace differs from 1 by " << tr_err;
        throw InvariantError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        ComplexMatrix((mat_ + mat_.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < kEigenvalueFloor) {
        std::ostringstream os;
        os << "density matrix has eigenvalue " << min_eig;
        throw InvariantError(os.str());
    }
}

Observable::Observable(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
        throw InvariantError("observable must be square");
    const double herm = hermiticity_defect(mat_);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "observable not Hermitian, defect " << herm;
        throw InvariantError(os.str());
    }
    if (dim() == 2) {
        // Single-qubit observables are dichotomic by contract: spectrum {+1,-1}.
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat_, Eigen::EigenvaluesOnly);
        const auto& ev = solver.eigenvalues();
        if (std::abs(ev(0) + 1.0) > kHermitianTol || std::abs(ev(1) - 1.0) > kHermitianTol)
            throw InvariantError("single-qubit observable eigenvalues are not {+1,-1}");
    }
}

ComplexMatrix Observable::outcome_projector(int bit) const {
    if (bit != 0 && bit != 1)
        throw InvariantError("outcome bit must be 0 or 1");
    if (dim() != 2)
        throw InvariantError("outcome_projector implemented for single qubits only");
    // With spectrum {+1,-1} the spectral projectors are (I +/- M)/2.
    const double sign = bit == 0 ? 1.0 : -1.0;
    return (identity(2) + sign * mat_) / 2.0;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<int>& keep,
                            const std::vector<int>& dims) {
    const int n = static_cast<int>(dims.size());
    long long total = 1;
    for (int d : dims) {
        if (d <= 0) throw InvariantError("subsystem dimensions must be positive");
        total *= d;
    }
    if (m.rows() != m.cols() || m.rows() != total)
        throw InvariantError("partial_trace dimension mismatch");
    if (!std::is_sorted(keep.begin(), keep.end()))
        throw InvariantError("keep indices must be sorted ascending");
    for (int k : keep)
        if (k < 0 || k >= n)
            throw InvariantError("keep index out of range");

    std::vector<int> traced;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(keep.begin(), keep.end(), i))
            traced.push_back(i);

    // Big-endian strides: subsystem 0 varies slowest.
    std::vector<long long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i)
        stride[i] = stride[i + 1] * dims[i + 1];

    long long dim_keep = 1;
    for (int k : keep) dim_keep *= dims[k];
    long long dim_traced = 1;
    for (int t : traced) dim_traced *= dims[t];

    // Decompose a flat index over the listed subsystems into a base offset.
    auto offset = [&](const std::vector<int>& subs, long long flat) {
        long long off = 0;
        for (int i = static_cast<int>(subs.size()) - 1; i >= 0; --i) {
            const int s = subs[i];
            off += (flat % dims[s]) * stride[s];
            flat /= dims[s];
        }
        return off;
    };

    ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
    for (long long r = 0; r < dim_keep; ++r) {
        const long long row_base = offset(keep, r);
        for (long long c = 0; c < dim_keep; ++c) {
            const long long col_base = offset(keep, c);
            Complex acc = 0;
            for (long long t = 0; t < dim_traced; ++t) {
                const long long toff = offset(traced, t);
                acc += m(row_base + toff, col_base + toff);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int subsystem) {
    if (m.rows() != 4 || m.cols() != 4)
        throw InvariantError("partial_transpose expects a two-qubit operator");
    if (subsystem != 0 && subsystem != 1)
        throw InvariantError("subsystem must be 0 or 1");
    ComplexMatrix out(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    // rows are (a,b), columns are (c,d); transpose one factor
                    if (subsystem == 0)
                        out(a * 2 + b, c * 2 + d) = m(c * 2 + b, a * 2 + d);
                    else
                        out(a * 2 + b, c * 2 + d) = m(a * 2 + d, c * 2 + b);
                }
    return out;
}

EigenSystem hermitian_eigs(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw InvariantError("hermitian_eigs expects a square matrix");
    const double herm = hermiticity_defect(m);
    if (herm > kEigsHermitianGate) {
        std::ostringstream os;
        os << "hermitian_eigs input defect " << herm << " exceeds gate "
           << kEigsHermitianGate;
        throw InvariantError(os.str());
    }
    const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw InvariantError("eigensolver failed to converge");

    // Eigen reports ascending order; flip to descending.
    const int n = static_cast<int>(m.rows());
    EigenSystem sys;
    sys.values.resize(n);
    sys.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        sys.values(i) = solver.eigenvalues()(n - 1 - i);
        sys.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return sys;
}

Observable bloch_observable(double alpha) {
    return Observable(std::cos(alpha) * pauli_z() + std::sin(alpha) * pauli_x());
}

DensityMatrix bell_state(BellKind kind) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::PhiPlus:  v(0) = r; v(3) = r;  break;
        case BellKind::PhiMinus: v(0) = r; v(3) = -r; break;
        case BellKind::PsiPlus:  v(1) = r; v(2) = r;  break;
        case BellKind::PsiMinus: v(1) = r; v(2) = -r; break;
    }
    return DensityMatrix(v * v.adjoint());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw InvariantError("fidelity dimension mismatch");
    // F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
    EigenSystem es = hermitian_eigs(rho.matrix());
    Eigen::VectorXd roots = es.values.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix sqrt_rho =
        es.vectors * roots.asDiagonal() * es.vectors.adjoint();
    const ComplexMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
    EigenSystem es2 = hermitian_eigs(inner);
    double acc = 0.0;
    for (int i = 0; i < es2.values.size(); ++i)
        acc += std::sqrt(std::max(0.0, es2.values(i)));
    return std::min(1.0, acc * acc);
}

} // namespace bilocal
