#include "bilocal/metrics.hpp"

#include <cmath>

namespace bilocal {

CorrelatorSet correlators(const Behavior& b) {
    CorrelatorSet c;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int y = 0; y < 2; ++y) {
                double acc = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b0 = 0; b0 < 2; ++b0)
                        for (int b1 = 0; b1 < 2; ++b1)
                            for (int ch = 0; ch < 2; ++ch) {
                                const int by = y == 0 ? b0 : b1;
                                const int sign = ((a + by + ch) & 1) ? -1 : 1;
                                acc += sign * b.at(x, z, a, b0, b1, ch);
                            }
                c.value[x][y][z] = acc;
            }
    return c;
}

BilocalReport bilocal_report(const CorrelatorSet& c) {
    BilocalReport r;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            r.i_corr += c.value[x][0][z] / 4.0;
            const int sign = ((x + z) & 1) ? -1 : 1;
            r.j_corr += sign * c.value[x][1][z] / 4.0;
        }
    r.b_value = std::sqrt(std::abs(r.i_corr)) + std::sqrt(std::abs(r.j_corr));
    r.lhv_linear = std::abs(r.i_corr) + std::abs(r.j_corr);
    return r;
}

double chsh_value(const PairCorrelators& corr) {
    double best = 0.0;
    // Place the minus sign on each of the four terms in turn; the global
    // sign is absorbed by the absolute value.
    for (int m = 0; m < 4; ++m) {
        double s = 0.0;
        for (int t = 0; t < 4; ++t)
            s += (t == m ? -1.0 : 1.0) * corr[t];
        best = std::max(best, std::abs(s));
    }
    return best;
}

double chsh_value(const DensityMatrix& rho,
                  const std::array<double, 2>& alice_alphas,
                  const std::array<double, 2>& charlie_alphas) {
    if (rho.dim() != 4)
        throw InvariantError("chsh_value expects a two-qubit state");
    PairCorrelators corr;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            const ComplexMatrix op =
                kron(bloch_observable(alice_alphas[x]).matrix(),
                     bloch_observable(charlie_alphas[z]).matrix());
            corr[x * 2 + z] = (op * rho.matrix()).trace().real();
        }
    return chsh_value(corr);
}

PairCorrelators conditional_pair_correlators(const Behavior& b,
                                             const BellOutcome& outcome) {
    PairCorrelators corr{};
    const int b0 = outcome.b0(), b1 = outcome.b1();
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            double norm = 0.0, acc = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c) {
                    const double p = b.at(x, z, a, b0, b1, c);
                    norm += p;
                    acc += (((a + c) & 1) ? -1.0 : 1.0) * p;
                }
            if (norm <= 1e-12)
                throw InvariantError("conditioning on a zero-probability outcome");
            corr[x * 2 + z] = acc / norm;
        }
    return corr;
}

double horodecki_max_chsh(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw InvariantError("horodecki_max_chsh expects a two-qubit state");
    const ComplexMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t(i, j) =
                (kron(paulis[i], paulis[j]) * rho.matrix()).trace().real();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t,
                                                          Eigen::EigenvaluesOnly);
    const auto& u = solver.eigenvalues(); // ascending
    return 2.0 * std::sqrt(std::max(0.0, u(1) + u(2)));
}

double ppt_negativity(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw InvariantError("ppt_negativity expects a two-qubit state");
    const EigenSystem es = hermitian_eigs(partial_transpose(rho.matrix(), 1));
    double acc = 0.0;
    for (int i = 0; i < es.values.size(); ++i)
        if (es.values(i) < 0.0) acc -= es.values(i);
    return acc;
}

} // namespace bilocal
