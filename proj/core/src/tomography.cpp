#include "bilocal/tomography.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bilocal/errors.hpp"
#include "bilocal/rng.hpp"

namespace bilocal {

namespace {

const std::array<ComplexMatrix, 3>& pauli_axes() {
    static const std::array<ComplexMatrix, 3> axes = {pauli_x(), pauli_y(),
                                                      pauli_z()};
    return axes;
}

// projector onto the (-1)^bit eigenspace of a Pauli axis
ComplexMatrix axis_projector(int axis, int bit) {
    const double sign = bit == 0 ? 1.0 : -1.0;
    return 0.5 * (identity(2) + sign * pauli_axes()[axis]);
}

double born(const ComplexMatrix& effect, const ComplexMatrix& rho) {
    return effect.conjugate().cwiseProduct(rho).sum().real();
}

} // namespace

void TomographyCounts::validate() const {
    if (shots_per_setting <= 0)
        throw InvariantError("tomography counts need at least one shot");
    for (int s = 0; s < kSettings; ++s) {
        std::int64_t sum = 0;
        for (int o = 0; o < kOutcomes; ++o) {
            if (counts[s][o] < 0)
                throw InvariantError("negative tomography count in setting " +
                                     std::to_string(s));
            sum += counts[s][o];
        }
        if (sum != shots_per_setting)
            throw InvariantError("tomography counts for setting " +
                                 std::to_string(s) +
                                 " do not add up to the shot budget");
    }
}

TomographyCounts simulate_tomography(const DensityMatrix& rho,
                                     std::int64_t shots, std::uint64_t seed) {
    if (shots <= 0) throw ConfigError("tomography needs shots >= 1");
    if (rho.matrix().rows() != 4)
        throw InvariantError("tomography expects a two-qubit state");

    TomographyCounts tc;
    tc.shots_per_setting = shots;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int s = i * 3 + j;
            std::vector<double> probs(TomographyCounts::kOutcomes);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const ComplexMatrix effect =
                        kron(axis_projector(i, a), axis_projector(j, b));
                    probs[a * 2 + b] =
                        std::max(0.0, born(effect, rho.matrix()));
                }
            Rng rng(splitmix64(seed ^ static_cast<std::uint64_t>(s)));
            const auto draw = rng.multinomial(shots, probs);
            for (int o = 0; o < TomographyCounts::kOutcomes; ++o)
                tc.counts[s][o] = draw[o];
        }
    return tc;
}

ComplexMatrix linear_inversion(const TomographyCounts& counts) {
    counts.validate();
    const double shots = static_cast<double>(counts.shots_per_setting);

    // full correlations plus per-side means within each setting
    double corr[3][3], mean_a[3][3], mean_b[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int s = i * 3 + j;
            corr[i][j] = mean_a[i][j] = mean_b[i][j] = 0.0;
            for (int o = 0; o < TomographyCounts::kOutcomes; ++o) {
                const double f = counts.counts[s][o] / shots;
                const double sa = (o & 2) ? -1.0 : 1.0;
                const double sb = (o & 1) ? -1.0 : 1.0;
                corr[i][j] += sa * sb * f;
                mean_a[i][j] += sa * f;
                mean_b[i][j] += sb * f;
            }
        }

    ComplexMatrix rho = kron(identity(2), identity(2));
    for (int i = 0; i < 3; ++i) {
        // local components: every setting measures both marginals, so
        // average the three independent estimates
        double ta = 0.0, tb = 0.0;
        for (int j = 0; j < 3; ++j) {
            ta += mean_a[i][j] / 3.0;
            tb += mean_b[j][i] / 3.0;
        }
        rho += ta * kron(pauli_axes()[i], identity(2));
        rho += tb * kron(identity(2), pauli_axes()[i]);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rho += corr[i][j] * kron(pauli_axes()[i], pauli_axes()[j]);
    return 0.25 * rho;
}

DensityMatrix project_physical(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw InvariantError("projection needs a square matrix");
    if (hermiticity_defect(m) > kEigsHermitianGate)
        throw InvariantError("projection input is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > kTraceTol)
        throw InvariantError("projection input must have unit trace");

    EigenSystem es = hermitian_eigs(m);
    auto& lam = es.values;

    // clip from the bottom, handing each removed deficit to the
    // eigenvalues that are still positive; trace stays exactly 1
    while (true) {
        int worst = -1;
        for (int k = 0; k < lam.size(); ++k)
            if (lam[k] < 0 && (worst < 0 || lam[k] < lam[worst])) worst = k;
        if (worst < 0) break;

        const double deficit = lam[worst];
        lam[worst] = 0.0;
        std::vector<int> positive;
        for (int k = 0; k < lam.size(); ++k)
            if (lam[k] > 0) positive.push_back(k);
        if (positive.empty())
            throw InvariantError("clipping exhausted all positive weight");
        for (int k : positive)
            lam[k] += deficit / static_cast<double>(positive.size());
    }

    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (int k = 0; k < lam.size(); ++k)
        out += lam[k] * es.vectors.col(k) * es.vectors.col(k).adjoint();
    out = 0.5 * (out + out.adjoint().eval());
    return DensityMatrix(out);
}

} // namespace bilocal
