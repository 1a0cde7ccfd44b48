#pragma once

#include <array>
#include <cstdint>

#include "bilocal/quantum.hpp"

namespace bilocal {

// Complete two-qubit tomography over the nine product settings built
// from the Pauli axes {x, y, z} on each side. Settings are indexed
// i * 3 + j; outcome pairs are indexed a * 2 + b where bit 0 stands for
// the +1 eigenvalue and bit 1 for -1.
struct TomographyCounts {
    static constexpr int kSettings = 9;
    static constexpr int kOutcomes = 4;

    std::array<std::array<std::int64_t, kOutcomes>, kSettings> counts{};
    std::int64_t shots_per_setting = 0;

    void validate() const;
};

// Multinomial draws from the Born probabilities of each projector pair,
// one independent substream per setting.
TomographyCounts simulate_tomography(const DensityMatrix& rho,
                                     std::int64_t shots, std::uint64_t seed);

// Correlation-tensor estimate; Hermitian with unit trace but possibly
// indefinite at finite statistics.
ComplexMatrix linear_inversion(const TomographyCounts& counts);

// Nearest physical state under the trace-preserving clipping rule:
// repeatedly zero the most negative eigenvalue and spread its mass
// uniformly over the eigenvalues still positive.
DensityMatrix project_physical(const ComplexMatrix& m);

} // namespace bilocal

