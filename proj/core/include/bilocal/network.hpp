#pragma once

// The three-station entanglement-swapping network. Two independent sources
// each emit a noisy singlet; the middle station performs a noisy Bell-state
// measurement with four outcomes labelled by two bits; the outer stations
// measure one qubit each along configurable Bloch x-z directions.
//
// Qubit layout (big-endian factor order): source 1 feeds qubits 1 and 2,
// source 2 feeds qubits 3 and 4. Alice holds qubit 1, the middle station
// holds qubits 2 and 3, Charlie holds qubit 4.

#include <array>
#include <cstdint>
#include <utility>

#include "bilocal/quantum.hpp"

namespace bilocal {

inline constexpr double kBehaviorEntryFloor = -1e-12;
inline constexpr double kBehaviorSumTol = 1e-9;
inline constexpr double kPovmCompletenessTol = 1e-12;

struct NetworkConfig {
    double v1 = 1.0;        // source 1 singlet visibility
    double v2 = 1.0;        // source 2 singlet visibility
    double w_colored = 0.0; // colored-noise fraction, shared by both sources
    double p_bsm = 1.0;     // Bell-state measurement quality, 1 = projective

    // Throws ConfigError unless all parameters lie in [0,1] and each
    // source satisfies visibility + colored fraction <= 1.
    void validate() const;
};

// Analyzer angles on the Bloch x-z great circle, stored canonically in
// [0, 2pi). The measured observable is cos(a) sigma_z + sin(a) sigma_x.
struct Settings {
    double alpha_a0 = 0.0;
    double alpha_a1 = 0.0;
    double alpha_c0 = 0.0;
    double alpha_c1 = 0.0;

    static double canonical_angle(double alpha);
    Settings canonicalized() const;
};

// One of the four Bell-state outcomes of the middle station, carried both
// as a label and as the two output bits. b0 distinguishes Phi from Psi
// (singlet/triplet parity), b1 carries the +/- phase.
struct BellOutcome {
    BellKind kind = BellKind::PhiPlus;

    int b0() const { return (kind == BellKind::PsiPlus || kind == BellKind::PsiMinus) ? 1 : 0; }
    int b1() const { return (kind == BellKind::PhiMinus || kind == BellKind::PsiMinus) ? 1 : 0; }

    static BellOutcome from_bits(int b0, int b1);
};

// Conditional probability table p(a, b0, b1, c | x, z): 4 settings pairs
// times 16 outcome tuples, stored flat.
struct Behavior {
    static constexpr int kSettingsPairs = 4;
    static constexpr int kOutcomes = 16;
    static constexpr int kCells = 64;

    std::array<double, kCells> table{};

    static int cell_index(int x, int z, int a, int b0, int b1, int c) {
        return (x * 2 + z) * kOutcomes + (a * 8 + b0 * 4 + b1 * 2 + c);
    }

    double& at(int x, int z, int a, int b0, int b1, int c) {
        return table[cell_index(x, z, a, b0, b1, c)];
    }
    double at(int x, int z, int a, int b0, int b1, int c) const {
        return table[cell_index(x, z, a, b0, b1, c)];
    }

    // Checks entry floor, per-setting normalization, and all three
    // no-signaling conditions; throws InvariantError on breach. Exactly
    // computed behaviors satisfy this; raw finite-statistics frequency
    // tables generally do not and are handled without this check.
    void validate() const;
};

// v |Psi-><Psi-| + w (|01><01| + |10><10|)/2 + (1-v-w) I/4.
DensityMatrix source_state(double v, double w);

// Four two-qubit effects indexed by outcome bits b0*2+b1.
struct Povm {
    std::array<ComplexMatrix, 4> effects;

    const ComplexMatrix& effect(const BellOutcome& o) const {
        return effects[o.b0() * 2 + o.b1()];
    }
};

// Bell-state measurement dephased in the computational basis: each Bell
// projector keeps its parity block but its cross coherence is scaled by p.
Povm bsm_povm(double p);

// Exact Born-rule behavior of the full network.
Behavior network_behavior(const NetworkConfig& cfg, const Settings& s);

// State of the outer qubits conditioned on the middle outcome, plus the
// outcome probability P(b). Throws when P(b) <= 1e-12.
std::pair<DensityMatrix, double> swapped_state(const NetworkConfig& cfg,
                                               const BellOutcome& outcome);

// Multinomial counts per settings pair; deterministic given the seed.
struct CountTable {
    std::array<std::array<std::int64_t, Behavior::kOutcomes>, Behavior::kSettingsPairs> counts{};
    std::int64_t shots_per_setting = 0;

    Behavior frequencies() const;
};

CountTable sample_counts(const Behavior& b, std::int64_t shots_per_setting,
                         std::uint64_t seed);

} // namespace bilocal
