#include "bilocal/network.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bilocal/rng.hpp"

namespace bilocal {

namespace {

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << name << " = " << x << " outside [0,1]";
        throw ConfigError(os.str());
    }
}

// Real part of tr(E rho) for Hermitian E: sum of conj(E) .* rho.
double born_probability(const ComplexMatrix& effect, const ComplexMatrix& rho) {
    return effect.conjugate().cwiseProduct(rho).sum().real();
}

} // namespace

void NetworkConfig::validate() const {
    require_unit_interval(v1, "v1");
    require_unit_interval(v2, "v2");
    require_unit_interval(w_colored, "w_colored");
    require_unit_interval(p_bsm, "p_bsm");
    if (v1 + w_colored > 1.0 + 1e-12)
        throw ConfigError("v1 + w_colored exceeds 1");
    if (v2 + w_colored > 1.0 + 1e-12)
        throw ConfigError("v2 + w_colored exceeds 1");
}

double Settings::canonical_angle(double alpha) {
    if (!std::isfinite(alpha))
        throw ConfigError("analyzer angle is not finite");
    const double tau = 2.0 * std::numbers::pi;
    double r = std::fmod(alpha, tau);
    if (r < 0.0) r += tau;
    // fmod can land exactly on tau after the negative correction
    if (r >= tau) r -= tau;
    return r;
}

Settings Settings::canonicalized() const {
    return Settings{canonical_angle(alpha_a0), canonical_angle(alpha_a1),
                    canonical_angle(alpha_c0), canonical_angle(alpha_c1)};
}

BellOutcome BellOutcome::from_bits(int b0, int b1) {
    if ((b0 & ~1) || (b1 & ~1))
        throw InvariantError("Bell outcome bits must be 0 or 1");
    static constexpr BellKind kinds[2][2] = {
        {BellKind::PhiPlus, BellKind::PhiMinus},
        {BellKind::PsiPlus, BellKind::PsiMinus}};
    return BellOutcome{kinds[b0][b1]};
}

void Behavior::validate() const {
    for (int s = 0; s < kSettingsPairs; ++s) {
        double sum = 0.0;
        for (int o = 0; o < kOutcomes; ++o) {
            const double p = table[s * kOutcomes + o];
            if (p < kBehaviorEntryFloor) {
                std::ostringstream os;
                os << "behavior entry " << p << " below floor";
                throw InvariantError(os.str());
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kBehaviorSumTol) {
            std::ostringstream os;
            os << "behavior setting block " << s << " sums to " << sum;
            throw InvariantError(os.str());
        }
    }

    // No-signaling: each station's marginal must not depend on the other
    // stations' inputs.
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            double m[2] = {0.0, 0.0};
            for (int z = 0; z < 2; ++z)
                for (int b0 = 0; b0 < 2; ++b0)
                    for (int b1 = 0; b1 < 2; ++b1)
                        for (int c = 0; c < 2; ++c)
                            m[z] += at(x, z, a, b0, b1, c);
            if (std::abs(m[0] - m[1]) > kBehaviorSumTol)
                throw InvariantError("behavior signals from z to Alice");
        }
    for (int z = 0; z < 2; ++z)
        for (int c = 0; c < 2; ++c) {
            double m[2] = {0.0, 0.0};
            for (int x = 0; x < 2; ++x)
                for (int a = 0; a < 2; ++a)
                    for (int b0 = 0; b0 < 2; ++b0)
                        for (int b1 = 0; b1 < 2; ++b1)
                            m[x] += at(x, z, a, b0, b1, c);
            if (std::abs(m[0] - m[1]) > kBehaviorSumTol)
                throw InvariantError("behavior signals from x to Charlie");
        }
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            double m[4];
            for (int x = 0; x < 2; ++x)
                for (int z = 0; z < 2; ++z) {
                    double acc = 0.0;
                    for (int a = 0; a < 2; ++a)
                        for (int c = 0; c < 2; ++c)
                            acc += at(x, z, a, b0, b1, c);
                    m[x * 2 + z] = acc;
                }
            for (int s = 1; s < 4; ++s)
                if (std::abs(m[s] - m[0]) > kBehaviorSumTol)
                    throw InvariantError("behavior signals to the middle station");
        }
}

DensityMatrix source_state(double v, double w) {
    require_unit_interval(v, "visibility");
    require_unit_interval(w, "colored fraction");
    if (v + w > 1.0 + 1e-12)
        throw ConfigError("visibility + colored fraction exceeds 1");

    ComplexMatrix colored = ComplexMatrix::Zero(4, 4);
    colored(1, 1) = 0.5;
    colored(2, 2) = 0.5;
    const ComplexMatrix m = v * bell_state(BellKind::PsiMinus).matrix() +
                            w * colored +
                            (1.0 - v - w) * identity(4) / 4.0;
    return DensityMatrix(m);
}

Povm bsm_povm(double p) {
    require_unit_interval(p, "p_bsm");

    // Computational-basis dephasing keeps each projector's diagonal pair
    // and scales the off-diagonal coherence by p. Equivalently
    //   M = p |bell><bell| + (1-p) (parity-matched diagonal)/2.
    ComplexMatrix odd = ComplexMatrix::Zero(4, 4);
    odd(1, 1) = 0.5;
    odd(2, 2) = 0.5;
    ComplexMatrix even = ComplexMatrix::Zero(4, 4);
    even(0, 0) = 0.5;
    even(3, 3) = 0.5;

    Povm povm;
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            const BellOutcome o = BellOutcome::from_bits(b0, b1);
            const ComplexMatrix& diag = b0 == 1 ? odd : even;
            povm.effects[b0 * 2 + b1] =
                p * bell_state(o.kind).matrix() + (1.0 - p) * diag;
        }

    ComplexMatrix total = ComplexMatrix::Zero(4, 4);
    for (const auto& e : povm.effects) total += e;
    if ((total - identity(4)).cwiseAbs().maxCoeff() > kPovmCompletenessTol)
        throw InvariantError("BSM effects do not sum to identity");
    return povm;
}

Behavior network_behavior(const NetworkConfig& cfg, const Settings& s) {
    cfg.validate();
    const Settings sc = s.canonicalized();

    const ComplexMatrix rho =
        kron(source_state(cfg.v1, cfg.w_colored).matrix(),
             source_state(cfg.v2, cfg.w_colored).matrix());
    const Povm povm = bsm_povm(cfg.p_bsm);

    const Observable alice[2] = {bloch_observable(sc.alpha_a0),
                                 bloch_observable(sc.alpha_a1)};
    const Observable charlie[2] = {bloch_observable(sc.alpha_c0),
                                   bloch_observable(sc.alpha_c1)};

    Behavior beh;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c) {
                    const ComplexMatrix pa = alice[x].outcome_projector(a);
                    const ComplexMatrix pc = charlie[z].outcome_projector(c);
                    for (int b0 = 0; b0 < 2; ++b0)
                        for (int b1 = 0; b1 < 2; ++b1) {
                            const ComplexMatrix effect = kron(
                                pa, kron(povm.effects[b0 * 2 + b1], pc));
                            beh.at(x, z, a, b0, b1, c) =
                                born_probability(effect, rho);
                        }
                }
    beh.validate();
    return beh;
}

std::pair<DensityMatrix, double> swapped_state(const NetworkConfig& cfg,
                                               const BellOutcome& outcome) {
    cfg.validate();
    const ComplexMatrix rho =
        kron(source_state(cfg.v1, cfg.w_colored).matrix(),
             source_state(cfg.v2, cfg.w_colored).matrix());
    const Povm povm = bsm_povm(cfg.p_bsm);

    const ComplexMatrix projected =
        kron(identity(2), kron(povm.effect(outcome), identity(2))) * rho;
    const double prob = projected.trace().real();
    if (prob <= 1e-12)
        throw InvariantError("conditioning on a zero-probability outcome");

    ComplexMatrix reduced =
        partial_trace(projected, {0, 3}, {2, 2, 2, 2}) / prob;
    // The conditional operator is Hermitian analytically; discard the
    // round-off skew before constructing the state.
    reduced = (reduced + reduced.adjoint()) / 2.0;
    return {DensityMatrix(reduced), prob};
}

Behavior CountTable::frequencies() const {
    if (shots_per_setting <= 0)
        throw InvariantError("count table has no shots");
    Behavior b;
    for (int s = 0; s < Behavior::kSettingsPairs; ++s)
        for (int o = 0; o < Behavior::kOutcomes; ++o)
            b.table[s * Behavior::kOutcomes + o] =
                static_cast<double>(counts[s][o]) /
                static_cast<double>(shots_per_setting);
    return b;
}

CountTable sample_counts(const Behavior& b, std::int64_t shots_per_setting,
                         std::uint64_t seed) {
    if (shots_per_setting <= 0)
        throw ConfigError("shots_per_setting must be positive");

    CountTable table;
    table.shots_per_setting = shots_per_setting;
    for (int s = 0; s < Behavior::kSettingsPairs; ++s) {
        // Independent substream per settings pair so that per-setting
        // results do not shift when other settings are added or removed.
        Rng rng(splitmix64(seed ^ static_cast<std::uint64_t>(s)));
        std::vector<double> weights(Behavior::kOutcomes);
        for (int o = 0; o < Behavior::kOutcomes; ++o)
            weights[o] = std::max(0.0, b.table[s * Behavior::kOutcomes + o]);
        const auto counts = rng.multinomial(shots_per_setting, weights);
        for (int o = 0; o < Behavior::kOutcomes; ++o)
            table.counts[s][o] = counts[o];
    }
    return table;
}

} // namespace bilocal
