#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "bilocal/errors.hpp"
#include "bilocal/metrics.hpp"
#include "bilocal/network.hpp"
#include "bilocal/tomography.hpp"

using namespace bilocal;

namespace {

DensityMatrix werner(double v) {
    const auto singlet = bell_state(BellKind::PsiMinus);
    return DensityMatrix(v * singlet.matrix() +
                         (1.0 - v) * 0.25 * identity(4));
}

ComplexMatrix pauli(int axis) {
    switch (axis) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        default: return pauli_z();
    }
}

double born_probability(const DensityMatrix& rho, int i, int a, int j, int b) {
    const auto proj = [](int axis, int bit) {
        const double sign = bit == 0 ? 1.0 : -1.0;
        return ComplexMatrix(0.5 * (identity(2) + sign * pauli(axis)));
    };
    const ComplexMatrix e = kron(proj(i, a), proj(j, b));
    return e.conjugate().cwiseProduct(rho.matrix()).sum().real();
}

// counts table holding the exact outcome distribution of a state whose
// Born probabilities are dyadic rationals
TomographyCounts exact_counts(const DensityMatrix& rho, std::int64_t shots) {
    TomographyCounts tc;
    tc.shots_per_setting = shots;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    tc.counts[i * 3 + j][a * 2 + b] = std::llround(
                        born_probability(rho, i, a, j, b) * shots);
    tc.validate();
    return tc;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double pauli_component(const ComplexMatrix& rho, int i, int j) {
    return (kron(pauli(i), pauli(j)).conjugate().cwiseProduct(rho))
        .sum()
        .real();
}

} // namespace

TEST_CASE("deterministic settings land every shot in one bucket") {
    const DensityMatrix zz(
        (ComplexMatrix(4, 4) << 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
            .finished());
    const auto tc = simulate_tomography(zz, 5000, 7);
    // setting (z,z) sits at index 8; |00> always reads (+1,+1)
    CHECK(tc.counts[8][0] == 5000);
    CHECK(tc.counts[8][1] == 0);
    CHECK(tc.counts[8][2] == 0);
    CHECK(tc.counts[8][3] == 0);

    const auto sc = simulate_tomography(bell_state(BellKind::PsiMinus), 5000, 7);
    // the singlet anticorrelates along every common axis
    CHECK(sc.counts[8][0] == 0);
    CHECK(sc.counts[8][3] == 0);
    CHECK(sc.counts[8][1] + sc.counts[8][2] == 5000);
}

TEST_CASE("cross-axis singlet statistics are uniform") {
    const std::int64_t shots = 40000;
    const auto tc = simulate_tomography(bell_state(BellKind::PsiMinus), shots, 99);
    // setting (x,y): all four outcomes carry probability 1/4
    const double sigma = std::sqrt(shots * 0.25 * 0.75);
    for (int o = 0; o < 4; ++o)
        CHECK(std::abs(tc.counts[1][o] - shots / 4.0) < 5.0 * sigma);
}

TEST_CASE("sampling is reproducible and seed-sensitive") {
    const auto rho = werner(0.8);
    const auto a = simulate_tomography(rho, 2000, 4242);
    const auto b = simulate_tomography(rho, 2000, 4242);
    CHECK(a.counts == b.counts);

    const auto c = simulate_tomography(rho, 2000, 4243);
    CHECK(a.counts != c.counts);

    CHECK_THROWS_AS(simulate_tomography(rho, 0, 1), ConfigError);
}

TEST_CASE("count tables reject impossible entries") {
    auto tc = simulate_tomography(werner(0.5), 1000, 3);
    tc.validate();

    auto broken = tc;
    broken.counts[4][0] += 1; // sum no longer matches
    CHECK_THROWS_AS(broken.validate(), InvariantError);

    broken = tc;
    broken.counts[2][1] = -1;
    broken.counts[2][0] += tc.counts[2][1] + 1;
    CHECK_THROWS_AS(broken.validate(), InvariantError);

    broken = tc;
    broken.shots_per_setting = 0;
    CHECK_THROWS_AS(broken.validate(), InvariantError);
}

TEST_CASE("inversion recovers states exactly from exact statistics") {
    // all four fixtures have dyadic Born probabilities, so the scaled
    // counts are exact integers and inversion error is pure float noise
    std::vector<DensityMatrix> states;
    states.push_back(bell_state(BellKind::PsiMinus));
    states.push_back(DensityMatrix(
        (ComplexMatrix(4, 4) << 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
            .finished()));
    states.push_back(werner(0.5));
    ComplexMatrix yplus = 0.5 * (identity(2) + pauli_y());
    ComplexMatrix zero = 0.5 * (identity(2) + pauli_z());
    states.push_back(DensityMatrix(kron(yplus, zero)));

    for (const auto& rho : states) {
        const auto tc = exact_counts(rho, std::int64_t(1) << 20);
        const ComplexMatrix rehat = linear_inversion(tc);
        CHECK(max_abs_diff(rehat, rho.matrix()) < 1e-10);
    }
}

TEST_CASE("reconstruction of the singlet is faithful at realistic statistics") {
    const auto singlet = bell_state(BellKind::PsiMinus);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto tc = simulate_tomography(singlet, 100000, seed);
        const DensityMatrix rec = project_physical(linear_inversion(tc));
        CHECK(fidelity(rec, singlet) > 0.99);
    }
}

TEST_CASE("correlation estimates are unbiased") {
    const std::int64_t shots = 4096;
    const int n_seeds = 16;
    const double band = 5.0 / std::sqrt(static_cast<double>(shots) * n_seeds);

    SUBCASE("white noise has vanishing components") {
        const DensityMatrix mixed(0.25 * identity(4));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double mean = 0.0;
                for (int seed = 0; seed < n_seeds; ++seed) {
                    const auto tc = simulate_tomography(mixed, shots, 1000 + seed);
                    mean += pauli_component(linear_inversion(tc), i, j) / n_seeds;
                }
                CHECK(std::abs(mean) < band);
            }
    }

    SUBCASE("a structured swap output is estimated without offset") {
        NetworkConfig cfg;
        cfg.v1 = 0.95;
        cfg.v2 = 0.9;
        cfg.w_colored = 0.0;
        cfg.p_bsm = 0.8;
        const auto [rho, prob] = swapped_state(cfg, BellOutcome{BellKind::PsiMinus});
        CHECK(prob > 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double truth = pauli_component(rho.matrix(), i, j);
                double mean = 0.0;
                for (int seed = 0; seed < n_seeds; ++seed) {
                    const auto tc = simulate_tomography(rho, shots, 9000 + seed);
                    mean += pauli_component(linear_inversion(tc), i, j) / n_seeds;
                }
                CHECK(std::abs(mean - truth) < band);
            }
    }
}

TEST_CASE("physical projection clips spectra the documented way") {
    SUBCASE("physical states pass through untouched") {
        const auto rho = werner(0.6);
        const DensityMatrix out = project_physical(rho.matrix());
        CHECK(max_abs_diff(out.matrix(), rho.matrix()) < 1e-12);
    }

    SUBCASE("single clip spreads the deficit over the positive pair") {
        ComplexMatrix m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = 0.6;
        m(1, 1) = 0.6;
        m(2, 2) = 0.0;
        m(3, 3) = -0.2;
        const DensityMatrix out = project_physical(m);
        ComplexMatrix want = ComplexMatrix::Zero(4, 4);
        want(0, 0) = 0.5;
        want(1, 1) = 0.5;
        CHECK(max_abs_diff(out.matrix(), want) < 1e-12);
    }

    SUBCASE("a small positive eigenvalue can be dragged under and clipped too") {
        ComplexMatrix m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = 0.9;
        m(1, 1) = 0.18;
        m(2, 2) = 0.02;
        m(3, 3) = -0.1;
        const auto es = hermitian_eigs(project_physical(m).matrix());
        CHECK(es.values[0] == doctest::Approx(0.86).epsilon(1e-9));
        CHECK(es.values[1] == doctest::Approx(0.14).epsilon(1e-9));
        CHECK(es.values[2] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(es.values[3] == doctest::Approx(0.0).epsilon(1e-9));
    }

    SUBCASE("malformed inputs are rejected") {
        ComplexMatrix bad = ComplexMatrix::Zero(4, 4);
        bad(0, 0) = 1.0;
        bad(0, 3) = Complex(0.0, 0.3);
        CHECK_THROWS_AS(project_physical(bad), InvariantError);

        CHECK_THROWS_AS(project_physical(ComplexMatrix(0.9 * identity(4) / 4.0)),
                        InvariantError);
    }
}

TEST_CASE("spectrum error shrinks with the shot budget") {
    NetworkConfig cfg;
    cfg.v1 = cfg.v2 = 0.95;
    cfg.p_bsm = 0.7;
    const auto [rho, prob] = swapped_state(cfg, BellOutcome{BellKind::PsiMinus});
    const double truth = horodecki_max_chsh(rho);

    std::array<double, 3> rms{};
    const std::array<std::int64_t, 3> budgets = {1000, 10000, 100000};
    const int n_seeds = 6;
    for (std::size_t k = 0; k < budgets.size(); ++k) {
        double acc = 0.0;
        for (int seed = 0; seed < n_seeds; ++seed) {
            const auto tc = simulate_tomography(rho, budgets[k], 500 + seed);
            const DensityMatrix rec = project_physical(linear_inversion(tc));
            const double err = horodecki_max_chsh(rec) - truth;
            acc += err * err;
        }
        rms[k] = std::sqrt(acc / n_seeds);
    }
    CHECK(rms[0] > rms[1]);
    CHECK(rms[1] > rms[2]);
}
