// Microbenchmarks for the hot paths: the Born-rule behavior pipeline,
// spectral routines, exact membership, inequality scoring, sampling, and
// the tomography reconstruction chain.

#include <benchmark/benchmark.h>

#include "bilocal/harness.hpp"
#include "bilocal/metrics.hpp"
#include "bilocal/network.hpp"
#include "bilocal/optimizer.hpp"
#include "bilocal/polytope.hpp"
#include "bilocal/quantum.hpp"
#include "bilocal/tomography.hpp"

namespace {

using namespace bilocal;

NetworkConfig noisy_config() {
    NetworkConfig cfg;
    cfg.v1 = 0.95;
    cfg.v2 = 0.93;
    cfg.w_colored = 0.02;
    cfg.p_bsm = 0.8;
    return cfg;
}

void BM_NetworkBehavior(benchmark::State& state) {
    const NetworkConfig cfg = noisy_config();
    const Settings s = fixed_settings();
    for (auto _ : state)
        benchmark::DoNotOptimize(network_behavior(cfg, s));
}
BENCHMARK(BM_NetworkBehavior);

void BM_BilocalReport(benchmark::State& state) {
    const Behavior b = network_behavior(noisy_config(), fixed_settings());
    for (auto _ : state)
        benchmark::DoNotOptimize(bilocal_report(correlators(b)));
}
BENCHMARK(BM_BilocalReport);

void BM_SwappedStateMetrics(benchmark::State& state) {
    const NetworkConfig cfg = noisy_config();
    for (auto _ : state) {
        const auto [rho, prob] = swapped_state(cfg, BellOutcome::from_bits(1, 1));
        benchmark::DoNotOptimize(prob);
        benchmark::DoNotOptimize(horodecki_max_chsh(rho));
        benchmark::DoNotOptimize(ppt_negativity(rho));
    }
}
BENCHMARK(BM_SwappedStateMetrics);

void BM_HermitianEigs(benchmark::State& state) {
    const DensityMatrix rho = source_state(0.9, 0.05);
    for (auto _ : state)
        benchmark::DoNotOptimize(hermitian_eigs(rho.matrix()));
}
BENCHMARK(BM_HermitianEigs);

void BM_InequalityScores(benchmark::State& state) {
    const Behavior b = network_behavior(noisy_config(), fixed_settings());
    std::vector<InequalityVector> nontrivial;
    for (const auto& f : facet_enumeration())
        if (f.tag == FacetTag::nontrivial) nontrivial.push_back(f);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_inequalities(b, nontrivial));
}
BENCHMARK(BM_InequalityScores);

void BM_LpMembership(benchmark::State& state) {
    const Behavior b = network_behavior(noisy_config(), fixed_settings());
    for (auto _ : state)
        benchmark::DoNotOptimize(lp_membership(b));
}
BENCHMARK(BM_LpMembership);

void BM_FacetEnumeration(benchmark::State& state) {
    // Bypasses the cache: enumerates conv(vertices) from scratch.
    std::vector<RationalVector> points;
    for (const auto& v : lhv_vertices()) {
        RationalVector pt(Behavior::kCells);
        for (int i = 0; i < Behavior::kCells; ++i)
            pt[i] = Rational(static_cast<long>(v.table[i]));
        points.push_back(std::move(pt));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_facets_of(points));
}
BENCHMARK(BM_FacetEnumeration)->Unit(benchmark::kMillisecond);

void BM_SampleCounts(benchmark::State& state) {
    const Behavior b = network_behavior(noisy_config(), fixed_settings());
    const std::int64_t shots = state.range(0);
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_counts(b, shots, seed++));
    state.SetItemsProcessed(state.iterations() * shots * 4);
}
BENCHMARK(BM_SampleCounts)->Arg(1000)->Arg(100000);

void BM_TomographyPipeline(benchmark::State& state) {
    const auto [rho, prob] =
        swapped_state(noisy_config(), BellOutcome::from_bits(1, 1));
    benchmark::DoNotOptimize(prob);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const TomographyCounts counts = simulate_tomography(rho, 4096, seed++);
        benchmark::DoNotOptimize(project_physical(linear_inversion(counts)));
    }
}
BENCHMARK(BM_TomographyPipeline)->Unit(benchmark::kMicrosecond);

void BM_OptimizeSettings(benchmark::State& state) {
    const NetworkConfig cfg = noisy_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_settings(cfg, 1, 7));
}
BENCHMARK(BM_OptimizeSettings)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
