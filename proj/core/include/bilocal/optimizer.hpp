#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bilocal/network.hpp"

namespace bilocal {

struct OptimizationResult {
    Settings best;
    double best_b = 0.0;
    // (evaluation round, best value seen so far); nondecreasing in both
    std::vector<std::pair<int, double>> trace;
};

// The half-wave-plate settings used for all fixed-angle runs.
Settings fixed_settings();

// Maximize the swap correlation strength over the four analyzer angles.
// A coarse grid seeds local simplex refinements; the fixed settings are
// always kept in the candidate pool, so the result never loses to them.
OptimizationResult optimize_settings(const NetworkConfig& cfg, int restarts,
                                     std::uint64_t seed);

} // namespace bilocal
