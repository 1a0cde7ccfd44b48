#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bilocal/network.hpp"
#include "bilocal/optimizer.hpp"

namespace bilocal {

enum class RunMode { sweep, facets, membership, tomo, optimize, fig3, fig4a, fig4b };
enum class SettingsMode { fixed, optimized };

// Inclusive scan range; a scalar parameter is a range with start == stop.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

// One experiment description, assembled from defaults, an optional
// key = value config file, and command-line overrides in that order.
struct ExperimentConfig {
    RunMode mode = RunMode::sweep;
    Range p{0.0, 1.0, 0.1};
    Range v1{1.0, 1.0, 1.0};
    Range v2{1.0, 1.0, 1.0};
    Range w{0.0, 0.0, 1.0};
    std::int64_t shots = 0; // 0 means exact Born statistics
    std::uint64_t seed = 12345;
    SettingsMode settings = SettingsMode::fixed;
    std::string out;         // empty: compute only, write nothing
    std::string facets_path; // nonempty: load inequalities instead of computing

    void validate() const;
};

// Set one config field from its textual form. Ranges accept either a
// scalar ("0.5") or "start:stop:step". Throws ConfigError with the field
// name on any malformed value or unknown key.
void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

// Parse a flat key = value file ('#' starts a comment). Errors carry
// file and line positions.
ExperimentConfig load_config_file(const std::string& path);

std::vector<double> grid_of(const Range& r);

// One row of the main scan output. When shots == 0 the estimates are the
// exact Born values and every sigma is zero; otherwise they come from
// sampled counts with bootstrap resampling errors.
struct SweepRecord {
    double p = 0, v1 = 0, v2 = 0, w = 0;
    SettingsMode settings = SettingsMode::fixed;
    double i_corr = 0, j_corr = 0, b_value = 0, lhv_linear = 0;
    double max_facet_score = 0;
    double swap_chsh = 0, swap_negativity = 0;
    double sigma_i = 0, sigma_j = 0, sigma_b = 0;
};

// The number of bootstrap resamples behind each sigma column.
inline constexpr int kBootstrapResamples = 200;

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg);

// Both analyzer modes over the same grid, fixed rows first.
std::vector<SweepRecord> run_fig3(const ExperimentConfig& cfg);

struct Fig4aRecord {
    double p = 0, v1 = 0, v2 = 0, w = 0;
    double b_value = 0;
    std::vector<double> scores; // one per nontrivial inequality
    bool any_positive = false;
};

std::vector<Fig4aRecord> run_fig4a(const ExperimentConfig& cfg);

struct Fig4bRecord {
    double p = 0, v1 = 0, v2 = 0, w = 0;
    double b_value = 0;
    double max_chsh = 0;
    double negativity = 0;
    bool entangled = false;
    std::string region; // none | bilocal_only | chsh_only | both
};

std::vector<Fig4bRecord> run_fig4b(const ExperimentConfig& cfg);

struct FacetsSummary {
    int positivity = 0;
    int nontrivial = 0;
    int affine_dim = 0;
};

// Enumerate (or load) the inequality description; with an output path,
// write the nontrivial inequalities in the tab-separated exchange format.
FacetsSummary run_facets(const ExperimentConfig& cfg);

struct MembershipSummary {
    bool feasible = false;
    bool feasible_relaxed = false;
    double max_facet_score = 0;
    bool has_certificate = false;
};

// Decide the config point's behavior against the strategy polytope.
MembershipSummary run_membership(const ExperimentConfig& cfg);

struct TomoSummary {
    double fidelity_vs_exact = 0;
    double chsh_exact = 0;
    double chsh_reconstructed = 0;
    double negativity_exact = 0;
    double negativity_reconstructed = 0;
};

// Simulated tomography of the conditioned swap output at the config point.
TomoSummary run_tomo(const ExperimentConfig& cfg);

struct OptimizeSummary {
    OptimizationResult result;
    double baseline_b = 0;
};

OptimizeSummary run_optimize(const ExperimentConfig& cfg);

} // namespace bilocal
