// Command-line front end. Every run is one mode over one experiment
// config; flags override config-file keys of the same name. Exit codes:
// 0 success, 1 bad configuration, 2 I/O failure, 3 violated invariant.

#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bilocal/errors.hpp"
#include "bilocal/harness.hpp"

namespace {

using bilocal::ExperimentConfig;
using bilocal::RunMode;

struct ModeSpec {
    const char* name;
    RunMode mode;
    const char* help;
};

constexpr ModeSpec kModes[] = {
    {"sweep", RunMode::sweep, "Scan the parameter grid with one analyzer mode"},
    {"facets", RunMode::facets, "Enumerate or load the inequality description"},
    {"membership", RunMode::membership,
     "Exact polytope membership of the config-point behavior"},
    {"tomo", RunMode::tomo, "Simulated tomography of the conditioned swap output"},
    {"optimize", RunMode::optimize, "Search analyzer angles at the config point"},
    {"fig3", RunMode::fig3, "Fixed and optimized scans stacked over one grid"},
    {"fig4a", RunMode::fig4a, "Inequality score matrix across the grid"},
    {"fig4b", RunMode::fig4b,
     "Nonlinear value against the swap output's pair correlations"},
};

// Flag values are kept textual and pushed through the same assignment
// path as config-file keys, so both agree on syntax and validation.
struct PendingConfig {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> assignments;
};

void add_common_flags(CLI::App* sub, PendingConfig& pending) {
    sub->add_option("--config", pending.config_path,
                    "Flat key = value config file");
    const std::pair<const char*, const char*> keys[] = {
        {"--p", "Swap quality, scalar or start:stop:step"},
        {"--v1", "Source 1 visibility, scalar or range"},
        {"--v2", "Source 2 visibility, scalar or range"},
        {"--w", "Colored-noise fraction, scalar or range"},
        {"--shots", "Shots per setting, 0 for exact statistics"},
        {"--seed", "Base seed for every sampled quantity"},
        {"--settings", "Analyzer mode: fixed or optimized"},
        {"--out", "Output path (CSV modes also write <out>.json)"},
        {"--facets", "Inequality file to load instead of computing"},
    };
    for (const auto& [flag, help] : keys) {
        const std::string key = flag + 2; // strip leading dashes
        sub->add_option_function<std::string>(
            flag,
            [&pending, key](const std::string& value) {
                pending.assignments.emplace_back(key, value);
            },
            help);
    }
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

void print_scan(const std::vector<bilocal::SweepRecord>& recs) {
    for (const auto& r : recs)
        std::printf("p=%.9g v1=%.9g v2=%.9g w=%.9g settings=%s "
                    "b=%.9g lhv=%.9g score=%.9g chsh=%.9g\n",
                    r.p, r.v1, r.v2, r.w,
                    r.settings == bilocal::SettingsMode::fixed ? "fixed"
                                                               : "optimized",
                    r.b_value, r.lhv_linear, r.max_facet_score, r.swap_chsh);
    std::printf("rows: %zu\n", recs.size());
}

int run(const ModeSpec& spec, const ExperimentConfig& cfg) {
    switch (spec.mode) {
    case RunMode::sweep:
        print_scan(bilocal::run_sweep(cfg));
        break;
    case RunMode::fig3:
        print_scan(bilocal::run_fig3(cfg));
        break;
    case RunMode::facets: {
        const auto s = bilocal::run_facets(cfg);
        std::printf("positivity=%d nontrivial=%d affine_dim=%d\n",
                    s.positivity, s.nontrivial, s.affine_dim);
        break;
    }
    case RunMode::membership: {
        const auto s = bilocal::run_membership(cfg);
        std::printf("feasible=%s relaxed_feasible=%s max_score=%.9g "
                    "certificate=%s\n",
                    yesno(s.feasible), yesno(s.feasible_relaxed),
                    s.max_facet_score, yesno(s.has_certificate));
        break;
    }
    case RunMode::tomo: {
        const auto s = bilocal::run_tomo(cfg);
        std::printf("fidelity=%.9g chsh_exact=%.9g chsh_reconstructed=%.9g "
                    "negativity_exact=%.9g negativity_reconstructed=%.9g\n",
                    s.fidelity_vs_exact, s.chsh_exact, s.chsh_reconstructed,
                    s.negativity_exact, s.negativity_reconstructed);
        break;
    }
    case RunMode::optimize: {
        const auto s = bilocal::run_optimize(cfg);
        const auto& b = s.result.best;
        std::printf("baseline_b=%.9g best_b=%.9g angles=%.9g,%.9g,%.9g,%.9g\n",
                    s.baseline_b, s.result.best_b, b.alpha_a0, b.alpha_a1,
                    b.alpha_c0, b.alpha_c1);
        break;
    }
    case RunMode::fig4a: {
        const auto recs = bilocal::run_fig4a(cfg);
        std::size_t flagged = 0;
        for (const auto& r : recs) {
            std::printf("p=%.9g v1=%.9g v2=%.9g w=%.9g b=%.9g "
                        "any_positive=%s\n",
                        r.p, r.v1, r.v2, r.w, r.b_value,
                        yesno(r.any_positive));
            flagged += r.any_positive ? 1 : 0;
        }
        std::printf("flagged %zu of %zu points\n", flagged, recs.size());
        break;
    }
    case RunMode::fig4b: {
        const auto recs = bilocal::run_fig4b(cfg);
        for (const auto& r : recs)
            std::printf("p=%.9g v1=%.9g v2=%.9g w=%.9g b=%.9g chsh=%.9g "
                        "negativity=%.9g entangled=%s region=%s\n",
                        r.p, r.v1, r.v2, r.w, r.b_value, r.max_chsh,
                        r.negativity, yesno(r.entangled), r.region.c_str());
        std::printf("rows: %zu\n", recs.size());
        break;
    }
    }
    if (!cfg.out.empty()) std::printf("wrote %s\n", cfg.out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-station entanglement-swapping network simulator"};
    app.require_subcommand(1);

    PendingConfig pending;
    const ModeSpec* chosen = nullptr;
    for (const auto& spec : kModes) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        add_common_flags(sub, pending);
        sub->callback([&chosen, &spec] { chosen = &spec; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ExperimentConfig cfg;
        if (!pending.config_path.empty())
            cfg = bilocal::load_config_file(pending.config_path);
        for (const auto& [key, value] : pending.assignments)
            bilocal::apply_config_key(cfg, key, value);
        cfg.mode = chosen->mode;
        cfg.validate();
        return run(*chosen, cfg);
    } catch (const bilocal::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const bilocal::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const bilocal::InvariantError& e) {
        std::fprintf(stderr, "invariant violated: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
