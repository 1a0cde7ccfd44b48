#include "bilocal/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "bilocal/errors.hpp"
#include "bilocal/metrics.hpp"
#include "bilocal/polytope.hpp"
#include "bilocal/rng.hpp"
#include "bilocal/tomography.hpp"

namespace bilocal {
namespace {

using OrderedJson = nlohmann::ordered_json;

// Scan modes refine settings per grid point; the dedicated optimize mode
// spends one extra random restart.
constexpr int kScanRestarts = 3;
constexpr int kOptimizeModeRestarts = 4;
constexpr double kEntangledTol = 1e-12;
// Scores are scale-normalized, so anything above this is a real
// violation rather than boundary round-off.
constexpr double kScorePositiveTol = 1e-9;

// ------------------------------------------------------------------
// Config text handling.

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& field, const std::string& text) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": not a number: '" + text + "'");
    }
}

std::int64_t parse_int(const std::string& field, const std::string& text) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(text, &pos);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": not an integer: '" + text + "'");
    }
}

std::uint64_t parse_uint(const std::string& field, const std::string& text) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size() || text.find('-') != std::string::npos)
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": not an unsigned integer: '" + text + "'");
    }
}

Range parse_range(const std::string& field, const std::string& text) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ':')) parts.push_back(trim(token));
    if (parts.size() == 1) {
        const double v = parse_double(field, parts[0]);
        return Range{v, v, 1.0};
    }
    if (parts.size() == 3) {
        return Range{parse_double(field + ".start", parts[0]),
                     parse_double(field + ".stop", parts[1]),
                     parse_double(field + ".step", parts[2])};
    }
    throw ConfigError(field + ": expected a scalar or start:stop:step, got '" +
                      text + "'");
}

RunMode parse_mode(const std::string& text) {
    if (text == "sweep") return RunMode::sweep;
    if (text == "facets") return RunMode::facets;
    if (text == "membership") return RunMode::membership;
    if (text == "tomo") return RunMode::tomo;
    if (text == "optimize") return RunMode::optimize;
    if (text == "fig3") return RunMode::fig3;
    if (text == "fig4a") return RunMode::fig4a;
    if (text == "fig4b") return RunMode::fig4b;
    throw ConfigError("mode: unknown mode '" + text + "'");
}

const char* settings_name(SettingsMode m) {
    return m == SettingsMode::fixed ? "fixed" : "optimized";
}

void check_range(const char* field, const Range& r) {
    if (!(r.step > 0.0))
        throw ConfigError(std::string(field) + ": step must be positive");
    if (!(r.start <= r.stop))
        throw ConfigError(std::string(field) + ": start exceeds stop");
    if (r.start < 0.0 || r.stop > 1.0)
        throw ConfigError(std::string(field) + ": range must lie in [0, 1]");
    if ((r.stop - r.start) / r.step > 1e6)
        throw ConfigError(std::string(field) + ": more than 1e6 grid points");
}

// ------------------------------------------------------------------
// Formatting. Every numeric CSV cell goes through fmt9 so that repeated
// runs of the same experiment are byte-identical.

std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void write_json_file(const std::string& path, const OrderedJson& j) {
    write_text_file(path, j.dump(2) + "\n");
}

// ------------------------------------------------------------------
// Shared pipeline pieces.

std::vector<InequalityVector> nontrivial_inequalities(
    const ExperimentConfig& cfg) {
    std::vector<InequalityVector> out;
    if (cfg.facets_path.empty()) {
        for (const auto& f : facet_enumeration())
            if (f.tag == FacetTag::nontrivial) out.push_back(f);
    } else {
        for (auto& f : load_facets(cfg.facets_path))
            if (f.tag == FacetTag::nontrivial) out.push_back(std::move(f));
    }
    return out;
}

Settings settings_for(const NetworkConfig& net, SettingsMode mode,
                      int restarts, std::uint64_t seed) {
    if (mode == SettingsMode::fixed) return fixed_settings();
    return optimize_settings(net, restarts, seed).best;
}

double max_score(const Behavior& b,
                 const std::vector<InequalityVector>& ineqs) {
    const auto scores = evaluate_inequalities(b, ineqs);
    return *std::max_element(scores.begin(), scores.end());
}

double sample_stddev(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

struct GridPoint {
    double p, v1, v2, w;
};

std::vector<GridPoint> full_grid(const ExperimentConfig& cfg) {
    std::vector<GridPoint> pts;
    for (double p : grid_of(cfg.p))
        for (double v1 : grid_of(cfg.v1))
            for (double v2 : grid_of(cfg.v2))
                for (double w : grid_of(cfg.w))
                    pts.push_back(GridPoint{p, v1, v2, w});
    return pts;
}

NetworkConfig net_of(const GridPoint& g) {
    NetworkConfig net;
    net.v1 = g.v1;
    net.v2 = g.v2;
    net.w_colored = g.w;
    net.p_bsm = g.p;
    return net;
}

SweepRecord sweep_point(const GridPoint& g, SettingsMode mode,
                        const ExperimentConfig& cfg, std::uint64_t point_seed,
                        const std::vector<InequalityVector>& ineqs) {
    const NetworkConfig net = net_of(g);
    net.validate();
    const Settings s = settings_for(net, mode, kScanRestarts, cfg.seed);
    const Behavior exact = network_behavior(net, s);

    SweepRecord rec;
    rec.p = g.p;
    rec.v1 = g.v1;
    rec.v2 = g.v2;
    rec.w = g.w;
    rec.settings = mode;

    BilocalReport rep;
    if (cfg.shots == 0) {
        rep = bilocal_report(correlators(exact));
        rec.max_facet_score = max_score(exact, ineqs);
    } else {
        const CountTable counts = sample_counts(exact, cfg.shots, point_seed);
        const Behavior freq = counts.frequencies();
        rep = bilocal_report(correlators(freq));
        rec.max_facet_score = max_score(freq, ineqs);

        std::vector<double> bi, bj, bb;
        bi.reserve(kBootstrapResamples);
        bj.reserve(kBootstrapResamples);
        bb.reserve(kBootstrapResamples);
        for (int r = 0; r < kBootstrapResamples; ++r) {
            const std::uint64_t rs =
                splitmix64(point_seed ^ static_cast<std::uint64_t>(r + 1));
            const Behavior resampled =
                sample_counts(freq, cfg.shots, rs).frequencies();
            const BilocalReport rr = bilocal_report(correlators(resampled));
            bi.push_back(rr.i_corr);
            bj.push_back(rr.j_corr);
            bb.push_back(rr.b_value);
        }
        rec.sigma_i = sample_stddev(bi);
        rec.sigma_j = sample_stddev(bj);
        rec.sigma_b = sample_stddev(bb);
    }
    rec.i_corr = rep.i_corr;
    rec.j_corr = rep.j_corr;
    rec.b_value = rep.b_value;
    rec.lhv_linear = rep.lhv_linear;

    // Swap-output columns are model quantities of the conditioned state;
    // finite statistics for these live in the tomography modes.
    const auto [rho, prob] =
        swapped_state(net, BellOutcome::from_bits(1, 1));
    (void)prob;
    rec.swap_chsh = horodecki_max_chsh(rho);
    rec.swap_negativity = ppt_negativity(rho);
    return rec;
}

const char* kSweepHeader =
    "p,v1,v2,w,settings,i_corr,j_corr,b_value,lhv_linear,max_facet_score,"
    "swap_chsh,swap_negativity,sigma_i,sigma_j,sigma_b";

std::string sweep_csv(const std::vector<SweepRecord>& recs) {
    std::string out(kSweepHeader);
    out += '\n';
    for (const auto& r : recs) {
        out += fmt9(r.p) + ',' + fmt9(r.v1) + ',' + fmt9(r.v2) + ',' +
               fmt9(r.w) + ',' + settings_name(r.settings) + ',' +
               fmt9(r.i_corr) + ',' + fmt9(r.j_corr) + ',' + fmt9(r.b_value) +
               ',' + fmt9(r.lhv_linear) + ',' + fmt9(r.max_facet_score) + ',' +
               fmt9(r.swap_chsh) + ',' + fmt9(r.swap_negativity) + ',' +
               fmt9(r.sigma_i) + ',' + fmt9(r.sigma_j) + ',' + fmt9(r.sigma_b);
        out += '\n';
    }
    return out;
}

OrderedJson sweep_json(const std::vector<SweepRecord>& recs) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& r : recs) {
        OrderedJson row;
        row["p"] = r.p;
        row["v1"] = r.v1;
        row["v2"] = r.v2;
        row["w"] = r.w;
        row["settings"] = settings_name(r.settings);
        row["i_corr"] = r.i_corr;
        row["j_corr"] = r.j_corr;
        row["b_value"] = r.b_value;
        row["lhv_linear"] = r.lhv_linear;
        row["max_facet_score"] = r.max_facet_score;
        row["swap_chsh"] = r.swap_chsh;
        row["swap_negativity"] = r.swap_negativity;
        row["sigma_i"] = r.sigma_i;
        row["sigma_j"] = r.sigma_j;
        row["sigma_b"] = r.sigma_b;
        arr.push_back(std::move(row));
    }
    return arr;
}

void write_sweep_outputs(const ExperimentConfig& cfg,
                         const std::vector<SweepRecord>& recs) {
    if (cfg.out.empty()) return;
    write_text_file(cfg.out, sweep_csv(recs));
    write_json_file(cfg.out + ".json", sweep_json(recs));
}

} // namespace

// ------------------------------------------------------------------
// Config assembly.

void ExperimentConfig::validate() const {
    check_range("p", p);
    check_range("v1", v1);
    check_range("v2", v2);
    check_range("w", w);
    if (shots < 0) throw ConfigError("shots: must be >= 0");
    if (mode == RunMode::tomo && shots == 0)
        throw ConfigError("tomo mode requires shots >= 1");
}

void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
    if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "p") cfg.p = parse_range("p", value);
    else if (key == "v1") cfg.v1 = parse_range("v1", value);
    else if (key == "v2") cfg.v2 = parse_range("v2", value);
    else if (key == "w") cfg.w = parse_range("w", value);
    else if (key == "shots") cfg.shots = parse_int("shots", value);
    else if (key == "seed") cfg.seed = parse_uint("seed", value);
    else if (key == "settings") {
        if (value == "fixed") cfg.settings = SettingsMode::fixed;
        else if (value == "optimized") cfg.settings = SettingsMode::optimized;
        else throw ConfigError("settings: expected fixed or optimized, got '" +
                               value + "'");
    } else if (key == "out") cfg.out = value;
    else if (key == "facets") cfg.facets_path = value;
    else throw ConfigError("unknown key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            apply_config_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return cfg;
}

std::vector<double> grid_of(const Range& r) {
    std::vector<double> values;
    for (int k = 0;; ++k) {
        double v = r.start + k * r.step;
        if (v > r.stop + r.step * 1e-9) break;
        if (std::abs(v - r.stop) <= r.step * 1e-9) v = r.stop;
        values.push_back(v);
    }
    return values;
}

// ------------------------------------------------------------------
// Runners.

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto ineqs = nontrivial_inequalities(cfg);
    std::vector<SweepRecord> recs;
    std::uint64_t index = 0;
    for (const GridPoint& g : full_grid(cfg)) {
        recs.push_back(sweep_point(g, cfg.settings, cfg,
                                   splitmix64(cfg.seed ^ index), ineqs));
        ++index;
    }
    write_sweep_outputs(cfg, recs);
    return recs;
}

std::vector<SweepRecord> run_fig3(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto ineqs = nontrivial_inequalities(cfg);
    const auto grid = full_grid(cfg);
    std::vector<SweepRecord> recs;
    for (SettingsMode mode : {SettingsMode::fixed, SettingsMode::optimized}) {
        std::uint64_t index = 0;
        for (const GridPoint& g : grid) {
            recs.push_back(sweep_point(g, mode, cfg,
                                       splitmix64(cfg.seed ^ index), ineqs));
            ++index;
        }
    }
    write_sweep_outputs(cfg, recs);
    return recs;
}

std::vector<Fig4aRecord> run_fig4a(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto ineqs = nontrivial_inequalities(cfg);

    std::vector<Fig4aRecord> recs;
    for (const GridPoint& g : full_grid(cfg)) {
        const NetworkConfig net = net_of(g);
        net.validate();
        const Settings s =
            settings_for(net, cfg.settings, kScanRestarts, cfg.seed);
        const Behavior b = network_behavior(net, s);

        Fig4aRecord rec;
        rec.p = g.p;
        rec.v1 = g.v1;
        rec.v2 = g.v2;
        rec.w = g.w;
        rec.b_value = bilocal_report(correlators(b)).b_value;
        rec.scores = evaluate_inequalities(b, ineqs);
        rec.any_positive =
            std::any_of(rec.scores.begin(), rec.scores.end(),
                        [](double x) { return x > kScorePositiveTol; });
        recs.push_back(std::move(rec));
    }

    if (!cfg.out.empty()) {
        const std::size_t n = recs.empty() ? 0 : recs.front().scores.size();
        std::string csv = "p,v1,v2,w,b_value";
        for (std::size_t i = 0; i < n; ++i) {
            char buf[24];
            std::snprintf(buf, sizeof buf, ",score_%02u",
                          static_cast<unsigned>(i));
            csv += buf;
        }
        csv += ",any_positive\n";
        for (const auto& r : recs) {
            csv += fmt9(r.p) + ',' + fmt9(r.v1) + ',' + fmt9(r.v2) + ',' +
                   fmt9(r.w) + ',' + fmt9(r.b_value);
            for (double sc : r.scores) csv += ',' + fmt9(sc);
            csv += r.any_positive ? ",1\n" : ",0\n";
        }
        write_text_file(cfg.out, csv);

        OrderedJson arr = OrderedJson::array();
        for (const auto& r : recs) {
            OrderedJson row;
            row["p"] = r.p;
            row["v1"] = r.v1;
            row["v2"] = r.v2;
            row["w"] = r.w;
            row["b_value"] = r.b_value;
            row["scores"] = r.scores;
            row["any_positive"] = r.any_positive;
            arr.push_back(std::move(row));
        }
        write_json_file(cfg.out + ".json", arr);
    }
    return recs;
}

std::vector<Fig4bRecord> run_fig4b(const ExperimentConfig& cfg) {
    cfg.validate();

    std::vector<Fig4bRecord> recs;
    std::uint64_t index = 0;
    for (const GridPoint& g : full_grid(cfg)) {
        const NetworkConfig net = net_of(g);
        net.validate();
        const std::uint64_t point_seed = splitmix64(cfg.seed ^ index);
        ++index;

        // This analysis compares the standard scan (fixed analyzer
        // angles) against the conditioned swap output.
        const Behavior exact = network_behavior(net, fixed_settings());

        Fig4bRecord rec;
        rec.p = g.p;
        rec.v1 = g.v1;
        rec.v2 = g.v2;
        rec.w = g.w;
        if (cfg.shots == 0) {
            rec.b_value = bilocal_report(correlators(exact)).b_value;
        } else {
            const Behavior freq =
                sample_counts(exact, cfg.shots, point_seed).frequencies();
            rec.b_value = bilocal_report(correlators(freq)).b_value;
        }

        const auto [rho_exact, prob] =
            swapped_state(net, BellOutcome::from_bits(1, 1));
        (void)prob;
        DensityMatrix rho = rho_exact;
        if (cfg.shots > 0) {
            const TomographyCounts counts = simulate_tomography(
                rho_exact, cfg.shots, splitmix64(point_seed ^ 0x517));
            rho = project_physical(linear_inversion(counts));
        }
        rec.max_chsh = horodecki_max_chsh(rho);
        rec.negativity = ppt_negativity(rho);
        rec.entangled = rec.negativity > kEntangledTol || rec.max_chsh > 2.0;
        const bool biloc = rec.b_value > 1.0;
        const bool chsh = rec.max_chsh > 2.0;
        rec.region = biloc ? (chsh ? "both" : "bilocal_only")
                           : (chsh ? "chsh_only" : "none");
        recs.push_back(std::move(rec));
    }

    if (!cfg.out.empty()) {
        std::string csv =
            "p,v1,v2,w,b_value,max_chsh,negativity,entangled,region\n";
        for (const auto& r : recs) {
            csv += fmt9(r.p) + ',' + fmt9(r.v1) + ',' + fmt9(r.v2) + ',' +
                   fmt9(r.w) + ',' + fmt9(r.b_value) + ',' + fmt9(r.max_chsh) +
                   ',' + fmt9(r.negativity) + ',' +
                   (r.entangled ? "1" : "0") + ',' + r.region + '\n';
        }
        write_text_file(cfg.out, csv);

        OrderedJson arr = OrderedJson::array();
        for (const auto& r : recs) {
            OrderedJson row;
            row["p"] = r.p;
            row["v1"] = r.v1;
            row["v2"] = r.v2;
            row["w"] = r.w;
            row["b_value"] = r.b_value;
            row["max_chsh"] = r.max_chsh;
            row["negativity"] = r.negativity;
            row["entangled"] = r.entangled;
            row["region"] = r.region;
            arr.push_back(std::move(row));
        }
        write_json_file(cfg.out + ".json", arr);
    }
    return recs;
}

FacetsSummary run_facets(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<InequalityVector>* facets;
    std::vector<InequalityVector> loaded;
    if (cfg.facets_path.empty()) {
        facets = &facet_enumeration();
    } else {
        loaded = load_facets(cfg.facets_path);
        facets = &loaded;
    }

    const FacetCounts counts = count_facets(*facets);
    FacetsSummary summary;
    summary.positivity = counts.positivity;
    summary.nontrivial = counts.nontrivial;
    summary.affine_dim = lhv_affine_dimension();

    if (!cfg.out.empty()) {
        std::vector<InequalityVector> nontrivial;
        for (const auto& f : *facets)
            if (f.tag == FacetTag::nontrivial) nontrivial.push_back(f);
        save_facets(nontrivial, cfg.out);
    }
    return summary;
}

MembershipSummary run_membership(const ExperimentConfig& cfg) {
    cfg.validate();
    const GridPoint g{cfg.p.start, cfg.v1.start, cfg.v2.start, cfg.w.start};
    const NetworkConfig net = net_of(g);
    net.validate();
    const Settings s =
        settings_for(net, cfg.settings, kScanRestarts, cfg.seed);
    const Behavior b = network_behavior(net, s);

    const MembershipResult res = lp_membership(b);
    const auto ineqs = nontrivial_inequalities(cfg);

    MembershipSummary summary;
    summary.feasible = res.feasible;
    summary.feasible_relaxed = res.feasible || res.feasible_relaxed;
    summary.max_facet_score = max_score(b, ineqs);
    summary.has_certificate = res.violated_certificate.has_value();

    if (!cfg.out.empty()) {
        OrderedJson j;
        j["p"] = g.p;
        j["v1"] = g.v1;
        j["v2"] = g.v2;
        j["w"] = g.w;
        j["settings"] = settings_name(cfg.settings);
        j["feasible"] = summary.feasible;
        j["feasible_relaxed"] = summary.feasible_relaxed;
        j["max_facet_score"] = summary.max_facet_score;
        if (res.feasible) {
            OrderedJson weights = OrderedJson::array();
            for (std::size_t i = 0; i < res.weights.size(); ++i) {
                const double wgt = res.weights[i].get_d();
                if (wgt == 0.0) continue;
                OrderedJson entry;
                entry["strategy"] = i;
                entry["weight"] = wgt;
                weights.push_back(std::move(entry));
            }
            j["weights"] = std::move(weights);
        }
        if (res.violated_certificate) {
            const auto& cert = *res.violated_certificate;
            OrderedJson c;
            OrderedJson coeffs = OrderedJson::array();
            for (const auto& x : cert.coeffs) coeffs.push_back(x.get_str());
            c["coeffs"] = std::move(coeffs);
            c["bound"] = cert.bound.get_str();
            c["value"] = cert.evaluate(b);
            j["certificate"] = std::move(c);
        }
        write_json_file(cfg.out, j);
    }
    return summary;
}

TomoSummary run_tomo(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.shots < 1) throw ConfigError("tomo mode requires shots >= 1");
    const GridPoint g{cfg.p.start, cfg.v1.start, cfg.v2.start, cfg.w.start};
    const NetworkConfig net = net_of(g);
    net.validate();

    const auto [rho_exact, prob] =
        swapped_state(net, BellOutcome::from_bits(1, 1));
    (void)prob;
    const TomographyCounts counts =
        simulate_tomography(rho_exact, cfg.shots, cfg.seed);
    const DensityMatrix rho = project_physical(linear_inversion(counts));

    TomoSummary summary;
    summary.fidelity_vs_exact = fidelity(rho, rho_exact);
    summary.chsh_exact = horodecki_max_chsh(rho_exact);
    summary.chsh_reconstructed = horodecki_max_chsh(rho);
    summary.negativity_exact = ppt_negativity(rho_exact);
    summary.negativity_reconstructed = ppt_negativity(rho);

    if (!cfg.out.empty()) {
        OrderedJson j;
        j["p"] = g.p;
        j["v1"] = g.v1;
        j["v2"] = g.v2;
        j["w"] = g.w;
        j["shots"] = cfg.shots;
        j["seed"] = cfg.seed;
        j["fidelity_vs_exact"] = summary.fidelity_vs_exact;
        j["chsh_exact"] = summary.chsh_exact;
        j["chsh_reconstructed"] = summary.chsh_reconstructed;
        j["negativity_exact"] = summary.negativity_exact;
        j["negativity_reconstructed"] = summary.negativity_reconstructed;
        write_json_file(cfg.out, j);
    }
    return summary;
}

OptimizeSummary run_optimize(const ExperimentConfig& cfg) {
    cfg.validate();
    const GridPoint g{cfg.p.start, cfg.v1.start, cfg.v2.start, cfg.w.start};
    const NetworkConfig net = net_of(g);
    net.validate();

    OptimizeSummary summary;
    summary.result = optimize_settings(net, kOptimizeModeRestarts, cfg.seed);
    summary.baseline_b =
        bilocal_report(correlators(network_behavior(net, fixed_settings())))
            .b_value;

    if (!cfg.out.empty()) {
        const Settings& s = summary.result.best;
        OrderedJson j;
        j["p"] = g.p;
        j["v1"] = g.v1;
        j["v2"] = g.v2;
        j["w"] = g.w;
        j["seed"] = cfg.seed;
        j["restarts"] = kOptimizeModeRestarts;
        j["best_b"] = summary.result.best_b;
        j["baseline_b"] = summary.baseline_b;
        j["best_angles"] = {s.alpha_a0, s.alpha_a1, s.alpha_c0, s.alpha_c1};
        OrderedJson trace = OrderedJson::array();
        for (const auto& [evals, value] : summary.result.trace)
            trace.push_back({evals, value});
        j["trace"] = std::move(trace);
        write_json_file(cfg.out, j);
    }
    return summary;
}

} // namespace bilocal
