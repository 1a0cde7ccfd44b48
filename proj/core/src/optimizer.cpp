#include "bilocal/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "bilocal/errors.hpp"
#include "bilocal/metrics.hpp"
#include "bilocal/rng.hpp"

namespace bilocal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Angles = std::array<double, 4>;

Settings to_settings(const Angles& a) {
    Settings s;
    s.alpha_a0 = a[0];
    s.alpha_a1 = a[1];
    s.alpha_c0 = a[2];
    s.alpha_c1 = a[3];
    return s.canonicalized();
}

double pipeline_b(const NetworkConfig& cfg, const Angles& a) {
    const Behavior b = network_behavior(cfg, to_settings(a));
    return bilocal_report(correlators(b)).b_value;
}

// Cheap surrogate used only to pick grid seeds: the swap correlators
// factorize over the stations, leaving two angle sums per side.
double surrogate_b(const NetworkConfig& cfg, double ca, double sa, double cc,
                   double sc) {
    const double i_corr =
        (cfg.v1 + cfg.w_colored) * (cfg.v2 + cfg.w_colored) * ca * cc / 4.0;
    const double j_corr = cfg.p_bsm * cfg.v1 * cfg.v2 * sa * sc / 4.0;
    return std::sqrt(std::abs(i_corr)) + std::sqrt(std::abs(j_corr));
}

Angles best_grid_seed(const NetworkConfig& cfg) {
    // pair tables over one station; the objective only sees
    // cos(a0)+cos(a1) and sin(a0)-sin(a1)
    constexpr int kSteps = 32;
    std::array<double, kSteps> cosv, sinv;
    for (int k = 0; k < kSteps; ++k) {
        const double ang = kTwoPi * k / kSteps;
        cosv[k] = std::cos(ang);
        sinv[k] = std::sin(ang);
    }
    double best = -1.0;
    Angles seed{};
    for (int a0 = 0; a0 < kSteps; ++a0)
        for (int a1 = 0; a1 < kSteps; ++a1) {
            const double ca = cosv[a0] + cosv[a1];
            const double sa = sinv[a0] - sinv[a1];
            for (int c0 = 0; c0 < kSteps; ++c0)
                for (int c1 = 0; c1 < kSteps; ++c1) {
                    const double val =
                        surrogate_b(cfg, ca, sa, cosv[c0] + cosv[c1],
                                    sinv[c0] - sinv[c1]);
                    if (val > best) {
                        best = val;
                        seed = {kTwoPi * a0 / kSteps, kTwoPi * a1 / kSteps,
                                kTwoPi * c0 / kSteps, kTwoPi * c1 / kSteps};
                    }
                }
        }
    return seed;
}

struct SimplexPoint {
    Angles x;
    double value; // negated objective, smaller is better
};

// Standard reflect/expand/contract/shrink search with coefficients
// (1, 2, 0.5, 0.5); stops when the simplex diameter drops under 1e-6 rad
// or after 500 rounds.
Angles nelder_mead(const NetworkConfig& cfg, const Angles& start,
                   int& evaluations,
                   const std::function<void(double)>& on_improvement) {
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5,
                     kShrink = 0.5;
    constexpr double kDiameterTol = 1e-6;
    constexpr int kMaxRounds = 500;
    constexpr double kInitStep = 0.1;

    const auto eval = [&](const Angles& x) {
        ++evaluations;
        const double v = -pipeline_b(cfg, x);
        on_improvement(-v);
        return v;
    };

    std::array<SimplexPoint, 5> simplex;
    simplex[0] = {start, eval(start)};
    for (int i = 0; i < 4; ++i) {
        Angles x = start;
        x[i] += kInitStep;
        simplex[i + 1] = {x, eval(x)};
    }

    for (int round = 0; round < kMaxRounds; ++round) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const SimplexPoint& a, const SimplexPoint& b) {
                      return a.value < b.value;
                  });

        double diameter = 0.0;
        for (int i = 1; i < 5; ++i)
            for (int d = 0; d < 4; ++d)
                diameter = std::max(
                    diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]));
        if (diameter < kDiameterTol) break;

        Angles centroid{};
        for (int i = 0; i < 4; ++i)
            for (int d = 0; d < 4; ++d) centroid[d] += simplex[i].x[d] / 4.0;

        const auto blend = [&](double t) {
            Angles x;
            for (int d = 0; d < 4; ++d)
                x[d] = centroid[d] + t * (centroid[d] - simplex[4].x[d]);
            return x;
        };

        const Angles refl = blend(kReflect);
        const double refl_v = eval(refl);
        if (refl_v < simplex[0].value) {
            const Angles exp = blend(kExpand);
            const double exp_v = eval(exp);
            simplex[4] = exp_v < refl_v ? SimplexPoint{exp, exp_v}
                                        : SimplexPoint{refl, refl_v};
            continue;
        }
        if (refl_v < simplex[3].value) {
            simplex[4] = {refl, refl_v};
            continue;
        }
        const Angles contr = blend(refl_v < simplex[4].value ? kContract
                                                             : -kContract);
        const double contr_v = eval(contr);
        if (contr_v < std::min(refl_v, simplex[4].value)) {
            simplex[4] = {contr, contr_v};
            continue;
        }
        for (int i = 1; i < 5; ++i) {
            for (int d = 0; d < 4; ++d)
                simplex[i].x[d] = simplex[0].x[d] +
                                  kShrink * (simplex[i].x[d] - simplex[0].x[d]);
            simplex[i].value = eval(simplex[i].x);
        }
    }

    std::sort(simplex.begin(), simplex.end(),
              [](const SimplexPoint& a, const SimplexPoint& b) {
                  return a.value < b.value;
              });
    return simplex[0].x;
}

bool settings_less(const Settings& a, const Settings& b) {
    const std::array<double, 4> ka = {a.alpha_a0, a.alpha_a1, a.alpha_c0,
                                      a.alpha_c1};
    const std::array<double, 4> kb = {b.alpha_a0, b.alpha_a1, b.alpha_c0,
                                      b.alpha_c1};
    return ka < kb;
}

} // namespace

Settings fixed_settings() {
    Settings s;
    s.alpha_a0 = std::numbers::pi / 4.0;
    s.alpha_a1 = -std::numbers::pi / 4.0;
    s.alpha_c0 = std::numbers::pi / 4.0;
    s.alpha_c1 = -std::numbers::pi / 4.0;
    return s.canonicalized();
}

OptimizationResult optimize_settings(const NetworkConfig& cfg, int restarts,
                                     std::uint64_t seed) {
    cfg.validate();
    if (restarts < 1) throw ConfigError("optimizer needs restarts >= 1");

    OptimizationResult result;
    result.best_b = -1.0;
    int evaluations = 0;

    const auto consider = [&](const Settings& s, double b) {
        if (b > result.best_b ||
            (b == result.best_b && settings_less(s, result.best))) {
            result.best = s;
            result.best_b = b;
        }
        if (result.trace.empty() || result.best_b > result.trace.back().second)
            result.trace.emplace_back(evaluations, result.best_b);
    };

    const auto track = [&](double b) {
        if (result.trace.empty() || b > result.trace.back().second)
            result.trace.emplace_back(evaluations, b);
    };

    // the known baseline always competes
    const Settings fixed = fixed_settings();
    const Angles fixed_angles = {fixed.alpha_a0, fixed.alpha_a1, fixed.alpha_c0,
                                 fixed.alpha_c1};
    ++evaluations;
    consider(fixed, pipeline_b(cfg, fixed_angles));

    std::vector<Angles> starts;
    starts.push_back(best_grid_seed(cfg));
    if (restarts >= 2) starts.push_back(fixed_angles);
    for (int k = 2; k < restarts; ++k) {
        Rng rng(splitmix64(seed ^ static_cast<std::uint64_t>(k)));
        Angles x;
        for (auto& ang : x) ang = rng.next_double() * kTwoPi;
        starts.push_back(x);
    }

    for (const Angles& start : starts) {
        const Angles refined = nelder_mead(cfg, start, evaluations, track);
        consider(to_settings(refined), pipeline_b(cfg, refined));
    }
    return result;
}

} // namespace bilocal
