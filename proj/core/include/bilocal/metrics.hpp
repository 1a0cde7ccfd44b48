#pragma once

// Correlation quantities derived from behaviors and two-qubit states: the
// branch correlators, the nonlinear bilocality quantity, CHSH values, the
// maximal-CHSH criterion, and entanglement negativity.

#include <array>

#include "bilocal/network.hpp"

namespace bilocal {

// <A_x B_y C_z> for x, z in {0,1} and Bob bit y in {0,1}, indexed [x][y][z].
struct CorrelatorSet {
    std::array<std::array<std::array<double, 2>, 2>, 2> value{};
};

CorrelatorSet correlators(const Behavior& b);

struct BilocalReport {
    double i_corr = 0.0;     // quarter-sum of the b0 branch
    double j_corr = 0.0;     // alternating quarter-sum of the b1 branch
    double b_value = 0.0;    // sqrt|I| + sqrt|J|, violation above 1
    double lhv_linear = 0.0; // |I| + |J|, linear bound 1
};

BilocalReport bilocal_report(const CorrelatorSet& c);

// Two-party correlators <A_x C_z> indexed x*2+z.
using PairCorrelators = std::array<double, 4>;

// Largest |S| over the eight sign conventions of the CHSH combination.
double chsh_value(const PairCorrelators& corr);

// CHSH for a two-qubit state measured along Bloch x-z angles.
double chsh_value(const DensityMatrix& rho,
                  const std::array<double, 2>& alice_alphas,
                  const std::array<double, 2>& charlie_alphas);

// Alice-Charlie correlators conditioned on one middle outcome.
PairCorrelators conditional_pair_correlators(const Behavior& b,
                                             const BellOutcome& outcome);

// 2 sqrt(u1 + u2) with u1, u2 the two largest eigenvalues of T^T T, where
// T_ij = tr(rho sigma_i x sigma_j). Above 2 iff some CHSH setting violates.
double horodecki_max_chsh(const DensityMatrix& rho);

// Sum of |negative eigenvalues| of the partial transpose; positive iff the
// two-qubit state is entangled.
double ppt_negativity(const DensityMatrix& rho);

} // namespace bilocal
