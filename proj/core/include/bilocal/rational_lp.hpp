#pragma once

// Exact dense linear programming over GMP rationals. Small fixed-size
// problems only (at most a few hundred rows and columns); Bland's rule
// everywhere, so cycling is impossible and results are deterministic.

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace bilocal {

using Rational = mpq_class;
using BigInt = mpz_class;

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

// Outcome of the feasibility question "does Ax = b, x >= 0 have a solution".
// Exactly one of `solution` / `farkas` is populated. The Farkas vector y
// certifies infeasibility: y.A <= 0 componentwise while y.b > 0.
struct FeasibilityResult {
    bool feasible = false;
    std::optional<RationalVector> solution;
    std::optional<RationalVector> farkas;
};

FeasibilityResult solve_feasibility(const RationalMatrix& a,
                                    const RationalVector& b);

// Maximize c.x subject to Ax = b, x >= 0. The feasible set must be
// nonempty and the objective bounded on it; both are reported.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rational objective;
    RationalVector solution;
};

LpResult maximize(const RationalMatrix& a, const RationalVector& b,
                  const RationalVector& c);

} // namespace bilocal
