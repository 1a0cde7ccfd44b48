#include <doctest.h>

#include "bilocal/rational_lp.hpp"

using namespace bilocal;

namespace {

Rational r(long num, long den = 1) { return Rational(num, den); }

} // namespace

TEST_CASE("feasibility on a one-constraint system") {
    // x1 + x2 = 1, x >= 0
    RationalMatrix a{{r(1), r(1)}};
    RationalVector b{r(1)};
    const auto res = solve_feasibility(a, b);
    REQUIRE(res.feasible);
    REQUIRE(res.solution.has_value());
    const auto& x = *res.solution;
    CHECK(x.size() == 2);
    CHECK(x[0] + x[1] == r(1));
    CHECK(x[0] >= 0);
    CHECK(x[1] >= 0);
}

TEST_CASE("infeasible system yields a separating certificate") {
    // x1 = -1 has no nonnegative solution
    RationalMatrix a{{r(1)}};
    RationalVector b{r(-1)};
    const auto res = solve_feasibility(a, b);
    REQUIRE_FALSE(res.feasible);
    REQUIRE(res.farkas.has_value());
    const auto& y = *res.farkas;
    REQUIRE(y.size() == 1);
    // y.A <= 0 componentwise and y.b > 0
    CHECK(y[0] * a[0][0] <= 0);
    CHECK(y[0] * b[0] > 0);
}

TEST_CASE("certificate for two incompatible equalities") {
    // x1 + x2 = 2 and x1 + x2 = 1 cannot hold at once
    RationalMatrix a{{r(1), r(1)}, {r(1), r(1)}};
    RationalVector b{r(2), r(1)};
    const auto res = solve_feasibility(a, b);
    REQUIRE_FALSE(res.feasible);
    const auto& y = *res.farkas;
    for (std::size_t j = 0; j < 2; ++j) {
        Rational col = y[0] * a[0][j] + y[1] * a[1][j];
        CHECK(col <= 0);
    }
    CHECK(y[0] * b[0] + y[1] * b[1] > 0);
}

TEST_CASE("maximization over a simplex") {
    // max x1 + 2 x2 subject to x1 + x2 = 1, x >= 0
    RationalMatrix a{{r(1), r(1)}};
    RationalVector b{r(1)};
    RationalVector c{r(1), r(2)};
    const auto res = maximize(a, b, c);
    REQUIRE(res.status == LpResult::Status::optimal);
    CHECK(res.objective == r(2));
    CHECK(res.solution[0] == r(0));
    CHECK(res.solution[1] == r(1));
}

TEST_CASE("maximization with a fractional optimum") {
    // max x1 subject to 2 x1 + x2 = 1, x1 + 3 x2 = 1
    // solution x = (2/5, 1/5)
    RationalMatrix a{{r(2), r(1)}, {r(1), r(3)}};
    RationalVector b{r(1), r(1)};
    RationalVector c{r(1), r(0)};
    const auto res = maximize(a, b, c);
    REQUIRE(res.status == LpResult::Status::optimal);
    CHECK(res.objective == r(2, 5));
    CHECK(res.solution[0] == r(2, 5));
    CHECK(res.solution[1] == r(1, 5));
}

TEST_CASE("unbounded objective is reported") {
    // x1 - x2 = 0 leaves the ray (t, t); maximizing x1 diverges
    RationalMatrix a{{r(1), r(-1)}};
    RationalVector b{r(0)};
    RationalVector c{r(1), r(0)};
    const auto res = maximize(a, b, c);
    CHECK(res.status == LpResult::Status::unbounded);
}

TEST_CASE("negative right-hand sides are handled by row flips") {
    // -x1 = -3 forces x1 = 3
    RationalMatrix a{{r(-1), r(0)}};
    RationalVector b{r(-3)};
    const auto res = solve_feasibility(a, b);
    REQUIRE(res.feasible);
    CHECK((*res.solution)[0] == r(3));
}

TEST_CASE("redundant rows do not break the solve") {
    // the same constraint twice, then maximize
    RationalMatrix a{{r(1), r(1)}, {r(2), r(2)}};
    RationalVector b{r(1), r(2)};
    RationalVector c{r(0), r(1)};
    const auto res = maximize(a, b, c);
    REQUIRE(res.status == LpResult::Status::optimal);
    CHECK(res.objective == r(1));
}

TEST_CASE("infeasibility via maximize status") {
    RationalMatrix a{{r(1), r(1)}};
    RationalVector b{r(-1)};
    RationalVector c{r(1), r(0)};
    const auto res = maximize(a, b, c);
    CHECK(res.status == LpResult::Status::infeasible);
}

TEST_CASE("exact arithmetic survives scale mismatch") {
    // tiny and huge coefficients in one system
    const Rational big = r(1000000000) * r(1000000000);
    RationalMatrix a{{big, r(1)}};
    RationalVector b{big};
    RationalVector c{r(0), r(1)};
    const auto res = maximize(a, b, c);
    REQUIRE(res.status == LpResult::Status::optimal);
    // x2's column coefficient is 1, so x2 can soak up the whole rhs
    CHECK(res.objective == big);
}
