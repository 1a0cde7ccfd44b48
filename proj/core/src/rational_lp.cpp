#include "bilocal/rational_lp.hpp"

#include <cstddef>

#include "bilocal/errors.hpp"

namespace bilocal {

namespace {

// Dense simplex tableau in standard equality form. Column layout:
// [structural | artificial], one artificial per row. The cost row stores
// reduced costs c_j - c_B B^-1 A_j; the corner stores -objective.
class Tableau {
public:
    Tableau(const RationalMatrix& a, const RationalVector& b)
        : rows_(a.size()), cols_(a.empty() ? 0 : a[0].size()) {
        for (const auto& row : a)
            if (row.size() != cols_)
                throw InvariantError("ragged LP constraint matrix");
        if (b.size() != rows_)
            throw InvariantError("LP right-hand side has wrong length");

        body_.assign(rows_, RationalVector(cols_ + rows_ + 1, 0));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            // flip rows to make the right-hand side nonnegative
            const bool flip = b[i] < 0;
            flipped_.push_back(flip);
            for (std::size_t j = 0; j < cols_; ++j)
                body_[i][j] = flip ? -a[i][j] : a[i][j];
            body_[i][cols_ + i] = 1;
            body_[i].back() = flip ? -b[i] : b[i];
            basis_[i] = cols_ + i;
        }
    }

    std::size_t structural_cols() const { return cols_; }
    const std::vector<bool>& flipped_rows() const { return flipped_; }

    // Minimize the sum of artificials. Returns the optimal value; zero
    // means the original system is feasible.
    Rational run_phase1() {
        cost_.assign(cols_ + rows_ + 1, 0);
        // c = 1 on artificials; subtract each row to express reduced costs
        // for the all-artificial starting basis.
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j <= cols_ + rows_; ++j)
                cost_[j] -= body_[i][j];
        for (std::size_t i = 0; i < rows_; ++i) cost_[cols_ + i] += 1;
        iterate(cols_ + rows_);
        return -cost_.back();
    }

    // Pivot basic artificials onto structural columns where possible.
    // A row that stays artificial is all zero over structural columns
    // (redundant constraint) and can never move again, so phase 2 may
    // safely treat the basis as structural.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (body_[i][j] != 0) {
                    pivot(i, j);
                    break;
                }
        }
    }

    // Maximize c.x over structural variables, starting from a feasible
    // basis left by phase 1. Artificial columns are barred from entering.
    // Returns false if the objective is unbounded.
    bool run_phase2(const RationalVector& c) {
        if (c.size() != cols_)
            throw InvariantError("LP objective has wrong length");
        // reduced costs for minimizing -c.x
        cost_.assign(cols_ + rows_ + 1, 0);
        for (std::size_t j = 0; j < cols_; ++j) cost_[j] = -c[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            const Rational w = cost_[basis_[i]];
            if (w != 0)
                for (std::size_t j = 0; j <= cols_ + rows_; ++j)
                    cost_[j] -= w * body_[i][j];
        }
        return iterate(cols_);
    }

    RationalVector primal() const {
        RationalVector x(cols_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) x[basis_[i]] = body_[i].back();
        return x;
    }

    // Dual vector y = c_B B^-1 read off the artificial columns, mapped
    // back through the row sign flips.
    RationalVector dual(const RationalVector& artificial_costs) const {
        RationalVector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            y[i] = artificial_costs[i] - cost_[cols_ + i];
            if (flipped_[i]) y[i] = -y[i];
        }
        return y;
    }

    Rational objective() const { return -cost_.back(); }

private:
    // Bland's rule pivoting until no reduced cost is negative among the
    // first `enter_limit` columns. Returns false on unboundedness.
    bool iterate(std::size_t enter_limit) {
        for (;;) {
            std::size_t enter = enter_limit;
            for (std::size_t j = 0; j < enter_limit; ++j)
                if (cost_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == enter_limit) return true;

            std::size_t leave = rows_;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (body_[i][enter] <= 0) continue;
                Rational ratio = body_[i].back() / body_[i][enter];
                if (leave == rows_ || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = body_[row][col];
        for (auto& v : body_[row]) v /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row) continue;
            const Rational f = body_[i][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= cols_ + rows_; ++j)
                body_[i][j] -= f * body_[row][j];
        }
        const Rational fc = cost_[col];
        if (fc != 0)
            for (std::size_t j = 0; j <= cols_ + rows_; ++j)
                cost_[j] -= fc * body_[row][j];
        basis_[row] = col;
    }

    std::size_t rows_, cols_;
    std::vector<RationalVector> body_;
    RationalVector cost_;
    std::vector<std::size_t> basis_;
    std::vector<bool> flipped_;
};

} // namespace

FeasibilityResult solve_feasibility(const RationalMatrix& a,
                                    const RationalVector& b) {
    Tableau t(a, b);
    const Rational infeas = t.run_phase1();

    FeasibilityResult r;
    if (infeas == 0) {
        r.feasible = true;
        r.solution = t.primal();
    } else {
        r.feasible = false;
        // phase-1 artificial costs are all one
        r.farkas = t.dual(RationalVector(b.size(), 1));
    }
    return r;
}

LpResult maximize(const RationalMatrix& a, const RationalVector& b,
                  const RationalVector& c) {
    Tableau t(a, b);
    LpResult r;
    if (t.run_phase1() != 0) {
        r.status = LpResult::Status::infeasible;
        return r;
    }
    t.drive_out_artificials();
    if (!t.run_phase2(c)) {
        r.status = LpResult::Status::unbounded;
        return r;
    }
    r.status = LpResult::Status::optimal;
    r.objective = -t.objective(); // phase 2 minimized -c.x
    r.solution = t.primal();
    return r;
}

} // namespace bilocal
