#include "bilocal/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bilocal/errors.hpp"

namespace bilocal {

namespace {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;

BigInt dot(const IntVector& a, const IntVector& b) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
    return acc;
}

// Divide an integer vector by the gcd of its entries (no sign change).
void normalize_gcd(IntVector& v) {
    BigInt g = 0;
    for (const auto& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& x : v) x /= g;
}

// Clear denominators of a rational vector into canonical integer form.
IntVector to_integer(const RationalVector& v) {
    BigInt lcm = 1;
    for (const auto& x : v)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                x.get_den().get_mpz_t());
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational scaled = v[i] * Rational(lcm);
        out[i] = scaled.get_num(); // denominator is 1 after scaling
    }
    normalize_gcd(out);
    return out;
}

// Incremental exact row reduction used for rank and pivot bookkeeping.
class RowReducer {
public:
    // Returns true if the row enlarged the span.
    bool absorb(RationalVector row) {
        for (const auto& [col, basis_row] : rows_) {
            if (row[col] == 0) continue;
            const Rational f = row[col];
            for (std::size_t j = 0; j < row.size(); ++j)
                row[j] -= f * basis_row[j];
        }
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) {
                const Rational lead = row[j];
                for (auto& x : row) x /= lead;
                rows_.emplace_back(j, std::move(row));
                return true;
            }
        return false;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

    std::vector<int> pivot_columns() const {
        std::vector<int> cols;
        for (const auto& [col, row] : rows_) cols.push_back(static_cast<int>(col));
        std::sort(cols.begin(), cols.end());
        return cols;
    }

private:
    std::vector<std::pair<std::size_t, RationalVector>> rows_;
};

// Exact inverse by Gauss-Jordan elimination; the input must be square
// and nonsingular (guaranteed by the caller's independence check).
std::vector<RationalVector> invert(std::vector<RationalVector> m) {
    const std::size_t n = m.size();
    std::vector<RationalVector> inv(n, RationalVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw InvariantError("singular matrix in cone setup");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        const Rational lead = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= lead;
            inv[col][j] /= lead;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RowMask zero_mask(const IntVector& y, const IntMatrix& rows,
                  const std::vector<std::size_t>& processed) {
    RowMask mask;
    for (std::size_t r : processed)
        if (sgn(dot(rows[r], y)) == 0) mask.set(r);
    return mask;
}

} // namespace

int RowMask::count() const {
    return std::popcount(bits[0]) + std::popcount(bits[1]);
}

std::vector<ConeRay> extreme_rays(const RationalMatrix& rows_q) {
    const std::size_t m = rows_q.size();
    if (m == 0) throw InvariantError("extreme_rays needs at least one row");
    if (m > 128) throw InvariantError("extreme_rays supports at most 128 rows");
    const std::size_t d = rows_q[0].size();

    // integer row copies for fast exact dot products
    IntMatrix rows;
    rows.reserve(m);
    for (const auto& r : rows_q) {
        if (r.size() != d) throw InvariantError("ragged cone row matrix");
        rows.push_back(to_integer(r));
    }

    // greedy independent subset forming the initial simplicial cone
    RowReducer reducer;
    std::vector<std::size_t> basis_rows;
    std::vector<bool> in_basis(m, false);
    for (std::size_t i = 0; i < m && basis_rows.size() < d; ++i) {
        RationalVector row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = Rational(rows[i][j]);
        if (reducer.absorb(std::move(row))) {
            basis_rows.push_back(i);
            in_basis[i] = true;
        }
    }
    if (basis_rows.size() < d)
        throw InvariantError("cone rows do not span; lineality present");

    std::vector<RationalVector> b(d, RationalVector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            b[i][j] = Rational(rows[basis_rows[i]][j]);
    const auto b_inv = invert(std::move(b));

    std::vector<std::size_t> processed = basis_rows;
    std::vector<ConeRay> rays;
    for (std::size_t j = 0; j < d; ++j) {
        RationalVector col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = b_inv[i][j];
        ConeRay ray{to_integer(col), {}};
        ray.zero = zero_mask(ray.y, rows, processed);
        rays.push_back(std::move(ray));
    }

    for (std::size_t r = 0; r < m; ++r) {
        if (in_basis[r]) continue;

        std::vector<BigInt> dots(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k)
            dots[k] = dot(rows[r], rays[k].y);

        std::vector<std::size_t> plus, minus;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (sgn(dots[k]) > 0) plus.push_back(k);
            if (sgn(dots[k]) < 0) minus.push_back(k);
        }

        std::vector<ConeRay> fresh;
        if (!minus.empty() && !plus.empty()) {
            for (std::size_t p : plus)
                for (std::size_t q : minus) {
                    const RowMask common = rays[p].zero & rays[q].zero;
                    // adjacency in a d-cone needs a rank-(d-2) common face
                    if (common.count() <
                        static_cast<int>(d) - 2) continue;
                    bool adjacent = true;
                    for (std::size_t t = 0; t < rays.size(); ++t) {
                        if (t == p || t == q) continue;
                        if (common.subset_of(rays[t].zero)) {
                            adjacent = false;
                            break;
                        }
                    }
                    if (!adjacent) continue;

                    IntVector y(d);
                    for (std::size_t j = 0; j < d; ++j)
                        y[j] = dots[p] * rays[q].y[j] -
                               dots[q] * rays[p].y[j];
                    normalize_gcd(y);
                    fresh.push_back(ConeRay{std::move(y), {}});
                }
        }

        std::vector<ConeRay> kept;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (sgn(dots[k]) < 0) continue;
            ConeRay ray = std::move(rays[k]);
            if (sgn(dots[k]) == 0) ray.zero.set(r);
            kept.push_back(std::move(ray));
        }
        processed.push_back(r);
        for (auto& ray : fresh) {
            ray.zero = zero_mask(ray.y, rows, processed);
            kept.push_back(std::move(ray));
        }
        rays = std::move(kept);
    }
    return rays;
}

AffineCoords affine_coordinates(const std::vector<RationalVector>& points) {
    if (points.empty())
        throw InvariantError("affine_coordinates needs at least one point");
    const std::size_t n = points[0].size();

    RowReducer reducer;
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].size() != n)
            throw InvariantError("ragged point matrix");
        RationalVector diff(n);
        for (std::size_t j = 0; j < n; ++j)
            diff[j] = points[k][j] - points[0][j];
        reducer.absorb(std::move(diff));
    }

    AffineCoords ac;
    ac.pivots = reducer.pivot_columns();
    ac.coords.reserve(points.size());
    for (const auto& pt : points) {
        RationalVector u(ac.pivots.size());
        for (std::size_t j = 0; j < ac.pivots.size(); ++j)
            u[j] = pt[ac.pivots[j]] - points[0][ac.pivots[j]];
        ac.coords.push_back(std::move(u));
    }
    return ac;
}

FacetSystem enumerate_facets_of(const std::vector<RationalVector>& points) {
    const AffineCoords ac = affine_coordinates(points);
    const std::size_t d = ac.pivots.size() + 1;

    RationalMatrix cone_rows;
    cone_rows.reserve(points.size());
    for (const auto& u : ac.coords) {
        RationalVector row(d);
        row[0] = 1;
        for (std::size_t j = 0; j + 1 < d; ++j) row[j + 1] = u[j];
        cone_rows.push_back(std::move(row));
    }

    FacetSystem fs;
    fs.ambient_dim = static_cast<int>(points[0].size());
    fs.affine_dim = static_cast<int>(ac.pivots.size());
    fs.pivots = ac.pivots;

    for (auto& ray : extreme_rays(cone_rows)) {
        GenericFacet f;
        f.affine_bound = ray.y[0];
        f.affine.assign(ray.y.begin() + 1, ray.y.end());
        for (auto& x : f.affine) x = -x;
        f.tight = ray.zero;

        // scatter onto the pivot coordinates and shift by the base point
        RationalVector lifted(points[0].size(), 0);
        Rational bound(f.affine_bound);
        for (std::size_t j = 0; j < ac.pivots.size(); ++j) {
            lifted[ac.pivots[j]] = Rational(f.affine[j]);
            bound += Rational(f.affine[j]) * points[0][ac.pivots[j]];
        }
        lifted.push_back(bound);
        IntVector packed = to_integer(lifted);
        f.lifted_bound = packed.back();
        packed.pop_back();
        f.lifted = std::move(packed);
        fs.facets.push_back(std::move(f));
    }
    return fs;
}

DeterministicStrategy DeterministicStrategy::from_index(int lambda) {
    if (lambda < 0 || lambda >= kCount)
        throw InvariantError("strategy index out of range");
    const int alice = lambda >> 4, bob = (lambda >> 2) & 3, charlie = lambda & 3;
    return DeterministicStrategy{alice >> 1, alice & 1, bob >> 1,
                                 bob & 1,    charlie >> 1, charlie & 1};
}

int DeterministicStrategy::index() const {
    return ((a0 * 2 + a1) << 4) | ((b0 * 2 + b1) << 2) | (c0 * 2 + c1);
}

Behavior DeterministicStrategy::behavior() const {
    Behavior b{};
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            const int ax = x == 0 ? a0 : a1;
            const int cz = z == 0 ? c0 : c1;
            b.at(x, z, ax, b0, b1, cz) = 1.0;
        }
    return b;
}

const std::vector<Behavior>& lhv_vertices() {
    static const std::vector<Behavior> verts = [] {
        std::vector<Behavior> v;
        v.reserve(DeterministicStrategy::kCount);
        for (int i = 0; i < DeterministicStrategy::kCount; ++i) {
            Behavior b = DeterministicStrategy::from_index(i).behavior();
            b.validate();
            v.push_back(b);
        }
        return v;
    }();
    return verts;
}

namespace {

std::vector<RationalVector> vertex_points() {
    std::vector<RationalVector> pts;
    pts.reserve(DeterministicStrategy::kCount);
    for (const auto& b : lhv_vertices()) {
        RationalVector p(Behavior::kCells);
        for (int i = 0; i < Behavior::kCells; ++i)
            p[i] = Rational(static_cast<long>(std::lround(b.table[i])));
        pts.push_back(std::move(p));
    }
    return pts;
}

// zero-set of each behavior cell over the vertex family
std::array<RowMask, Behavior::kCells> cell_zero_masks() {
    std::array<RowMask, Behavior::kCells> masks{};
    const auto& verts = lhv_vertices();
    for (int i = 0; i < Behavior::kCells; ++i)
        for (std::size_t l = 0; l < verts.size(); ++l)
            if (verts[l].table[i] == 0.0) masks[i].set(l);
    return masks;
}

bool lexicographic_less(const InequalityVector& a, const InequalityVector& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        const int c = cmp(a.coeffs[i], b.coeffs[i]);
        if (c != 0) return c < 0;
    }
    return a.bound < b.bound;
}

struct ScenarioFacets {
    std::vector<InequalityVector> facets;
    int affine_dim = 0;
};

const ScenarioFacets& scenario_facets() {
    static const ScenarioFacets cached = [] {
        const FacetSystem fs = enumerate_facets_of(vertex_points());
        const auto cell_masks = cell_zero_masks();

        ScenarioFacets out;
        out.affine_dim = fs.affine_dim;
        for (const auto& f : fs.facets) {
            InequalityVector iv;
            iv.coeffs = f.lifted;
            iv.bound = f.lifted_bound;
            iv.tag = FacetTag::nontrivial;
            for (int i = 0; i < Behavior::kCells; ++i)
                if (f.tight == cell_masks[i]) {
                    // same supporting hyperplane as p_i >= 0; report it in
                    // the natural single-cell form
                    iv.coeffs.assign(Behavior::kCells, BigInt(0));
                    iv.coeffs[i] = -1;
                    iv.bound = 0;
                    iv.tag = FacetTag::positivity;
                    break;
                }
            out.facets.push_back(std::move(iv));
        }
        std::sort(out.facets.begin(), out.facets.end(), lexicographic_less);
        return out;
    }();
    return cached;
}

} // namespace

const std::vector<InequalityVector>& facet_enumeration() {
    return scenario_facets().facets;
}

int lhv_affine_dimension() { return scenario_facets().affine_dim; }

FacetCounts count_facets(const std::vector<InequalityVector>& facets) {
    FacetCounts c;
    for (const auto& f : facets) {
        if (f.tag == FacetTag::positivity)
            ++c.positivity;
        else
            ++c.nontrivial;
    }
    return c;
}

double InequalityVector::evaluate(const Behavior& b) const {
    double acc = 0.0;
    for (int i = 0; i < Behavior::kCells; ++i)
        if (sgn(coeffs[i]) != 0) acc += coeffs[i].get_d() * b.table[i];
    return acc;
}

RationalVector rationalize_behavior(const Behavior& b) {
    RationalVector q(Behavior::kCells);
    for (int i = 0; i < Behavior::kCells; ++i) {
        const long long num = std::llround(b.table[i] * 1e9);
        q[i] = Rational(static_cast<long>(num), 1000000000L);
        q[i].canonicalize();
    }
    return q;
}

namespace {

InequalityVector certificate_from_farkas(const RationalVector& y) {
    // y has one entry per behavior cell plus the normalization row; the
    // certificate reads y_cells.p <= -y_norm for every vertex.
    RationalVector packed(y.begin(), y.end());
    packed.back() = -packed.back();
    IntVector ints = to_integer(packed);

    InequalityVector iv;
    iv.bound = ints.back();
    ints.pop_back();
    iv.coeffs = std::move(ints);
    iv.tag = FacetTag::nontrivial;

    // guard: a broken certificate means the LP is wrong, never tolerate it
    for (const auto& v : lhv_vertices()) {
        BigInt value = 0;
        for (int i = 0; i < Behavior::kCells; ++i)
            if (v.table[i] != 0.0 && sgn(iv.coeffs[i]) != 0)
                value += iv.coeffs[i];
        if (value > iv.bound)
            throw InvariantError("Farkas certificate fails on a vertex");
    }
    return iv;
}

} // namespace

MembershipResult lp_membership(const Behavior& b) {
    b.validate();
    const RationalVector q = rationalize_behavior(b);
    const auto& verts = lhv_vertices();
    const int n = DeterministicStrategy::kCount;

    RationalMatrix a(Behavior::kCells + 1, RationalVector(n, 0));
    RationalVector rhs(Behavior::kCells + 1);
    for (int i = 0; i < Behavior::kCells; ++i) {
        for (int l = 0; l < n; ++l)
            a[i][l] = Rational(static_cast<long>(std::lround(verts[l].table[i])));
        rhs[i] = q[i];
    }
    for (int l = 0; l < n; ++l) a[Behavior::kCells][l] = 1;
    rhs[Behavior::kCells] = 1;

    const FeasibilityResult fr = solve_feasibility(a, rhs);

    MembershipResult mr;
    mr.feasible = fr.feasible;
    if (fr.feasible) {
        mr.weights = *fr.solution;
        mr.feasible_relaxed = true;
        return mr;
    }
    mr.violated_certificate = certificate_from_farkas(*fr.farkas);

    // epsilon-relaxed feasibility: allow each cell to move by at most
    // 1e-7 and ask the same question again.
    const Rational eps(1, 10000000L);
    const int cells = Behavior::kCells;
    const int vars = n + 2 * cells; // weights, deviations, deviation caps
    RationalMatrix ra(2 * cells + 1, RationalVector(vars, 0));
    RationalVector rb(2 * cells + 1);
    for (int i = 0; i < cells; ++i) {
        for (int l = 0; l < n; ++l) ra[i][l] = a[i][l];
        ra[i][n + i] = 1;
        rb[i] = q[i] + eps;
        ra[cells + i][n + i] = 1;
        ra[cells + i][n + cells + i] = 1;
        rb[cells + i] = 2 * eps;
    }
    for (int l = 0; l < n; ++l) ra[2 * cells][l] = 1;
    rb[2 * cells] = 1;
    mr.feasible_relaxed = solve_feasibility(ra, rb).feasible;
    return mr;
}

std::vector<double> evaluate_inequalities(
    const Behavior& b, const std::vector<InequalityVector>& ineqs) {
    std::vector<double> scores;
    scores.reserve(ineqs.size());
    for (const auto& iv : ineqs) {
        double norm = std::abs(iv.bound.get_d());
        if (norm == 0.0) {
            // homogeneous facet: scale by the largest vertex magnitude
            BigInt best = 0;
            for (const auto& v : lhv_vertices()) {
                BigInt value = 0;
                for (int i = 0; i < Behavior::kCells; ++i)
                    if (v.table[i] != 0.0 && sgn(iv.coeffs[i]) != 0)
                        value += iv.coeffs[i];
                mpz_abs(value.get_mpz_t(), value.get_mpz_t());
                if (value > best) best = value;
            }
            if (best == 0)
                throw InvariantError("inequality vanishes on every vertex");
            norm = best.get_d();
        }
        scores.push_back((iv.evaluate(b) - iv.bound.get_d()) / norm);
    }
    return scores;
}

Rational no_signaling_maximum(const InequalityVector& ineq) {
    // Variables: the 64 cells. Equalities: per-setting normalization,
    // plus marginal-match rows for each station.
    RationalMatrix a;
    RationalVector b;
    const auto row_of = [](auto&& fill) {
        RationalVector row(Behavior::kCells, 0);
        fill(row);
        return row;
    };

    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            a.push_back(row_of([&](RationalVector& row) {
                for (int o = 0; o < Behavior::kOutcomes; ++o)
                    row[(x * 2 + z) * Behavior::kOutcomes + o] = 1;
            }));
            b.push_back(1);
        }

    // Alice's marginal must agree between z = 0 and z = 1
    for (int x = 0; x < 2; ++x)
        for (int aa = 0; aa < 2; ++aa) {
            a.push_back(row_of([&](RationalVector& row) {
                for (int b0 = 0; b0 < 2; ++b0)
                    for (int b1 = 0; b1 < 2; ++b1)
                        for (int c = 0; c < 2; ++c) {
                            row[Behavior::cell_index(x, 0, aa, b0, b1, c)] += 1;
                            row[Behavior::cell_index(x, 1, aa, b0, b1, c)] -= 1;
                        }
            }));
            b.push_back(0);
        }
    // Charlie's marginal must agree between x = 0 and x = 1
    for (int z = 0; z < 2; ++z)
        for (int cc = 0; cc < 2; ++cc) {
            a.push_back(row_of([&](RationalVector& row) {
                for (int b0 = 0; b0 < 2; ++b0)
                    for (int b1 = 0; b1 < 2; ++b1)
                        for (int aa = 0; aa < 2; ++aa) {
                            row[Behavior::cell_index(0, z, aa, b0, b1, cc)] += 1;
                            row[Behavior::cell_index(1, z, aa, b0, b1, cc)] -= 1;
                        }
            }));
            b.push_back(0);
        }
    // the middle marginal must not depend on either input
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int s = 1; s < 4; ++s) {
                const int x = s >> 1, z = s & 1;
                a.push_back(row_of([&](RationalVector& row) {
                    for (int aa = 0; aa < 2; ++aa)
                        for (int cc = 0; cc < 2; ++cc) {
                            row[Behavior::cell_index(0, 0, aa, b0, b1, cc)] += 1;
                            row[Behavior::cell_index(x, z, aa, b0, b1, cc)] -= 1;
                        }
                }));
                b.push_back(0);
            }

    RationalVector c(Behavior::kCells);
    for (int i = 0; i < Behavior::kCells; ++i) c[i] = Rational(ineq.coeffs[i]);

    const LpResult lr = maximize(a, b, c);
    if (lr.status != LpResult::Status::optimal)
        throw InvariantError("no-signaling LP did not reach an optimum");
    return lr.objective;
}

void save_facets(const std::vector<InequalityVector>& facets,
                 const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const auto& f : facets) {
        for (const auto& c : f.coeffs) out << c.get_str() << '\t';
        out << f.bound.get_str() << '\n';
    }
    if (!out) throw IoError("write failed on " + path);
}

std::vector<InequalityVector> load_facets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    const auto cell_masks = cell_zero_masks();
    const auto& verts = lhv_vertices();

    std::vector<InequalityVector> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream is(line);
        std::vector<BigInt> vals;
        std::string tok;
        while (is >> tok) {
            try {
                vals.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw IoError(path + ":" + std::to_string(lineno) +
                              ": not an integer: " + tok);
            }
        }
        if (vals.size() != Behavior::kCells + 1)
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": expected 65 fields, got " +
                          std::to_string(vals.size()));

        InequalityVector iv;
        iv.bound = vals.back();
        vals.pop_back();
        iv.coeffs = std::move(vals);

        RowMask tight;
        for (std::size_t l = 0; l < verts.size(); ++l) {
            BigInt value = 0;
            for (int i = 0; i < Behavior::kCells; ++i)
                if (verts[l].table[i] != 0.0 && sgn(iv.coeffs[i]) != 0)
                    value += iv.coeffs[i];
            if (value > iv.bound)
                throw IoError(path + ":" + std::to_string(lineno) +
                              ": inequality is violated by a deterministic "
                              "strategy");
            if (value == iv.bound) tight.set(l);
        }
        iv.tag = FacetTag::nontrivial;
        for (int i = 0; i < Behavior::kCells; ++i)
            if (tight == cell_masks[i]) {
                iv.tag = FacetTag::positivity;
                break;
            }
        out.push_back(std::move(iv));
    }
    return out;
}

} // namespace bilocal
