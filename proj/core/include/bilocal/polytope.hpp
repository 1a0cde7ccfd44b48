#pragma once

// Exact polytope machinery for the local-hidden-variable set of the
// three-station network: deterministic vertices, LP membership with
// certificates, facet enumeration by double description, and batch
// inequality evaluation. Everything discrete runs in exact rational
// arithmetic; floating point only enters when scoring float behaviors.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bilocal/network.hpp"
#include "bilocal/rational_lp.hpp"

namespace bilocal {

// ---------------------------------------------------------------------
// Generic exact convex-hull tooling (dimension-agnostic, small scale).

// Zero-set bitmask over up to 128 constraint rows.
struct RowMask {
    std::array<std::uint64_t, 2> bits{};

    void set(std::size_t i) { bits[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const {
        return (bits[i / 64] >> (i % 64)) & 1;
    }
    RowMask operator&(const RowMask& o) const {
        return RowMask{{bits[0] & o.bits[0], bits[1] & o.bits[1]}};
    }
    bool subset_of(const RowMask& o) const {
        return (bits[0] & ~o.bits[0]) == 0 && (bits[1] & ~o.bits[1]) == 0;
    }
    int count() const;
    bool operator==(const RowMask&) const = default;
};

struct ConeRay {
    std::vector<BigInt> y;  // integer, gcd 1
    RowMask zero;           // rows satisfied with equality
};

// Extreme rays of the pointed cone {y : R y >= 0}. The rows must span the
// full space (otherwise the cone has lineality and the enumeration is
// rejected). At most 128 rows.
std::vector<ConeRay> extreme_rays(const RationalMatrix& rows);

// Affine-hull coordinates of a finite point family: the first point is
// the origin, `pivots` are the coordinate axes kept, and coords[k] are
// the points rewritten in those coordinates.
struct AffineCoords {
    std::vector<int> pivots;
    std::vector<RationalVector> coords;
};
AffineCoords affine_coordinates(const std::vector<RationalVector>& points);

// One facet of conv(points): valid as lifted.x <= lifted_bound over the
// original coordinates, and as affine.u <= affine_bound over the reduced
// coordinates. `tight` marks the points on the facet.
struct GenericFacet {
    std::vector<BigInt> lifted;
    BigInt lifted_bound;
    std::vector<BigInt> affine;
    BigInt affine_bound;
    RowMask tight;
};

struct FacetSystem {
    int ambient_dim = 0;
    int affine_dim = 0;
    std::vector<int> pivots;
    std::vector<GenericFacet> facets;
};

// Complete facet description of conv(points) within its affine hull.
FacetSystem enumerate_facets_of(const std::vector<RationalVector>& points);

// ---------------------------------------------------------------------
// The network's local deterministic polytope.

// One deterministic assignment: outer stations respond to their binary
// inputs, the middle station emits its two bits unconditionally.
struct DeterministicStrategy {
    int a0, a1; // Alice's output for x = 0, 1
    int b0, b1; // middle-station bits
    int c0, c1; // Charlie's output for z = 0, 1

    static constexpr int kCount = 64;
    static DeterministicStrategy from_index(int lambda);
    int index() const;
    Behavior behavior() const;
};

// All 64 deterministic behaviors, indexed by strategy index.
const std::vector<Behavior>& lhv_vertices();

enum class FacetTag { positivity, nontrivial };

// A linear inequality coeffs.p <= bound over behavior tables, in canonical
// integer form: entries share no common divisor. Positivity facets are
// reported in their natural single-cell form.
struct InequalityVector {
    std::vector<BigInt> coeffs; // one per behavior cell
    BigInt bound;
    FacetTag tag = FacetTag::nontrivial;

    double evaluate(const Behavior& b) const;
};

struct FacetCounts {
    int positivity = 0;
    int nontrivial = 0;
};

// Complete facet list of the deterministic polytope, lexicographically
// ordered by coefficient vector. Computed once and cached.
const std::vector<InequalityVector>& facet_enumeration();

int lhv_affine_dimension();
FacetCounts count_facets(const std::vector<InequalityVector>& facets);

// Result of the exact membership test after rationalizing the behavior
// at denominator 10^9. On the infeasible branch the certificate is a
// valid inequality violated by the behavior, and the epsilon-relaxed
// LP (slack 1e-7 per cell) distinguishes round-off from real exclusion.
struct MembershipResult {
    bool feasible = false;
    RationalVector weights;
    std::optional<InequalityVector> violated_certificate;
    bool feasible_relaxed = false;
};

MembershipResult lp_membership(const Behavior& b);

// Rationalization used by lp_membership, exposed for exact cross-checks.
RationalVector rationalize_behavior(const Behavior& b);

// Rescaled violation scores: positive iff the inequality is violated.
// Scores divide by |bound|, or by the largest |value on a vertex| for
// homogeneous inequalities.
std::vector<double> evaluate_inequalities(
    const Behavior& b, const std::vector<InequalityVector>& ineqs);

// Largest value of the functional over the no-signaling set, used to
// check that a facet actually separates nonlocal points.
Rational no_signaling_maximum(const InequalityVector& ineq);

// Tab-separated export/import: 64 coefficients then the bound per line.
// Loading re-derives tags and rejects inequalities violated by a vertex.
void save_facets(const std::vector<InequalityVector>& facets,
                 const std::string& path);
std::vector<InequalityVector> load_facets(const std::string& path);

} // namespace bilocal
