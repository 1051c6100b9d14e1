#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "spreads/bigint.hpp"
#include "spreads/bits.hpp"
#include "spreads/geometry.hpp"
#include "spreads/search.hpp"

namespace spreads {

// Projective translation plane of order n = q^2 built from a spread: affine
// points are the q^4 vectors, affine lines the cosets of the spread components,
// plus the points and line at infinity.
struct TranslationPlane {
    int q = 0;
    int n = 0;        // plane order q^2
    int n_pts = 0;    // n^2 + n + 1
    int n_lns = 0;    // equal
    BitMatrix incidence;  // rows = lines, cols = points
};

// Throws std::invalid_argument if the input is not a spread (a plane axiom
// would fail). A deterministic sample of point pairs is checked against the
// axioms after construction.
TranslationPlane build_plane(const Geometry& g, const Spread& s);

// Rank of the incidence matrix over GF(p). Packed XOR elimination for p = 2,
// uint16-lane elimination with lazy reduction for odd p. OpenMP-parallel when
// available; the matrix is copied, not modified.
int p_rank(const TranslationPlane& pl, int p);
// Serial reference implementation kept for testing and benchmarking.
int p_rank_serial(const TranslationPlane& pl, int p);

// Rank of an arbitrary 0/1 matrix over GF(p) (the same kernels).
int matrix_rank_mod_p(const BitMatrix& m, int p, bool parallel);

// C(p+1, 2)^m + 1.
BigUint hamada_bound(int p, int m);

// Per-plane rank record against the Hamada value for the plane's order.
struct RankReport {
    int plane_id = 0;
    int p = 0;
    int rank = 0;
    BigUint bound;            // Hamada value for order p^m
    bool meets_bound = false; // rank == bound
};

// Ranks the plane and fills the comparison (plane order must be a power of p).
RankReport rank_report(int plane_id, const TranslationPlane& pl, int p);

// (rank, count) rows sorted by rank.
std::map<int, int> rank_histogram(const std::vector<int>& ranks);

// Sparse "row col" triplet dump of the incidence matrix (1-based).
void dump_incidence(const TranslationPlane& pl, std::ostream& os);

}  // namespace spreads
