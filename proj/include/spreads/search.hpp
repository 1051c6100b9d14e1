#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spreads/bigint.hpp"
#include "spreads/bits.hpp"
#include "spreads/geometry.hpp"
#include "spreads/group.hpp"
#include "spreads/group_search.hpp"

namespace spreads {

// A spread: q^2+1 pairwise disjoint lines covering every point.
struct Spread {
    std::vector<pt> lines;  // sorted
};

// Starter based at the excluded line ell (always line id 0 here): q+1 pairwise
// disjoint lines, one through each point of ell.
struct Starter {
    pt base_line = 0;
    std::vector<pt> lines;  // ordered by the incident point of the base line
    std::vector<pt> sorted_lines() const;
};

// Orderly enumeration of starter representatives at ell = line 0 under the
// stabilizer of ell in `ext_group` (the duality-extended group).
std::vector<Starter> enumerate_starters(const Geometry& g,
                                        std::shared_ptr<const StabChain> ext_group,
                                        uint64_t seed = 0x57a97e5);

// Number of lines meeting every line of S.
uint32_t transversal_count(const Geometry& g, const std::vector<pt>& member_lines);

struct IdentityCheckRow {
    uint32_t starter = 0;
    BigUint orbit_size;  // |G| / |G_S|
    BigUint stab_order;  // |G_S|
    uint32_t transversals = 0;
};

struct IdentityCheckReport {
    BigUint lhs, rhs;
    bool ok = false;
    std::vector<IdentityCheckRow> rows;
};

// The stage-1 completeness identity:
//   #lines * prod_{j=0}^{q} (q^2+q - j q)  ==  sum_S (|G| / |G_S|) * t(S).
IdentityCheckReport starter_identity_check(const Geometry& g,
                                           std::shared_ptr<const StabChain> ext_group,
                                           const std::vector<Starter>& starters,
                                           uint64_t seed = 0xc01d57a7);

// Exact cover instance: columns are uncovered points, rows are candidate lines.
struct ExactCoverInstance {
    std::vector<pt> fixed_lines;         // part of every solution (the starter)
    std::vector<pt> cols;                // uncovered point ids
    std::vector<pt> row_line;            // row index -> line id
    std::vector<std::vector<uint32_t>> col_rows;  // per column: covering rows
    BitMatrix conflict;                  // row x row: share a point
    std::vector<std::vector<uint16_t>> row_cols;  // per row: covered column indices
};

ExactCoverInstance build_instance(const Geometry& g, const Starter& s);

// Every exact cover (set of rows covering each column once), emitted as sorted
// row-index lists, in a deterministic order. Returns the solution count.
uint64_t exact_cover_solve(const ExactCoverInstance& inst,
                           const std::function<void(const std::vector<uint32_t>&)>& emit);

// Convenience: solutions as complete spreads (fixed lines + chosen rows).
uint64_t complete_starter(const Geometry& g, const ExactCoverInstance& inst,
                          const std::function<void(const Spread&)>& emit);

// All labeled spreads by exact cover over the whole geometry, no symmetry
// reduction. Guarded to q <= 3 unless `allow_large`.
std::vector<Spread> spreads_from_scratch(const Geometry& g, bool allow_large = false);

// Is this line set a spread? (pairwise disjoint, exact point cover, size q^2+1)
bool is_spread(const Geometry& g, const std::vector<pt>& lines);

}  // namespace spreads
