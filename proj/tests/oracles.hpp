#pragma once

// Independent reference implementations used only by tests: naive modular
// rank, brute-force group element enumeration, naive exact cover, and
// set-orbit closures. These deliberately avoid the production code paths.

#include <cstdint>
#include <set>
#include <vector>

#include "spreads/bits.hpp"
#include "spreads/geometry.hpp"
#include "spreads/perm.hpp"

namespace spreads::oracle {

// Plain Gaussian elimination over Z/p on an int matrix.
int naive_rank_mod_p(std::vector<std::vector<int>> m, int p);

// Closure of a generator list under composition (BFS), capped.
std::vector<Perm> enumerate_group(const std::vector<Perm>& gens, size_t cap = 300000);

// All exact covers by unpruned backtracking over rows in index order.
// rows[i] = set of covered columns; returns sorted row-index sets.
std::vector<std::vector<uint32_t>> naive_exact_cover(
    const std::vector<std::vector<uint16_t>>& rows, uint16_t n_cols);

// Orbit of a sorted set under the generator closure (BFS on sets).
std::set<std::vector<pt>> set_orbit(const std::vector<Perm>& gens, const std::vector<pt>& s,
                                    size_t cap = 2000000);

// Partition a family of sorted sets into orbits under gens; returns class count.
size_t orbit_partition_count(const std::vector<Perm>& gens,
                             const std::vector<std::vector<pt>>& sets);

// Lexicographically least image of a set over an explicitly enumerated group.
std::vector<pt> brute_min_image(const std::vector<Perm>& all_elements,
                                const std::vector<pt>& s);

}  // namespace spreads::oracle
