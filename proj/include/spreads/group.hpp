#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "spreads/bigint.hpp"
#include "spreads/perm.hpp"

namespace spreads {

struct BuildOptions {
    // When set, chain construction may stop as soon as the product of the
    // fundamental orbit lengths reaches this value. The product of orbit
    // lengths of any partial chain is a lower bound on |<gens>|, so reaching
    // a known upper bound proves the chain complete; no verification needed.
    std::optional<BigUint> known_order;
    // Run the deterministic Schreier-generator closure (ignored when
    // known_order was supplied and reached).
    bool verify = true;
    uint64_t seed = 0x5eed1e5 /* arbitrary fixed default */;
    // Byte budget for cached explicit transversal rows (speeds up sifting on
    // big chains; Schreier-vector walks are used beyond the budget).
    size_t explicit_budget = size_t(64) << 20;
};

// Stabilizer chain (base and strong generating set) of a permutation group.
// Immutable after construction; concurrent reads are safe.
class StabChain : public std::enable_shared_from_this<StabChain> {
public:
    static std::shared_ptr<const StabChain> trivial(size_t degree);
    static std::shared_ptr<const StabChain> build(size_t degree, std::vector<Perm> gens,
                                                  const BuildOptions& opts = {});

    size_t degree() const { return degree_; }
    const BigUint& order() const { return order_; }
    bool is_trivial() const { return levels_.empty(); }
    size_t num_levels() const { return levels_.size(); }
    pt base_point(size_t level) const { return levels_[level].base; }
    size_t orbit_size(size_t level) const { return levels_[level].orbit.size(); }
    const std::vector<pt>& fundamental_orbit(size_t level) const { return levels_[level].orbit; }

    // Generators of the level-k group (k = 0: the whole group).
    std::vector<Perm> level_generators(size_t level) const;
    const std::vector<Perm>& strong_gens() const { return sgs_; }

    bool contains(const Perm& g) const;
    // Strips g through the chain; *stuck (if given) receives the level at
    // which stripping stopped (num_levels() if fully stripped).
    Perm sift(const Perm& g, size_t* stuck = nullptr) const;

    // u with u(base[level]) = beta; beta must lie in the fundamental orbit.
    Perm transversal(size_t level, pt beta) const;
    bool in_fundamental_orbit(size_t level, pt x) const {
        return levels_[level].pos[x] >= 0;
    }

    Perm random_element(std::mt19937_64& rng) const;

    // Orbit of x under the whole group.
    std::vector<pt> orbit_of(pt x) const;

    // Stabilizer of the point m, as a new chain. Uses base conjugation when m
    // lies in the fundamental orbit, otherwise a random Schreier construction
    // terminated by the exact orbit-stabilizer order (both paths yield proven
    // complete chains).
    std::shared_ptr<const StabChain> stabilizer_of_point(pt m, std::mt19937_64& rng) const;

    // Enumerates all elements (intended for oracle tests on small groups).
    // Throws if the order exceeds `cap`.
    void for_each_element(const std::function<void(const Perm&)>& f,
                          uint64_t cap = 1u << 22) const;

private:
    struct Level {
        pt base = 0;
        std::vector<int> gen_idx;          // indices into sgs_
        std::vector<pt> orbit;             // BFS order, orbit[0] == base
        std::vector<int32_t> pos;          // degree-sized; position in orbit or -1
        std::vector<int32_t> parent_pos;   // per orbit position; -1 at base
        std::vector<int32_t> via;          // per orbit position; index into sgs_
        std::vector<std::vector<pt>> tv;   // cached explicit u_beta rows (may be empty)
    };

    StabChain() = default;
    friend class ChainBuilder;

    void sift_level_inplace(size_t level, pt beta, std::vector<pt>& h) const;
    void build_transversal(size_t level, pt beta, std::vector<pt>& out) const;

    size_t degree_ = 0;
    BigUint order_ = BigUint(1);
    std::vector<Perm> sgs_;
    std::vector<Perm> sgs_inv_;
    std::vector<Level> levels_;
};

// Orbit partition of the full domain under a generator list, stored as a
// forest rooted at each orbit's minimum point (BFS in ascending point order,
// so the structure is deterministic).
struct OrbitForest {
    std::vector<pt> root;        // per point: minimum of its orbit
    std::vector<int32_t> parent; // per point: BFS parent, -1 at roots
    std::vector<int32_t> via;    // per point: generator index used, -1 at roots
    std::vector<Perm> gens;      // the generators (with inverses alongside)
    std::vector<Perm> gen_inv;

    // Applies the element mapping c to its orbit root to the single point x.
    pt map_via_root(pt c, pt x) const;
    // Same element applied to many points (in place).
    void map_via_root_multi(pt c, std::vector<pt>& xs) const;
    // Materialize that element.
    Perm element_to_root(pt c) const;
};

OrbitForest make_orbit_forest(size_t degree, std::vector<Perm> gens);

}  // namespace spreads
