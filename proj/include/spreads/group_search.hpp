#pragma once

#include <map>
#include <memory>
#include <vector>

#include "spreads/group.hpp"

namespace spreads {

// Lexicographically-least-image computations over one fixed group. Point
// stabilizers discovered along image prefixes are cached in a trie, because
// canonical images of related sets walk the same prefixes over and over.
// Not thread-safe; use one engine per thread (the underlying chain is shared).
class MinImageEngine {
public:
    explicit MinImageEngine(std::shared_ptr<const StabChain> group,
                            uint64_t seed = 0x1f2e3d4c, size_t cache_bytes = size_t(384) << 20);

    const StabChain& group() const { return *group_; }

    // The lexicographically least set in the orbit of S (S must be sorted).
    // If `tracked` is non-null it is replaced by its image under the
    // transporter achieving the minimum; if `transporter` is non-null the
    // full permutation is returned (slower).
    std::vector<pt> min_image(const std::vector<pt>& S, pt* tracked = nullptr,
                              Perm* transporter = nullptr);

    // true iff S is the least element of its own orbit (early-exit variant).
    bool is_canonical(const std::vector<pt>& S);

private:
    struct Node {
        std::shared_ptr<const StabChain> chain;
        std::unique_ptr<OrbitForest> forest;
        std::map<pt, std::unique_ptr<Node>> kids;
    };

    struct Cand {
        std::vector<pt> rest;
        pt tracked = 0;
        Perm g;  // populated only when a transporter was requested
    };

    Node* child(Node* n, pt m, std::vector<std::unique_ptr<Node>>& scratch);
    const OrbitForest& forest_of(Node* n);
    // Core search; returns false (non-canonical) as soon as a smaller image
    // element is proven when `canonical_check` is set.
    bool run(const std::vector<pt>& S, bool canonical_check, std::vector<pt>* image,
             pt* tracked, Perm* transporter);

    std::shared_ptr<const StabChain> group_;
    Node root_;
    std::mt19937_64 rng_;
    size_t cache_budget_;
    size_t cache_used_ = 0;
};

// Setwise stabilizer computed by backtrack over an S-adapted stabilizer
// tower with orbit pruning by the already-found subgroup.
struct SetwiseStab {
    std::vector<Perm> gens;  // generate the stabilizer (may include redundant gens)
    BigUint order;           // exact
};

SetwiseStab setwise_stabilizer(std::shared_ptr<const StabChain> group,
                               const std::vector<pt>& S, uint64_t seed = 0xbacca1a);

}  // namespace spreads
