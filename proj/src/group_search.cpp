#include "spreads/group_search.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace spreads {

namespace {

struct VecHash {
    size_t operator()(const std::vector<pt>& v) const {
        uint64_t h = 1469598103934665603ull;
        for (pt x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return (size_t)h;
    }
};

}  // namespace

MinImageEngine::MinImageEngine(std::shared_ptr<const StabChain> group, uint64_t seed,
                               size_t cache_bytes)
    : group_(std::move(group)), rng_(seed), cache_budget_(cache_bytes) {
    root_.chain = group_;
}

const OrbitForest& MinImageEngine::forest_of(Node* n) {
    if (!n->forest)
        n->forest = std::make_unique<OrbitForest>(
            make_orbit_forest(n->chain->degree(), n->chain->level_generators(0)));
    return *n->forest;
}

MinImageEngine::Node* MinImageEngine::child(Node* n, pt m,
                                            std::vector<std::unique_ptr<Node>>& scratch) {
    auto it = n->kids.find(m);
    if (it != n->kids.end()) return it->second.get();
    auto sub = n->chain->stabilizer_of_point(m, rng_);
    if (sub.get() == n->chain.get()) return n;  // m already fixed by the group
    auto node = std::make_unique<Node>();
    node->chain = sub;
    Node* raw = node.get();
    size_t bytes = (sub->strong_gens().size() * 2 + 6) * sub->degree() * sizeof(pt);
    if (cache_used_ + bytes <= cache_budget_) {
        cache_used_ += bytes;
        n->kids.emplace(m, std::move(node));
    } else {
        scratch.push_back(std::move(node));
    }
    return raw;
}

bool MinImageEngine::run(const std::vector<pt>& S, bool canonical_check,
                         std::vector<pt>* image, pt* tracked, Perm* transporter) {
    const bool want_perm = transporter != nullptr;
    std::vector<std::unique_ptr<Node>> scratch;
    std::vector<Cand> cands(1);
    cands[0].rest = S;
    cands[0].tracked = tracked ? *tracked : 0;
    if (want_perm) cands[0].g = Perm(group_->degree());
    if (image) image->clear();

    Node* node = &root_;
    size_t k = 0;
    while (!cands[0].rest.empty()) {
        if (node->chain->is_trivial()) {
            // No group left: the minimum is the least remaining candidate.
            size_t best = 0;
            for (size_t i = 1; i < cands.size(); ++i)
                if (cands[i].rest < cands[best].rest) best = i;
            if (canonical_check) {
                // identity candidate survives with rest == S[k..], so the best
                // is <= it; canonical iff equal
                for (size_t i = 0; i < cands[best].rest.size(); ++i)
                    if (cands[best].rest[i] != S[k + i]) return false;
                return true;
            }
            if (image)
                image->insert(image->end(), cands[best].rest.begin(), cands[best].rest.end());
            if (tracked) *tracked = cands[best].tracked;
            if (transporter) *transporter = cands[best].g;
            return true;
        }

        const OrbitForest& fo = forest_of(node);
        pt m = (pt)(group_->degree());
        for (const Cand& c : cands)
            for (pt x : c.rest) m = std::min(m, fo.root[x]);
        if (canonical_check) {
            if (m < S[k]) return false;
            // m == S[k]: the identity candidate guarantees m <= S[k]
        }
        if (image) image->push_back(m);

        std::vector<Cand> next;
        std::unordered_set<std::vector<pt>, VecHash> seen;
        for (const Cand& c : cands) {
            for (size_t i = 0; i < c.rest.size(); ++i) {
                pt x = c.rest[i];
                if (fo.root[x] != m) continue;
                Cand nc;
                nc.rest.reserve(c.rest.size() - 1);
                for (size_t j = 0; j < c.rest.size(); ++j)
                    if (j != i) nc.rest.push_back(c.rest[j]);
                fo.map_via_root_multi(x, nc.rest);
                std::sort(nc.rest.begin(), nc.rest.end());
                if (!seen.insert(nc.rest).second) continue;
                nc.tracked = fo.map_via_root(x, c.tracked);
                if (want_perm) nc.g = fo.element_to_root(x) * c.g;
                next.push_back(std::move(nc));
            }
        }
        cands = std::move(next);
        node = child(node, m, scratch);
        ++k;
    }
    if (canonical_check) return true;
    if (tracked) *tracked = cands[0].tracked;
    if (transporter) *transporter = cands[0].g;
    return true;
}

std::vector<pt> MinImageEngine::min_image(const std::vector<pt>& S, pt* tracked,
                                          Perm* transporter) {
    std::vector<pt> image;
    run(S, false, &image, tracked, transporter);
    return image;
}

bool MinImageEngine::is_canonical(const std::vector<pt>& S) {
    return run(S, true, nullptr, nullptr, nullptr);
}

// ---------------------------------------------------------------------------
// Setwise stabilizer backtrack.
// ---------------------------------------------------------------------------

namespace {

struct TowerLevel {
    std::shared_ptr<const StabChain> chain;  // C_d, pointwise stab of x_0..x_{d-1}
    pt x = 0;                                // chosen base point (in S)
    // orbit tree of x under C_d (point-indexed)
    std::vector<pt> orbit;
    std::vector<int32_t> parent, via;
    std::vector<Perm> gens, gen_inv;
    // orbit partition of the full domain under C_d, plus how many of the
    // adapted base points x_d.. live in each orbit (for feasibility pruning)
    std::vector<int32_t> orbid;
    std::vector<int32_t> need;
};

struct SetStabSearch {
    size_t n;
    std::vector<pt> S;
    std::vector<char> in_S;
    std::vector<TowerLevel> tower;
    std::shared_ptr<const StabChain> pointwise;  // C_m

    // found subgroup K (its action on the domain), pruning tables
    std::vector<Perm> kgens;
    std::unordered_set<uint64_t> kgen_hashes;
    // per level: orbit minima of the subgroup of K generated by the K-gens
    // fixing x_0..x_{d-1}; конservative (finer) orbits are still valid prunes
    std::vector<std::vector<pt>> komin;
    bool komin_dirty = true;

    std::vector<std::vector<pt>> prefix;      // P_d as image arrays
    std::vector<std::vector<pt>> prefix_inv;  // P_d^{-1}
    uint64_t nodes = 0;

    void rebuild_komin() {
        komin.assign(tower.size(), {});
        std::vector<Perm> cur = kgens;
        for (size_t d = 0; d < tower.size(); ++d) {
            OrbitForest fo = make_orbit_forest(n, cur);
            komin[d] = fo.root;
            // keep only the generators fixing x_d for the next level
            std::vector<Perm> nxt;
            for (const Perm& g : cur)
                if (g[tower[d].x] == tower[d].x) nxt.push_back(g);
            cur = std::move(nxt);
        }
        komin_dirty = false;
    }

    void found(const std::vector<pt>& g_images) {
        Perm g = Perm::from_images(std::vector<pt>(g_images));
        uint64_t h = g.hash();
        if (!kgen_hashes.insert(h).second) return;
        kgens.push_back(std::move(g));
        komin_dirty = true;
    }

    bool feasible(size_t d_next, const std::vector<pt>& pinv) {
        if (d_next >= tower.size()) return true;
        const TowerLevel& tl = tower[d_next];
        // count S-preimages per orbit of C_{d_next}
        // (small arrays; n_orbits <= n)
        thread_local std::vector<int32_t> cnt;
        cnt.assign(tl.need.size(), 0);
        for (pt s : S) {
            int32_t o = tl.orbid[pinv[s]];
            if (o >= 0 && o < (int32_t)cnt.size()) ++cnt[o];
        }
        for (size_t o = 0; o < tl.need.size(); ++o)
            if (tl.need[o] > cnt[o]) return false;
        return true;
    }

    // Returns true if the subtree produced a stabilizer element. `find_first`
    // stops a non-spine subtree at its first witness: if g and h share the
    // image prefix that departed from the spine at depth l, then h g^{-1}
    // fixes x_0..x_{l-1} and lies in the subgroup the spine search at depth l
    // generates, so one witness per departing branch suffices.
    bool dfs(size_t d, bool spine, bool find_first) {
        ++nodes;
        if (d == tower.size()) {
            const std::vector<pt>& P = prefix[d];
            for (pt s : S)
                if (!in_S[P[s]]) return false;
            bool is_id = true;
            for (size_t i = 0; i < n && is_id; ++i)
                if (P[i] != i) is_id = false;
            if (!is_id) found(P);
            return true;
        }
        const TowerLevel& tl = tower[d];
        const std::vector<pt>& P = prefix[d];
        const std::vector<pt>& Pinv = prefix_inv[d];
        // candidate images ascending, the spine image first when present
        std::vector<std::pair<pt, pt>> cand;  // (image v, orbit point beta)
        for (pt beta : tl.orbit) {
            pt v = P[beta];
            if (!in_S[v]) continue;
            cand.push_back({v, beta});
        }
        std::sort(cand.begin(), cand.end());
        if (spine) {
            for (size_t i = 0; i < cand.size(); ++i)
                if (cand[i].first == tl.x) {
                    std::rotate(cand.begin(), cand.begin() + i, cand.begin() + i + 1);
                    break;
                }
        }
        bool any = false;
        std::vector<pt> u(n), uinv(n);
        for (auto [v, beta] : cand) {
            if (spine && v != tl.x) {
                // representative per K-orbit: smaller candidates came first
                if (komin_dirty) rebuild_komin();
                if (komin[d][v] < v) continue;
            }
            // u = transversal element with u(x_d) = beta
            for (size_t i = 0; i < n; ++i) u[i] = (pt)i;
            {
                std::vector<int> path;
                pt curp = beta;
                while (tl.parent[curp] >= 0) {
                    path.push_back(tl.via[curp]);
                    curp = (pt)tl.parent[curp];
                }
                for (auto it = path.rbegin(); it != path.rend(); ++it) {
                    const Perm& g = tl.gens[*it];
                    for (size_t i = 0; i < n; ++i) u[i] = g[u[i]];
                }
            }
            for (size_t i = 0; i < n; ++i) uinv[u[i]] = (pt)i;
            std::vector<pt>& P2 = prefix[d + 1];
            std::vector<pt>& P2inv = prefix_inv[d + 1];
            P2.resize(n);
            P2inv.resize(n);
            for (size_t i = 0; i < n; ++i) P2[i] = P[u[i]];
            for (size_t i = 0; i < n; ++i) P2inv[i] = uinv[Pinv[i]];
            if (!feasible(d + 1, P2inv)) continue;
            bool child_spine = spine && v == tl.x;
            bool hit = dfs(d + 1, child_spine, find_first || (spine && !child_spine));
            any = any || hit;
            if (find_first && hit) return true;
        }
        return any;
    }
};

}  // namespace

SetwiseStab setwise_stabilizer(std::shared_ptr<const StabChain> group,
                               const std::vector<pt>& S_in, uint64_t seed) {
    SetwiseStab out;
    const size_t n = group->degree();
    std::vector<pt> S = S_in;
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    if (S.empty() || group->is_trivial()) {
        out.gens = group->level_generators(0);
        out.order = group->order();
        return out;
    }

    std::mt19937_64 rng(seed);
    SetStabSearch st;
    st.n = n;
    st.S = S;
    st.in_S.assign(n, 0);
    for (pt s : S) st.in_S[s] = 1;

    // Adapted tower: repeatedly stabilize the S-point with the largest orbit.
    std::shared_ptr<const StabChain> C = std::move(group);
    while (true) {
        std::vector<Perm> gens = C->level_generators(0);
        if (gens.empty()) break;
        // orbit sizes of S-points under C
        OrbitForest fo = make_orbit_forest(n, gens);
        std::vector<int32_t> osize;
        std::vector<int32_t> oid(n, -1);
        int32_t next_id = 0;
        for (size_t i = 0; i < n; ++i)
            if (fo.root[i] == i) {
                oid[i] = next_id++;
                osize.push_back(0);
            }
        for (size_t i = 0; i < n; ++i) {
            oid[i] = oid[fo.root[i]];
            ++osize[oid[i]];
        }
        pt best = 0;
        int32_t best_size = 1;
        for (pt s : S)
            if (osize[oid[s]] > best_size) {
                best_size = osize[oid[s]];
                best = s;
            }
        if (best_size <= 1) break;  // every S-point is fixed: pointwise stabilizer reached

        TowerLevel tl;
        tl.chain = C;
        tl.x = best;
        tl.gens = std::move(gens);
        tl.gen_inv.reserve(tl.gens.size());
        for (const Perm& g : tl.gens) tl.gen_inv.push_back(g.inverse());
        tl.parent.assign(n, -1);
        tl.via.assign(n, -1);
        std::vector<char> seen(n, 0);
        tl.orbit.push_back(best);
        seen[best] = 1;
        for (size_t scan = 0; scan < tl.orbit.size(); ++scan) {
            pt x = tl.orbit[scan];
            for (size_t gi = 0; gi < tl.gens.size(); ++gi) {
                pt y = tl.gens[gi][x];
                if (!seen[y]) {
                    seen[y] = 1;
                    tl.parent[y] = x;
                    tl.via[y] = (int32_t)gi;
                    tl.orbit.push_back(y);
                }
            }
        }
        tl.orbid = oid;
        tl.need.assign(next_id, 0);
        st.tower.push_back(std::move(tl));
        C = C->stabilizer_of_point(best, rng);
    }
    st.pointwise = C;

    // feasibility tables: how many adapted points from level d on live in each
    // orbit of C_d
    for (size_t d = 0; d < st.tower.size(); ++d) {
        for (size_t e = d; e < st.tower.size(); ++e) {
            int32_t o = st.tower[d].orbid[st.tower[e].x];
            ++st.tower[d].need[o];
        }
    }

    // seed K with the pointwise stabilizer's generators (they fix S pointwise,
    // so they never prune, but they belong to the result)
    st.prefix.assign(st.tower.size() + 1, {});
    st.prefix_inv.assign(st.tower.size() + 1, {});
    st.prefix[0].resize(n);
    st.prefix_inv[0].resize(n);
    for (size_t i = 0; i < n; ++i) st.prefix[0][i] = st.prefix_inv[0][i] = (pt)i;
    st.dfs(0, true, false);

    // Assemble the result: G_S = <pointwise stabilizer, found gens>, and
    // |G_S| = |C_m| * |induced action on S| (the kernel of the restriction
    // to S is exactly the pointwise stabilizer).
    out.gens = st.pointwise->level_generators(0);
    for (const Perm& g : st.kgens) out.gens.push_back(g);

    std::vector<int32_t> spos(n, -1);
    for (size_t i = 0; i < S.size(); ++i) spos[S[i]] = (int32_t)i;
    std::vector<Perm> induced;
    for (const Perm& g : st.kgens) {
        std::vector<pt> im(S.size());
        for (size_t i = 0; i < S.size(); ++i) im[i] = (pt)spos[g[S[i]]];
        induced.push_back(Perm::from_images(std::move(im)));
    }
    BuildOptions bo;
    bo.seed = seed ^ 0x77;
    auto ind_chain = StabChain::build(S.size(), std::move(induced), bo);
    out.order = st.pointwise->order() * ind_chain->order();
    return out;
}

}  // namespace spreads
