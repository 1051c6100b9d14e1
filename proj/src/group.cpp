#include "spreads/group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace spreads {

namespace {
constexpr int kStallLimit = 4096;  // consecutive unproductive random elements
}

// ---------------------------------------------------------------------------
// Construction machinery. The chain keeps one global strong generator list;
// level k holds the indices of the strong generators fixing base[0..k-1], so
// the level lists are nested by definition. Verification follows Sims:
// every Schreier generator of every level must strip to the identity through
// the lower chain. Pending (orbit position x generator slot) pairs are
// tracked as rectangles so nothing is scanned twice.
// ---------------------------------------------------------------------------
class ChainBuilder {
public:
    ChainBuilder(size_t degree, const BuildOptions& opts) : opts_(opts) {
        c_.degree_ = degree;
        if (degree >= 65535) throw std::invalid_argument("degree too large for pt");
        budget_rows_ = degree ? opts.explicit_budget / (degree * sizeof(pt)) : 0;
    }

    // Sift g from `from` and absorb a non-identity residue. Returns true if
    // the chain grew.
    bool insert(const Perm& g, size_t from) {
        size_t stuck = 0;
        Perm h = sift_partial(g, from, &stuck);
        if (h.is_identity()) return false;
        add_strong(std::move(h), stuck);
        return true;
    }

    bool reached(const BigUint& target) const { return order_product() >= target; }

    BigUint order_product() const {
        BigUint o(1);
        for (const auto& lv : c_.levels_) o *= (uint64_t)lv.orbit.size();
        return o;
    }

    // Random phase: draw quasi-uniform elements, sift, absorb residues, until
    // the orbit product reaches `target` (then the chain is proven complete).
    // Returns false on stall.
    bool random_phase(const BigUint& target, std::mt19937_64& rng) {
        int stall = 0;
        while (order_product() < target) {
            Perm g = random_word(rng);
            if (insert(g, 0))
                stall = 0;
            else if (++stall > kStallLimit)
                return false;
        }
        return true;
    }

    // Deterministic Schreier-generator closure.
    void verify() {
        int i = (int)c_.levels_.size() - 1;
        while (i >= 0) {
            if (pending_[i].empty()) {
                --i;
                continue;
            }
            auto [pos, slot] = pending_[i].front();
            pending_[i].pop_front();
            auto& lv = c_.levels_[i];
            int gidx = lv.gen_idx[slot];
            pt from_pt = lv.orbit[pos];
            pt to_pt = c_.sgs_[gidx][from_pt];
            int32_t tpos = lv.pos[to_pt];
            // tree edge: the Schreier generator is the identity by construction
            if (lv.via[tpos] == gidx && lv.parent_pos[tpos] == pos) continue;
            // s = u_to^{-1} * g * u_from  (fixes the base point)
            std::vector<pt> s(c_.degree_);
            {
                Perm ufrom = c_.transversal(i, from_pt);
                for (size_t x = 0; x < c_.degree_; ++x) s[x] = c_.sgs_[gidx][ufrom[x]];
                c_.sift_level_inplace(i, to_pt, s);
            }
            Perm sp = Perm::from_images(std::move(s));
            if (sp.is_identity()) continue;
            size_t stuck = 0;
            Perm h = sift_partial(sp, i + 1, &stuck);
            if (h.is_identity()) continue;
            size_t j = stuck;
            add_strong(std::move(h), j);
            i = (int)j;
        }
    }

    std::shared_ptr<const StabChain> finish() {
        c_.order_ = order_product();
        return std::make_shared<const StabChain>(std::move(c_));
    }

private:
    Perm sift_partial(const Perm& g, size_t from, size_t* stuck) {
        std::vector<pt> h(g.images());
        size_t i = from;
        for (; i < c_.levels_.size(); ++i) {
            pt beta = h[c_.levels_[i].base];
            if (c_.levels_[i].pos[beta] < 0) break;
            c_.sift_level_inplace(i, beta, h);
        }
        *stuck = i;
        return Perm::from_images(std::move(h));
    }

    // h fixes base[0..j-1] and moves base[j] (or all bases if j == #levels).
    void add_strong(Perm h, size_t j) {
        if (j == c_.levels_.size()) new_level((pt)h.first_moved(), j);
        int idx = (int)c_.sgs_.size();
        c_.sgs_inv_.push_back(h.inverse());
        c_.sgs_.push_back(std::move(h));
        for (size_t k = 0; k <= j; ++k) {
            c_.levels_[k].gen_idx.push_back(idx);
            extend_orbit(k);
            sync_pending(k);
        }
    }

    void new_level(pt base, size_t j) {
        StabChain::Level lv;
        lv.base = base;
        lv.pos.assign(c_.degree_, -1);
        lv.orbit.push_back(base);
        lv.pos[base] = 0;
        lv.parent_pos.push_back(-1);
        lv.via.push_back(-1);
        // strong generators already known to fix the whole base prefix join
        if (j > 0) {
            for (int gi : c_.levels_[j - 1].gen_idx) {
                if (c_.sgs_[gi][c_.levels_[j - 1].base] == c_.levels_[j - 1].base)
                    lv.gen_idx.push_back(gi);
            }
        }
        c_.levels_.push_back(std::move(lv));
        pending_.emplace_back();
        rect_.push_back({0, 0});
        if (j + 1 != c_.levels_.size()) throw std::logic_error("level append out of order");
        extend_orbit(j);
        sync_pending(j);
    }

    // Incremental orbit closure; existing tree entries are never rewritten,
    // which keeps previously verified Schreier pairs valid.
    void extend_orbit(size_t k) {
        auto& lv = c_.levels_[k];
        size_t scan = 0;
        while (scan < lv.orbit.size()) {
            pt x = lv.orbit[scan];
            for (int gi : lv.gen_idx) {
                pt y = c_.sgs_[gi][x];
                if (lv.pos[y] < 0) {
                    lv.pos[y] = (int32_t)lv.orbit.size();
                    lv.orbit.push_back(y);
                    lv.parent_pos.push_back((int32_t)scan);
                    lv.via.push_back(gi);
                    if (rows_used_ < budget_rows_) {
                        // cache the explicit transversal row
                        if (lv.tv.size() < lv.orbit.size()) lv.tv.resize(lv.orbit.size());
                        std::vector<pt>& row = lv.tv.back();
                        row.resize(c_.degree_);
                        const Perm& g = c_.sgs_[gi];
                        if (!lv.tv[scan].empty()) {
                            const std::vector<pt>& prow = lv.tv[scan];
                            for (size_t t = 0; t < c_.degree_; ++t) row[t] = g[prow[t]];
                        } else {
                            Perm up = c_.transversal(k, x);
                            for (size_t t = 0; t < c_.degree_; ++t) row[t] = g[up[t]];
                        }
                        ++rows_used_;
                    }
                }
            }
            ++scan;
        }
        if (lv.tv.size() < lv.orbit.size() && !lv.tv.empty()) lv.tv.resize(lv.orbit.size());
    }

    void sync_pending(size_t k) {
        auto& lv = c_.levels_[k];
        auto& r = rect_[k];
        size_t np = lv.orbit.size(), ns = lv.gen_idx.size();
        for (size_t pos = 0; pos < r.npos; ++pos)
            for (size_t s = r.nslots; s < ns; ++s) pending_[k].push_back({(int)pos, (int)s});
        for (size_t pos = r.npos; pos < np; ++pos)
            for (size_t s = 0; s < ns; ++s) pending_[k].push_back({(int)pos, (int)s});
        r.npos = np;
        r.nslots = ns;
    }

    // Random transversal product through the current partial chain times a
    // short random word in the strong generators.
    Perm random_word(std::mt19937_64& rng) {
        Perm r(c_.degree_);
        for (size_t k = 0; k < c_.levels_.size(); ++k) {
            const auto& lv = c_.levels_[k];
            size_t pos = rng() % lv.orbit.size();
            Perm u = c_.transversal(k, lv.orbit[pos]);
            r = r * u;
        }
        if (!c_.sgs_.empty()) {
            int extra = 1 + (int)(rng() % 3);
            for (int t = 0; t < extra; ++t) r = r * c_.sgs_[rng() % c_.sgs_.size()];
        }
        return r;
    }

    StabChain c_;
    BuildOptions opts_;
    struct Rect {
        size_t npos, nslots;
    };
    std::vector<std::deque<std::pair<int, int>>> pending_;
    std::vector<Rect> rect_;
    size_t budget_rows_ = 0;
    size_t rows_used_ = 0;
};

// ---------------------------------------------------------------------------

std::shared_ptr<const StabChain> StabChain::trivial(size_t degree) {
    StabChain c;
    c.degree_ = degree;
    return std::make_shared<const StabChain>(std::move(c));
}

std::shared_ptr<const StabChain> StabChain::build(size_t degree, std::vector<Perm> gens,
                                                  const BuildOptions& opts) {
    ChainBuilder b(degree, opts);
    for (const Perm& g : gens) {
        if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
        if (!g.is_identity()) b.insert(g, 0);
    }
    std::mt19937_64 rng(opts.seed);
    bool proven = false;
    if (opts.known_order) {
        proven = b.random_phase(*opts.known_order, rng) &&
                 b.order_product() == *opts.known_order;
    }
    if (!proven && opts.verify) b.verify();
    auto chain = b.finish();
    if (opts.known_order && opts.verify && chain->order() != *opts.known_order)
        throw std::logic_error("group order " + chain->order().to_string() +
                               " does not match the expected " + opts.known_order->to_string());
    return chain;
}

std::vector<Perm> StabChain::level_generators(size_t level) const {
    std::vector<Perm> out;
    if (level >= levels_.size()) return out;
    out.reserve(levels_[level].gen_idx.size());
    for (int gi : levels_[level].gen_idx) out.push_back(sgs_[gi]);
    return out;
}

void StabChain::build_transversal(size_t level, pt beta, std::vector<pt>& out) const {
    const Level& lv = levels_[level];
    int32_t pos = lv.pos[beta];
    if (pos < 0) throw std::logic_error("transversal: point outside fundamental orbit");
    if (pos < (int32_t)lv.tv.size() && !lv.tv[pos].empty()) {
        out = lv.tv[pos];
        return;
    }
    // walk the Schreier tree: u_beta = g_k * ... * g_1 applied to the identity
    out.resize(degree_);
    for (size_t i = 0; i < degree_; ++i) out[i] = (pt)i;
    // collect path from beta to base
    std::vector<int> path;  // gen indices, bottom-up
    int32_t cur = pos;
    while (lv.parent_pos[cur] >= 0) {
        path.push_back(lv.via[cur]);
        cur = lv.parent_pos[cur];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const Perm& g = sgs_[*it];
        for (size_t i = 0; i < degree_; ++i) out[i] = g[out[i]];
    }
}

Perm StabChain::transversal(size_t level, pt beta) const {
    std::vector<pt> u;
    build_transversal(level, beta, u);
    return Perm::from_images(std::move(u));
}

// h <- u_beta^{-1} * h at the given level (beta = h(base)).
void StabChain::sift_level_inplace(size_t level, pt beta, std::vector<pt>& h) const {
    const Level& lv = levels_[level];
    int32_t pos = lv.pos[beta];
    if (pos < (int32_t)lv.tv.size() && !lv.tv[pos].empty()) {
        const std::vector<pt>& u = lv.tv[pos];
        std::vector<pt> uinv(degree_);
        for (size_t i = 0; i < degree_; ++i) uinv[u[i]] = (pt)i;
        for (size_t i = 0; i < degree_; ++i) h[i] = uinv[h[i]];
        return;
    }
    int32_t cur = pos;
    while (lv.parent_pos[cur] >= 0) {
        const Perm& ginv = sgs_inv_[lv.via[cur]];
        for (size_t i = 0; i < degree_; ++i) h[i] = ginv[h[i]];
        cur = lv.parent_pos[cur];
    }
}

Perm StabChain::sift(const Perm& g, size_t* stuck) const {
    std::vector<pt> h(g.images());
    size_t i = 0;
    for (; i < levels_.size(); ++i) {
        pt beta = h[levels_[i].base];
        if (levels_[i].pos[beta] < 0) break;
        sift_level_inplace(i, beta, h);
    }
    if (stuck) *stuck = i;
    return Perm::from_images(std::move(h));
}

bool StabChain::contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    return sift(g).is_identity();
}

Perm StabChain::random_element(std::mt19937_64& rng) const {
    Perm r(degree_);
    for (size_t k = 0; k < levels_.size(); ++k) {
        const Level& lv = levels_[k];
        pt beta = lv.orbit[rng() % lv.orbit.size()];
        r = r * transversal(k, beta);
    }
    return r;
}

std::vector<pt> StabChain::orbit_of(pt x) const {
    std::vector<pt> orb{x};
    if (levels_.empty()) return orb;
    std::vector<char> seen(degree_, 0);
    seen[x] = 1;
    for (size_t scan = 0; scan < orb.size(); ++scan)
        for (int gi : levels_[0].gen_idx) {
            pt y = sgs_[gi][orb[scan]];
            if (!seen[y]) {
                seen[y] = 1;
                orb.push_back(y);
            }
        }
    std::sort(orb.begin(), orb.end());
    return orb;
}

std::shared_ptr<const StabChain> StabChain::stabilizer_of_point(pt m,
                                                                std::mt19937_64& rng) const {
    if (levels_.empty()) return shared_from_this();
    // fixed by all generators?
    bool moved = false;
    for (int gi : levels_[0].gen_idx)
        if (sgs_[gi][m] != m) {
            moved = true;
            break;
        }
    if (!moved) return shared_from_this();

    if (levels_[0].pos[m] >= 0) {
        // Base conjugation: c(base0) = m, so G_m = c G_base0 c^{-1}. The
        // conjugated suffix chain is complete because the original was.
        Perm c = transversal(0, m);
        Perm cinv = c.inverse();
        StabChain out;
        out.degree_ = degree_;
        const auto& top = levels_[0];
        std::vector<int> remap(sgs_.size(), -1);
        // strong gens of the suffix: conjugates of the level-1 generators
        if (levels_.size() >= 2) {
            for (int gi : levels_[1].gen_idx) {
                std::vector<pt> im(degree_);
                const Perm& s = sgs_[gi];
                for (size_t x = 0; x < degree_; ++x) im[x] = c[s[cinv[x]]];
                remap[gi] = (int)out.sgs_.size();
                Perm ns = Perm::from_images(std::move(im));
                out.sgs_inv_.push_back(ns.inverse());
                out.sgs_.push_back(std::move(ns));
            }
            for (size_t k = 1; k < levels_.size(); ++k) {
                Level lv;
                lv.base = c[levels_[k].base];
                lv.pos.assign(degree_, -1);
                lv.orbit.push_back(lv.base);
                lv.pos[lv.base] = 0;
                lv.parent_pos.push_back(-1);
                lv.via.push_back(-1);
                for (int gi : levels_[k].gen_idx) lv.gen_idx.push_back(remap[gi]);
                out.levels_.push_back(std::move(lv));
            }
            // rebuild orbits (sizes are preserved by conjugation)
            for (auto& lv : out.levels_) {
                size_t scan = 0;
                while (scan < lv.orbit.size()) {
                    pt x = lv.orbit[scan];
                    for (int gi : lv.gen_idx) {
                        pt y = out.sgs_[gi][x];
                        if (lv.pos[y] < 0) {
                            lv.pos[y] = (int32_t)lv.orbit.size();
                            lv.orbit.push_back(y);
                            lv.parent_pos.push_back((int32_t)scan);
                            lv.via.push_back(gi);
                        }
                    }
                    ++scan;
                }
            }
            for (size_t k = 1; k < levels_.size(); ++k)
                if (out.levels_[k - 1].orbit.size() != levels_[k].orbit.size())
                    throw std::logic_error("conjugated chain orbit mismatch");
        }
        out.order_ = order_.div_exact(BigUint((uint64_t)top.orbit.size()));
        return std::make_shared<const StabChain>(std::move(out));
    }

    // m outside the fundamental orbit: build Stab(m) from random Schreier
    // elements, stopping at the exact orbit-stabilizer order.
    std::vector<pt> orb{m};
    std::vector<int32_t> posv(degree_, -1), par(degree_, -1), via(degree_, -1);
    posv[m] = 0;
    for (size_t scan = 0; scan < orb.size(); ++scan)
        for (int gi : levels_[0].gen_idx) {
            pt y = sgs_[gi][orb[scan]];
            if (posv[y] < 0) {
                posv[y] = (int32_t)orb.size();
                par[y] = orb[scan];
                via[y] = gi;
                orb.push_back(y);
            }
        }
    BigUint target = order_.div_exact(BigUint((uint64_t)orb.size()));
    BuildOptions sub;
    sub.known_order = target;
    sub.verify = true;  // fallback safety if the random phase stalls
    sub.seed = rng();
    sub.explicit_budget = 0;
    ChainBuilder b(degree_, sub);
    // seed with strong generators that already fix m
    for (const Perm& s : sgs_)
        if (s[m] == m && !s.is_identity()) b.insert(s, 0);
    auto u_to = [&](pt betap, std::vector<pt>& im) {
        // element mapping m -> betap along the tree, applied to the identity
        im.resize(degree_);
        for (size_t i = 0; i < degree_; ++i) im[i] = (pt)i;
        std::vector<int> path;
        pt cur = betap;
        while (par[cur] >= 0) {
            path.push_back(via[cur]);
            cur = (pt)par[cur];
        }
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            const Perm& g = sgs_[*it];
            for (size_t i = 0; i < degree_; ++i) im[i] = g[im[i]];
        }
    };
    int stall = 0;
    std::vector<pt> utmp;
    while (!b.reached(target)) {
        Perm g = random_element(rng);
        pt beta = g[m];
        // s = u_beta^{-1} * g fixes m and is uniform over Stab(m)
        u_to(beta, utmp);
        std::vector<pt> uinv(degree_);
        for (size_t i = 0; i < degree_; ++i) uinv[utmp[i]] = (pt)i;
        std::vector<pt> s(degree_);
        for (size_t i = 0; i < degree_; ++i) s[i] = uinv[g[i]];
        if (b.insert(Perm::from_images(std::move(s)), 0))
            stall = 0;
        else if (++stall > kStallLimit)
            throw std::logic_error("point stabilizer construction stalled");
    }
    auto res = b.finish();
    if (res->order() != target) throw std::logic_error("point stabilizer order mismatch");
    return res;
}

void StabChain::for_each_element(const std::function<void(const Perm&)>& f,
                                 uint64_t cap) const {
    if (order() > BigUint(cap)) throw std::invalid_argument("group too large to enumerate");
    std::vector<Perm> stack;
    std::function<void(size_t, const Perm&)> rec = [&](size_t level, const Perm& acc) {
        if (level == levels_.size()) {
            f(acc);
            return;
        }
        for (pt beta : levels_[level].orbit) {
            Perm u = transversal(level, beta);
            rec(level + 1, acc * u);
        }
    };
    rec(0, Perm(degree_));
}

// ---------------------------------------------------------------------------

OrbitForest make_orbit_forest(size_t degree, std::vector<Perm> gens) {
    OrbitForest fo;
    fo.root.assign(degree, 0);
    fo.parent.assign(degree, -1);
    fo.via.assign(degree, -1);
    fo.gens = std::move(gens);
    fo.gen_inv.reserve(fo.gens.size());
    for (const Perm& g : fo.gens) fo.gen_inv.push_back(g.inverse());
    std::vector<char> seen(degree, 0);
    std::vector<pt> queue;
    for (size_t s = 0; s < degree; ++s) {
        if (seen[s]) continue;
        // s is the minimum of a fresh orbit
        queue.clear();
        queue.push_back((pt)s);
        seen[s] = 1;
        fo.root[s] = (pt)s;
        for (size_t scan = 0; scan < queue.size(); ++scan) {
            pt x = queue[scan];
            for (size_t gi = 0; gi < fo.gens.size(); ++gi) {
                pt y = fo.gens[gi][x];
                if (!seen[y]) {
                    seen[y] = 1;
                    fo.root[y] = (pt)s;
                    fo.parent[y] = x;
                    fo.via[y] = (int32_t)gi;
                    queue.push_back(y);
                }
            }
        }
    }
    return fo;
}

pt OrbitForest::map_via_root(pt c, pt x) const {
    pt cur = c, y = x;
    while (parent[cur] >= 0) {
        y = gen_inv[via[cur]][y];
        cur = (pt)parent[cur];
    }
    return y;
}

void OrbitForest::map_via_root_multi(pt c, std::vector<pt>& xs) const {
    pt cur = c;
    while (parent[cur] >= 0) {
        const Perm& gi = gen_inv[via[cur]];
        for (pt& y : xs) y = gi[y];
        cur = (pt)parent[cur];
    }
}

Perm OrbitForest::element_to_root(pt c) const {
    Perm r(root.size());
    std::vector<pt> im(root.size());
    for (size_t i = 0; i < im.size(); ++i) im[i] = (pt)i;
    pt cur = c;
    while (parent[cur] >= 0) {
        const Perm& gi = gen_inv[via[cur]];
        for (pt& y : im) y = gi[y];
        cur = (pt)parent[cur];
    }
    return Perm::from_images(std::move(im));
}

}  // namespace spreads
