#include "spreads/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace spreads {

std::vector<pt> Starter::sorted_lines() const {
    std::vector<pt> s = lines;
    std::sort(s.begin(), s.end());
    return s;
}

bool is_spread(const Geometry& g, const std::vector<pt>& lines) {
    if ((int)lines.size() != g.q * g.q + 1) return false;
    std::vector<char> covered(g.n_points, 0);
    for (pt l : lines)
        for (uint16_t p : g.line_pts[l]) {
            if (covered[p]) return false;
            covered[p] = 1;
        }
    return true;  // (q^2+1)(q+1) = n_points, so full coverage follows
}

uint32_t transversal_count(const Geometry& g, const std::vector<pt>& member_lines) {
    if (member_lines.empty()) return (uint32_t)g.n_lines;
    size_t words = g.gamma.words_per_row();
    std::vector<uint64_t> acc(g.gamma.row(member_lines[0]),
                              g.gamma.row(member_lines[0]) + words);
    for (size_t i = 1; i < member_lines.size(); ++i) {
        const uint64_t* row = g.gamma.row(member_lines[i]);
        for (size_t w = 0; w < words; ++w) acc[w] &= row[w];
    }
    uint32_t c = 0;
    for (size_t w = 0; w < words; ++w) c += (uint32_t)__builtin_popcountll(acc[w]);
    return c;
}

// ---------------------------------------------------------------------------
// Starter enumeration: orderly generation of independent sets adjacent to
// line 0, ascending by line id, keeping a set only if it is the
// lexicographically least member of its orbit under the stabilizer of line 0.
// Prefixes of canonical sets are canonical, so the tree below a rejected set
// can be cut without loss.
// ---------------------------------------------------------------------------

namespace {

struct StarterDfs {
    const Geometry& g;
    MinImageEngine& engine;
    std::vector<Starter>& out;
    size_t target_size;
    std::vector<pt> cur;
    BitRow avail;                 // adjacent to line 0, disjoint from cur, id > max(cur)
    std::vector<BitRow> pencil_masks;  // per point of line 0

    void run() {
        avail = BitRow(g.n_lines);
        for (int l = 1; l < g.n_lines; ++l)
            if (g.gamma.get(0, l)) avail.set(l);
        dfs();
    }

    bool feasible(const BitRow& a) {
        // every uncovered point of line 0 still needs a candidate line
        for (uint16_t p : g.line_pts[0]) {
            bool covered = false;
            for (pt l : cur)
                if (std::binary_search(g.line_pts[l].begin(), g.line_pts[l].end(), p)) {
                    covered = true;
                    break;
                }
            if (covered) continue;
            if (and_popcount(a.data(), pencil_masks[pencil_index(p)].data(), a.words()) == 0)
                return false;
        }
        return true;
    }

    size_t pencil_index(uint16_t p) const {
        const auto& pts = g.line_pts[0];
        return std::lower_bound(pts.begin(), pts.end(), p) - pts.begin();
    }

    void dfs() {
        if (cur.size() == target_size) {
            Starter s;
            s.base_line = 0;
            s.lines.resize(target_size);
            for (pt l : cur) {
                int mp = g.meet_point(0, l);
                s.lines[pencil_index((uint16_t)mp)] = l;
            }
            out.push_back(std::move(s));
            return;
        }
        pt from = cur.empty() ? 0 : (pt)(cur.back() + 1);
        std::vector<pt> todo;
        avail.for_each([&](size_t l) {
            if (l >= from) todo.push_back((pt)l);
        });
        for (pt l : todo) {
            cur.push_back(l);
            if (engine.is_canonical(cur)) {
                BitRow saved = avail;
                // remove the new line's neighbours
                const uint64_t* grow = g.gamma.row(l);
                for (size_t w = 0; w < avail.words(); ++w) avail.data()[w] &= ~grow[w];
                avail.reset(l);
                if (cur.size() == target_size || feasible(avail)) dfs();
                avail = saved;
            }
            cur.pop_back();
        }
    }
};

}  // namespace

std::vector<Starter> enumerate_starters(const Geometry& g,
                                        std::shared_ptr<const StabChain> ext_group,
                                        uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto stab0 = ext_group->stabilizer_of_point(0, rng);
    MinImageEngine engine(stab0, rng());

    std::vector<Starter> out;
    StarterDfs dfs{g, engine, out, (size_t)(g.q + 1), {}, BitRow(), {}};
    dfs.pencil_masks.resize(g.q + 1, BitRow(g.n_lines));
    for (int i = 0; i <= g.q; ++i) {
        uint16_t p = g.line_pts[0][i];
        for (uint16_t l : g.pencils[p])
            if (l != 0) dfs.pencil_masks[i].set(l);
    }
    dfs.run();
    return out;
}

IdentityCheckReport starter_identity_check(const Geometry& g,
                                           std::shared_ptr<const StabChain> ext_group,
                                           const std::vector<Starter>& starters,
                                           uint64_t seed) {
    IdentityCheckReport rep;
    const int q = g.q;
    rep.lhs = BigUint((uint64_t)g.n_lines);
    for (int j = 0; j <= q; ++j) rep.lhs *= (uint64_t)(q * q + q - j * q);
    rep.rhs = BigUint(0);
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < starters.size(); ++i) {
        std::vector<pt> s = starters[i].sorted_lines();
        SetwiseStab st = setwise_stabilizer(ext_group, s, rng());
        IdentityCheckRow row;
        row.starter = (uint32_t)i;
        row.stab_order = st.order;
        row.orbit_size = ext_group->order().div_exact(st.order);
        row.transversals = transversal_count(g, s);
        rep.rhs += row.orbit_size * BigUint((uint64_t)row.transversals);
        rep.rows.push_back(std::move(row));
    }
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Exact cover.
// ---------------------------------------------------------------------------

ExactCoverInstance build_instance(const Geometry& g, const Starter& s) {
    ExactCoverInstance inst;
    inst.fixed_lines = s.sorted_lines();

    std::vector<char> excluded(g.n_lines, 0);  // ell, its neighbours, starter neighbours
    excluded[s.base_line] = 1;
    for (int l = 0; l < g.n_lines; ++l)
        if (g.gamma.get(s.base_line, l)) excluded[l] = 1;
    for (pt sl : inst.fixed_lines) {
        excluded[sl] = 1;
        for (int l = 0; l < g.n_lines; ++l)
            if (g.gamma.get(sl, l)) excluded[l] = 1;
    }

    std::vector<char> covered(g.n_points, 0);
    for (pt sl : inst.fixed_lines)
        for (uint16_t p : g.line_pts[sl]) covered[p] = 1;
    for (uint16_t p : g.line_pts[s.base_line])
        if (!covered[p]) throw std::invalid_argument("not a starter: base point uncovered");

    std::vector<int32_t> col_of(g.n_points, -1);
    for (int p = 0; p < g.n_points; ++p)
        if (!covered[p]) {
            col_of[p] = (int32_t)inst.cols.size();
            inst.cols.push_back((pt)p);
        }

    for (int l = 0; l < g.n_lines; ++l)
        if (!excluded[l]) inst.row_line.push_back((pt)l);

    size_t R = inst.row_line.size();
    inst.col_rows.assign(inst.cols.size(), {});
    inst.row_cols.assign(R, {});
    inst.conflict = BitMatrix(R, R);
    for (size_t r = 0; r < R; ++r) {
        for (uint16_t p : g.line_pts[inst.row_line[r]]) {
            if (col_of[p] < 0) throw std::logic_error("candidate row touches a covered point");
            inst.col_rows[col_of[p]].push_back((uint32_t)r);
            inst.row_cols[r].push_back((uint16_t)col_of[p]);
        }
    }
    for (size_t r = 0; r < R; ++r) {
        const uint64_t* grow = g.gamma.row(inst.row_line[r]);
        for (size_t r2 = 0; r2 < R; ++r2)
            if (r2 != r && ((grow[inst.row_line[r2] >> 6] >> (inst.row_line[r2] & 63)) & 1))
                inst.conflict.set(r, r2);
    }
    return inst;
}

namespace {

struct CoverSolver {
    const ExactCoverInstance& inst;
    const std::function<void(const std::vector<uint32_t>&)>& emit;
    std::vector<uint64_t> avail;       // bitmask over rows
    std::vector<char> uncovered;       // per column
    size_t n_uncovered;
    std::vector<uint32_t> chosen;
    uint64_t solutions = 0;

    void solve() {
        if (n_uncovered == 0) {
            std::vector<uint32_t> sorted = chosen;
            std::sort(sorted.begin(), sorted.end());
            emit(sorted);
            ++solutions;
            return;
        }
        // column with the fewest available rows, ties to the lowest id
        int best_col = -1;
        size_t best_cnt = SIZE_MAX;
        for (size_t c = 0; c < inst.cols.size(); ++c) {
            if (!uncovered[c]) continue;
            size_t cnt = 0;
            for (uint32_t r : inst.col_rows[c])
                if (avail[r >> 6] >> (r & 63) & 1) ++cnt;
            if (cnt < best_cnt) {
                best_cnt = cnt;
                best_col = (int)c;
                if (cnt == 0) break;
            }
        }
        if (best_cnt == 0) return;
        for (uint32_t r : inst.col_rows[best_col]) {
            if (!(avail[r >> 6] >> (r & 63) & 1)) continue;
            // select row r
            std::vector<uint64_t> saved = avail;
            const uint64_t* conf = inst.conflict.row(r);
            for (size_t w = 0; w < avail.size(); ++w) avail[w] &= ~conf[w];
            avail[r >> 6] &= ~(uint64_t(1) << (r & 63));
            for (uint16_t c : inst.row_cols[r]) {
                uncovered[c] = 0;
                --n_uncovered;
            }
            chosen.push_back(r);
            solve();
            chosen.pop_back();
            for (uint16_t c : inst.row_cols[r]) {
                uncovered[c] = 1;
                ++n_uncovered;
            }
            avail = std::move(saved);
        }
    }
};

}  // namespace

uint64_t exact_cover_solve(const ExactCoverInstance& inst,
                           const std::function<void(const std::vector<uint32_t>&)>& emit) {
    CoverSolver s{inst, emit, {}, {}, 0, {}, 0};
    s.avail.assign((inst.row_line.size() + 63) / 64, 0);
    for (size_t r = 0; r < inst.row_line.size(); ++r) s.avail[r >> 6] |= uint64_t(1) << (r & 63);
    s.uncovered.assign(inst.cols.size(), 1);
    s.n_uncovered = inst.cols.size();
    s.solve();
    return s.solutions;
}

uint64_t complete_starter(const Geometry& g, const ExactCoverInstance& inst,
                          const std::function<void(const Spread&)>& emit) {
    return exact_cover_solve(inst, [&](const std::vector<uint32_t>& rows) {
        Spread sp;
        sp.lines = inst.fixed_lines;
        for (uint32_t r : rows) sp.lines.push_back(inst.row_line[r]);
        std::sort(sp.lines.begin(), sp.lines.end());
        if (!is_spread(g, sp.lines)) throw std::logic_error("solver emitted a non-spread");
        emit(sp);
    });
}

std::vector<Spread> spreads_from_scratch(const Geometry& g, bool allow_large) {
    if (g.q > 3 && !allow_large)
        throw std::invalid_argument("from-scratch enumeration is guarded to q <= 3");
    // exact cover over the full geometry: an instance with no fixed lines
    ExactCoverInstance inst;
    inst.cols.resize(g.n_points);
    for (int p = 0; p < g.n_points; ++p) inst.cols[p] = (pt)p;
    inst.row_line.resize(g.n_lines);
    for (int l = 0; l < g.n_lines; ++l) inst.row_line[l] = (pt)l;
    inst.col_rows.assign(g.n_points, {});
    inst.row_cols.assign(g.n_lines, {});
    for (int l = 0; l < g.n_lines; ++l)
        for (uint16_t p : g.line_pts[l]) {
            inst.col_rows[p].push_back((uint32_t)l);
            inst.row_cols[l].push_back(p);
        }
    inst.conflict = g.gamma;

    std::vector<Spread> out;
    exact_cover_solve(inst, [&](const std::vector<uint32_t>& rows) {
        Spread sp;
        for (uint32_t r : rows) sp.lines.push_back(inst.row_line[r]);
        std::sort(sp.lines.begin(), sp.lines.end());
        out.push_back(std::move(sp));
    });
    return out;
}

}  // namespace spreads
