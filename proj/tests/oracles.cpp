#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spreads::oracle {

int naive_rank_mod_p(std::vector<std::vector<int>> m, int p) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    for (auto& row : m)
        for (auto& v : row) v = ((v % p) + p) % p;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = SIZE_MAX;
        for (size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == SIZE_MAX) continue;
        std::swap(m[r], m[piv]);
        int inv = 0;
        for (int x = 1; x < p; ++x)
            if (m[r][c] * x % p == 1) inv = x;
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            int f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return (int)r;
}

std::vector<Perm> enumerate_group(const std::vector<Perm>& gens, size_t cap) {
    if (gens.empty()) return {};
    std::set<std::vector<pt>> seen;
    std::vector<Perm> out;
    Perm id(gens[0].degree());
    seen.insert(id.images());
    out.push_back(id);
    for (size_t scan = 0; scan < out.size(); ++scan) {
        for (const Perm& g : gens) {
            Perm next = g * out[scan];
            if (seen.insert(next.images()).second) {
                out.push_back(next);
                if (out.size() > cap) throw std::runtime_error("group enumeration cap exceeded");
            }
        }
    }
    return out;
}

namespace {

void cover_rec(const std::vector<std::vector<uint16_t>>& rows, std::vector<char>& covered,
               uint16_t remaining, uint32_t next_row, std::vector<uint32_t>& cur,
               std::vector<std::vector<uint32_t>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    if (next_row == rows.size()) return;
    // skip row
    cover_rec(rows, covered, remaining, next_row + 1, cur, out);
    // take row if disjoint from covered
    for (uint16_t c : rows[next_row])
        if (covered[c]) return;
    for (uint16_t c : rows[next_row]) covered[c] = 1;
    cur.push_back(next_row);
    cover_rec(rows, covered, (uint16_t)(remaining - rows[next_row].size()), next_row + 1, cur,
              out);
    cur.pop_back();
    for (uint16_t c : rows[next_row]) covered[c] = 0;
}

}  // namespace

std::vector<std::vector<uint32_t>> naive_exact_cover(
    const std::vector<std::vector<uint16_t>>& rows, uint16_t n_cols) {
    std::vector<char> covered(n_cols, 0);
    std::vector<uint32_t> cur;
    std::vector<std::vector<uint32_t>> out;
    cover_rec(rows, covered, n_cols, 0, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::vector<pt>> set_orbit(const std::vector<Perm>& gens, const std::vector<pt>& s,
                                    size_t cap) {
    std::set<std::vector<pt>> seen;
    std::vector<std::vector<pt>> queue;
    std::vector<pt> s0 = s;
    std::sort(s0.begin(), s0.end());
    seen.insert(s0);
    queue.push_back(s0);
    for (size_t scan = 0; scan < queue.size(); ++scan) {
        for (const Perm& g : gens) {
            std::vector<pt> img = apply_to_set(g, queue[scan]);
            if (seen.insert(img).second) {
                queue.push_back(img);
                if (seen.size() > cap) throw std::runtime_error("set orbit cap exceeded");
            }
        }
    }
    return seen;
}

size_t orbit_partition_count(const std::vector<Perm>& gens,
                             const std::vector<std::vector<pt>>& sets) {
    std::set<std::vector<pt>> remaining(sets.begin(), sets.end());
    size_t classes = 0;
    while (!remaining.empty()) {
        ++classes;
        auto orb = set_orbit(gens, *remaining.begin());
        for (const auto& s : orb) remaining.erase(s);
    }
    return classes;
}

std::vector<pt> brute_min_image(const std::vector<Perm>& all_elements,
                                const std::vector<pt>& s) {
    std::vector<pt> best = apply_to_set(all_elements.front(), s);
    for (const Perm& g : all_elements) {
        std::vector<pt> img = apply_to_set(g, s);
        if (img < best) best = img;
    }
    return best;
}

}  // namespace spreads::oracle
