#include "spreads/spreadset.hpp"

#include <algorithm>
#include <stdexcept>

namespace spreads {

Fe det2(const Field& f, const Mat2& m) {
    return f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c));
}

Mat2 sub2(const Field& f, const Mat2& x, const Mat2& y) {
    return {f.sub(x.a, y.a), f.sub(x.b, y.b), f.sub(x.c, y.c), f.sub(x.d, y.d)};
}

namespace {

std::string enc4(const Field& f, const Mat2& m) {
    return {f.encode(m.a), f.encode(m.b), f.encode(m.c), f.encode(m.d)};
}

void canonical_sort(SpreadSet& s) {
    const Field& f = *s.field;
    std::sort(s.mats.begin(), s.mats.end(),
              [&](const Mat2& x, const Mat2& y) { return enc4(f, x) < enc4(f, y); });
}

// Invert a 4x4 matrix over f; returns false if singular.
bool invert4(const Field& f, const Fe* m, Fe* out) {
    Fe a[4][8];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a[i][j] = m[i * 4 + j];
            a[i][4 + j] = (i == j) ? 1 : 0;
        }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int i = col; i < 4; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        if (piv != col)
            for (int j = 0; j < 8; ++j) std::swap(a[piv][j], a[col][j]);
        Fe s = f.inv(a[col][col]);
        for (int j = 0; j < 8; ++j) a[col][j] = f.mul(a[col][j], s);
        for (int i = 0; i < 4; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Fe c = a[i][col];
            for (int j = 0; j < 8; ++j) a[i][j] = f.sub(a[i][j], f.mul(c, a[col][j]));
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i * 4 + j] = a[i][4 + j];
    return true;
}

// row vector times 4x4 matrix
void row_mul(const Field& f, const Fe* v, const Fe* m, Fe* out) {
    for (int j = 0; j < 4; ++j) {
        Fe acc = 0;
        for (int k = 0; k < 4; ++k) acc = f.add(acc, f.mul(v[k], m[k * 4 + j]));
        out[j] = acc;
    }
}

}  // namespace

std::string validate_spread_set(const SpreadSet& s) {
    const Field& f = *s.field;
    const int q = f.q();
    if ((int)s.mats.size() != q * q)
        return "expected " + std::to_string(q * q) + " matrices, got " +
               std::to_string(s.mats.size());
    bool has_zero = false;
    for (const Mat2& m : s.mats)
        if (m == Mat2{}) has_zero = true;
    if (!has_zero) return "zero matrix missing";
    for (size_t i = 0; i < s.mats.size(); ++i)
        for (size_t j = i + 1; j < s.mats.size(); ++j)
            if (det2(f, sub2(f, s.mats[i], s.mats[j])) == 0)
                return "singular difference at pair (" + std::to_string(i) + "," +
                       std::to_string(j) + ")";
    return {};
}

SpreadSet to_spread_set(const Geometry& g, const Spread& s) {
    const Field& f = *g.field;
    const int q = f.q();
    if ((int)s.lines.size() != q * q + 1) throw std::invalid_argument("not a spread");

    std::string best_enc;
    SpreadSet best;
    best.field = &f;

    Fe B[16], N[16], img[4];
    for (size_t i = 0; i < s.lines.size(); ++i) {
        for (size_t j = 0; j < s.lines.size(); ++j) {
            if (i == j) continue;
            // rows of B: basis of L0-target (-> e1,e2), then Linf-target (-> e3,e4)
            const LineRep& l0 = g.lines[s.lines[j]];
            const LineRep& li = g.lines[s.lines[i]];
            for (int t = 0; t < 8; ++t) B[t] = l0[t];
            for (int t = 0; t < 8; ++t) B[8 + t] = li[t];
            if (!invert4(f, B, N)) continue;  // lines not disjoint: cannot happen in a spread
            SpreadSet cand;
            cand.field = &f;
            cand.mats.push_back({});  // W_0 itself: A = 0
            bool ok = true;
            for (size_t k = 0; k < s.lines.size() && ok; ++k) {
                if (k == i || k == j) continue;
                LineRep r;
                row_mul(f, g.lines[s.lines[k]].data(), N, r.data());
                row_mul(f, g.lines[s.lines[k]].data() + 4, N, img);
                for (int t = 0; t < 4; ++t) r[4 + t] = img[t];
                if (!rref_line(f, r)) throw std::logic_error("degenerate image line");
                // must be a graph subspace: pivots in columns 0 and 1
                if (r[0] != 1 || r[4 + 0] != 0 || r[1] != 0 || r[4 + 1] != 1) {
                    ok = false;
                    break;
                }
                cand.mats.push_back({r[2], r[3], r[6], r[7]});
            }
            if (!ok) throw std::logic_error("spread image line not in graph form");
            canonical_sort(cand);
            std::string enc = encode_line(cand);
            if (best_enc.empty() || enc < best_enc) {
                best_enc = std::move(enc);
                best = std::move(cand);
            }
        }
    }
    if (best_enc.empty()) throw std::logic_error("no transporter found");
    std::string err = validate_spread_set(best);
    if (!err.empty()) throw std::logic_error("spread set invariant violated: " + err);
    return best;
}

Spread from_spread_set(const Geometry& g, const SpreadSet& s) {
    std::string err = validate_spread_set(s);
    if (!err.empty()) throw std::invalid_argument("invalid spread set: " + err);
    Spread out;
    LineRep winf{};
    winf[2] = 1;
    winf[4 + 3] = 1;
    int id = g.line_id(winf);
    if (id < 0) throw std::logic_error("W_infty not found");
    out.lines.push_back((pt)id);
    for (const Mat2& m : s.mats) {
        LineRep r{};
        r[0] = 1;
        r[2] = m.a;
        r[3] = m.b;
        r[4 + 1] = 1;
        r[4 + 2] = m.c;
        r[4 + 3] = m.d;
        id = g.line_id(r);
        if (id < 0) throw std::logic_error("graph line not found");
        out.lines.push_back((pt)id);
    }
    std::sort(out.lines.begin(), out.lines.end());
    if (!is_spread(g, out.lines)) throw std::logic_error("spread set does not assemble a spread");
    return out;
}

SpreadSet transpose_set(const SpreadSet& s) {
    SpreadSet t;
    t.field = s.field;
    for (const Mat2& m : s.mats) t.mats.push_back({m.a, m.c, m.b, m.d});
    canonical_sort(t);
    return t;
}

std::string encode_line(const SpreadSet& s) {
    std::string out;
    out.reserve(4 * s.mats.size());
    for (const Mat2& m : s.mats) out += enc4(*s.field, m);
    return out;
}

SpreadSet decode_line(const std::string& text, const Field& f) {
    size_t end = text.size();
    while (end > 0 && (text[end - 1] == ' ' || text[end - 1] == '\t' || text[end - 1] == '\r' ||
                       text[end - 1] == '\n'))
        --end;
    const size_t want = 4 * (size_t)f.q() * f.q();
    if (end != want)
        throw std::invalid_argument("expected " + std::to_string(want) + " characters, got " +
                                    std::to_string(end));
    SpreadSet s;
    s.field = &f;
    for (size_t i = 0; i < end; i += 4)
        s.mats.push_back(
            {f.decode(text[i]), f.decode(text[i + 1]), f.decode(text[i + 2]), f.decode(text[i + 3])});
    canonical_sort(s);
    std::string err = validate_spread_set(s);
    if (!err.empty()) throw std::invalid_argument("invalid spread set: " + err);
    return s;
}

SpreadSet regular_spread_set(const Field& f) {
    const int q = f.q();
    // first (s,t) in index order making y^2 - s y - t irreducible over GF(q)
    for (int si = 0; si < q; ++si)
        for (int ti = 0; ti < q; ++ti) {
            Fe sc = (Fe)si, tc = (Fe)ti;
            bool irred = true;
            for (int a = 0; a < q && irred; ++a) {
                Fe v = f.sub(f.sub(f.mul((Fe)a, (Fe)a), f.mul(sc, (Fe)a)), tc);
                if (v == 0) irred = false;
            }
            if (!irred) continue;
            SpreadSet out;
            out.field = &f;
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b)
                    out.mats.push_back({(Fe)a, (Fe)b, f.mul((Fe)b, tc),
                                        f.add((Fe)a, f.mul((Fe)b, sc))});
            canonical_sort(out);
            std::string err = validate_spread_set(out);
            if (!err.empty()) throw std::logic_error("regular spread set invalid: " + err);
            return out;
        }
    throw std::logic_error("no irreducible quadratic found");
}

Spread regular_spread(const Geometry& g) {
    return from_spread_set(g, regular_spread_set(*g.field));
}

}  // namespace spreads
