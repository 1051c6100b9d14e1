#include "spreads/collineation.hpp"

#include <stdexcept>

namespace spreads {

Collineation Collineation::identity() {
    Collineation c;
    for (int i = 0; i < 4; ++i) c.mat[i * 4 + i] = 1;
    return c;
}

Collineation compose(const Field& f, const Collineation& a, const Collineation& b) {
    Collineation r;
    // M_r = M_a . sigma_a(M_b)
    std::array<Fe, 16> sb;
    for (int i = 0; i < 16; ++i) sb[i] = f.frob(b.mat[i], a.frob);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Fe acc = 0;
            for (int k = 0; k < 4; ++k)
                acc = f.add(acc, f.mul(a.mat[i * 4 + k], sb[k * 4 + j]));
            r.mat[i * 4 + j] = acc;
        }
    r.frob = (uint8_t)((a.frob + b.frob) % f.e());
    r.dual = a.dual != b.dual;
    return r;
}

PointVec apply_point(const Field& f, const Collineation& c, const PointVec& v) {
    PointVec sv;
    for (int i = 0; i < 4; ++i) sv[i] = f.frob(v[i], c.frob);
    PointVec w{};
    for (int i = 0; i < 4; ++i) {
        Fe acc = 0;
        for (int j = 0; j < 4; ++j) acc = f.add(acc, f.mul(c.mat[i * 4 + j], sv[j]));
        w[i] = acc;
    }
    normalize_point(f, w);
    return w;
}

namespace {

// Basis of the null space {y : B y^T = 0} of a full-rank 2x4 RREF matrix,
// returned as an RREF line representative.
LineRep perp_of(const Field& f, const LineRep& b) {
    int piv[2] = {-1, -1};
    for (int j = 0; j < 4 && piv[0] < 0; ++j)
        if (b[j] != 0) piv[0] = j;
    for (int j = piv[0] + 1; j < 4 && piv[1] < 0; ++j)
        if (b[4 + j] != 0) piv[1] = j;
    LineRep out{};
    int row = 0;
    for (int fcol = 0; fcol < 4; ++fcol) {
        if (fcol == piv[0] || fcol == piv[1]) continue;
        Fe* y = out.data() + 4 * row;
        y[fcol] = 1;
        y[piv[0]] = f.neg(b[fcol]);
        y[piv[1]] = f.neg(b[4 + fcol]);
        ++row;
    }
    if (row != 2 || !rref_line(f, out)) throw std::logic_error("perp construction failed");
    return out;
}

}  // namespace

int line_perp(const Geometry& g, int line) {
    LineRep r = perp_of(*g.field, g.lines[line]);
    int id = g.line_id(r);
    if (id < 0) throw std::logic_error("perp line not found");
    return id;
}

Perm line_perm(const Geometry& g, const Collineation& c) {
    const Field& f = *g.field;
    std::vector<pt> im(g.n_lines);
    for (int l = 0; l < g.n_lines; ++l) {
        LineRep r;
        PointVec a{g.lines[l][0], g.lines[l][1], g.lines[l][2], g.lines[l][3]};
        PointVec b{g.lines[l][4], g.lines[l][5], g.lines[l][6], g.lines[l][7]};
        PointVec ia = apply_point(f, c, a);
        PointVec ib = apply_point(f, c, b);
        for (int j = 0; j < 4; ++j) {
            r[j] = ia[j];
            r[4 + j] = ib[j];
        }
        if (!rref_line(f, r)) throw std::logic_error("collineation image degenerate");
        if (c.dual) r = perp_of(f, r);
        int id = g.line_id(r);
        if (id < 0) throw std::logic_error("collineation image not a line");
        im[l] = (pt)id;
    }
    // sanity: a collineation must permute the lines
    std::vector<char> seen(g.n_lines, 0);
    for (pt x : im) {
        if (seen[x]) throw std::logic_error("collineation image is not a permutation");
        seen[x] = 1;
    }
    return Perm::from_images(std::move(im));
}

Perm duality_line_perm(const Geometry& g) {
    std::vector<pt> im(g.n_lines);
    for (int l = 0; l < g.n_lines; ++l) im[l] = (pt)line_perp(g, l);
    return Perm::from_images(std::move(im));
}

std::vector<Perm> pgammal_line_generators(const Geometry& g) {
    const Field& f = *g.field;
    std::vector<Collineation> cs;
    // primitive scaling diag(x, 1, 1, 1) (the identity when q = 2)
    Collineation d = Collineation::identity();
    d.mat[0] = f.from_exp(1);
    cs.push_back(d);
    // 4-cycle monomial matrix: e1 -> e2 -> e3 -> e4 -> e1 (columns)
    Collineation cyc;
    for (int j = 0; j < 4; ++j) cyc.mat[((j + 1) % 4) * 4 + j] = 1;
    cs.push_back(cyc);
    // transvections I + c E12 and I + c E21 over a GF(p)-basis of the field
    for (int k = 0; k < f.e(); ++k) {
        Fe c = f.from_exp(k);
        Collineation t = Collineation::identity();
        t.mat[0 * 4 + 1] = c;
        cs.push_back(t);
        Collineation t2 = Collineation::identity();
        t2.mat[1 * 4 + 0] = c;
        cs.push_back(t2);
    }
    std::vector<Perm> gens;
    gens.reserve(cs.size() + 1);
    for (const auto& c : cs) gens.push_back(line_perm(g, c));
    if (f.e() > 1) {
        Collineation fr = Collineation::identity();
        fr.frob = 1;
        gens.push_back(line_perm(g, fr));
    }
    return gens;
}

BigUint pgammal_order(int q, int e) {
    BigUint o(1);
    for (int i = 0; i < 6; ++i) o *= (uint64_t)q;
    o *= (uint64_t)(q * q - 1);
    o *= (uint64_t)(q * q * q - 1);
    o *= (uint64_t)((uint64_t)q * q * q * q - 1);
    o *= (uint64_t)e;
    return o;
}

}  // namespace spreads
