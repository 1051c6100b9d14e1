#pragma once

#include <array>
#include <vector>

#include "spreads/bigint.hpp"
#include "spreads/geometry.hpp"
#include "spreads/perm.hpp"

namespace spreads {

// Semilinear collineation of PG(3,q): v -> M . sigma(v) on column vectors,
// sigma the Frobenius x -> x^(p^frob). `dual` marks a correlation component;
// composition multiplies the flags in the 2-element group.
struct Collineation {
    std::array<Fe, 16> mat{};  // row-major 4x4, invertible
    uint8_t frob = 0;
    bool dual = false;

    static Collineation identity();
};

// (a o b)(v) = a(b(v)): matrix part M_a . sigma_a(M_b), Frobenius parts add.
Collineation compose(const Field& f, const Collineation& a, const Collineation& b);

PointVec apply_point(const Field& f, const Collineation& c, const PointVec& v);

// Induced permutation of the line ids (for dual collineations the image line
// is the orthogonal complement of the matrix-semilinear image).
Perm line_perm(const Geometry& g, const Collineation& c);

// The standard polarity: every line to its orthogonal complement under the
// standard symmetric bilinear form. An automorphism of Gamma outside the
// collineation image; its square is the identity.
Perm duality_line_perm(const Geometry& g);

// Orthogonal complement of a line (by id).
int line_perp(const Geometry& g, int line);

// Line permutations generating the image of PGammaL(4,q) on the lines:
// elementary transvections, a 4-cycle monomial matrix, a primitive scaling,
// and the Frobenius map when e > 1.
std::vector<Perm> pgammal_line_generators(const Geometry& g);

// q^6 (q^2-1)(q^3-1)(q^4-1) * e, the order of the line action of PGammaL(4,q).
BigUint pgammal_order(int q, int e);

}  // namespace spreads
