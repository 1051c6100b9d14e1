#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spreads/bits.hpp"
#include "spreads/gf.hpp"

namespace spreads {

using PointVec = std::array<Fe, 4>;  // homogeneous coordinates, leading nonzero = 1
using LineRep = std::array<Fe, 8>;   // 2x4 reduced row-echelon basis, row-major

// PG(3,q): all points and lines, incidence, pencils, and the line intersection
// graph Gamma (lines adjacent iff they share a point). Immutable after build;
// ids are positions in the lexicographic order of the normalized representations,
// which keeps every downstream artifact deterministic.
struct Geometry {
    const Field* field = nullptr;
    int q = 0;
    int n_points = 0;       // (q^2+1)(q+1)
    int n_lines = 0;        // (q^2+1)(q^2+q+1)
    int pencil_size = 0;    // q^2+q+1

    std::vector<PointVec> points;                 // sorted
    std::vector<LineRep> lines;                   // sorted
    std::vector<std::vector<uint16_t>> line_pts;  // per line: q+1 incident points, sorted
    std::vector<std::vector<uint16_t>> pencils;   // per point: incident lines, sorted
    BitMatrix gamma;                              // n_lines x n_lines adjacency

    int point_id(const PointVec& v) const;  // -1 if not found
    int line_id(const LineRep& r) const;    // -1 if not found

    // Unique line through two distinct points; throws on p1 == p2.
    int line_through(int p1, int p2) const;

    // Rank test on the stacked bases: do the two subspaces intersect nontrivially?
    // (A line "meets" itself; Gamma is nevertheless irreflexive.)
    bool lines_meet(int l1, int l2) const;

    // Intersection point of two distinct meeting lines, -1 if disjoint.
    int meet_point(int l1, int l2) const;
};

Geometry build_geometry(const Field& f);

// Normalizes a 2x4 basis to reduced row-echelon form. Returns false if the
// rows are dependent.
bool rref_line(const Field& f, LineRep& r);

// Normalize a nonzero homogeneous point vector (leading coordinate -> 1).
void normalize_point(const Field& f, PointVec& v);

struct GammaCheckReport {
    bool ok = false;
    uint64_t edges = 0;           // undirected edge count of Gamma
    uint64_t expected_edges = 0;  // n_points * C(pencil_size, 2)
    std::string detail;           // first offending pair on failure
};

// Verifies the clique structure: every pencil is a clique (checked against the
// rank-based meet test, not against gamma itself), every edge lies in exactly
// one pencil, and two pencils share exactly one line. `override_gamma` lets
// tests feed a perturbed adjacency matrix.
GammaCheckReport gamma_structure_check(const Geometry& g,
                                       const BitMatrix* override_gamma = nullptr);

// "p edge n m" header followed by one "e i j" line per edge (1-based).
void dump_gamma(const Geometry& g, std::ostream& os);

}  // namespace spreads
