#pragma once

#include <string>
#include <vector>

#include "spreads/geometry.hpp"
#include "spreads/search.hpp"

namespace spreads {

// 2x2 matrix over GF(q), row-major.
struct Mat2 {
    Fe a = 0, b = 0, c = 0, d = 0;
    bool operator==(const Mat2&) const = default;
};

// q^2 matrices containing 0 with pairwise nonsingular differences, kept sorted
// by their 4-character encoding. W_infty together with the graph subspaces
// W_A = {(x, xA)} of the members reassembles the spread.
struct SpreadSet {
    const Field* field = nullptr;
    std::vector<Mat2> mats;
};

Fe det2(const Field& f, const Mat2& m);
Mat2 sub2(const Field& f, const Mat2& x, const Mat2& y);

// Checks |mats| == q^2, zero present, pairwise differences nonsingular.
// Returns an empty string when valid, else a description of the violation.
std::string validate_spread_set(const SpreadSet& s);

// Normalizes a spread to a spread set: picks the ordered pair of spread lines
// mapped to (W_infty, W_0) whose resulting encoded line is lexicographically
// least, trying every ordered pair.
SpreadSet to_spread_set(const Geometry& g, const Spread& s);

// {W_infty} u {W_A : A in set}; throws std::invalid_argument if the set is
// invalid (with the offending pair in the message).
Spread from_spread_set(const Geometry& g, const SpreadSet& s);

SpreadSet transpose_set(const SpreadSet& s);

// One text line of 4*q^2 digits (no newline), matrices row-by-row in the
// canonical sorted order.
std::string encode_line(const SpreadSet& s);

// Accepts trailing whitespace; validates length, characters, and the
// spread-set invariants. The matrices are re-sorted into canonical order.
SpreadSet decode_line(const std::string& text, const Field& f);

// The regular (Desarguesian) spread set: multiplication matrices of a
// quadratic field extension, i.e. {[[a, b], [bt, a+bs]]} for the first monic
// irreducible y^2 - sy - t.
SpreadSet regular_spread_set(const Field& f);
Spread regular_spread(const Geometry& g);

}  // namespace spreads
