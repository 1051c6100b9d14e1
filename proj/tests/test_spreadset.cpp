#include <doctest.h>

#include <random>
#include <set>

#include "spreads/classify.hpp"
#include "spreads/spreadset.hpp"

using namespace spreads;

TEST_CASE("regular spread set: a field of order q^2 in matrix form") {
    for (auto [p, e] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
        const Field& f = Field::get(p, e);
        SpreadSet reg = regular_spread_set(f);
        CHECK(validate_spread_set(reg).empty());
        CHECK((int)reg.mats.size() == f.q() * f.q());
        // closed under addition and multiplication: a field of order q^2
        auto find = [&](const Mat2& m) {
            return std::find(reg.mats.begin(), reg.mats.end(), m) != reg.mats.end();
        };
        for (const Mat2& x : reg.mats)
            for (const Mat2& y : reg.mats) {
                Mat2 sum{f.add(x.a, y.a), f.add(x.b, y.b), f.add(x.c, y.c), f.add(x.d, y.d)};
                CHECK(find(sum));
                Mat2 prod{f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
                          f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
                          f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
                          f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
                CHECK(find(prod));
            }
    }
}

TEST_CASE("to_spread_set recovers a set built from matrices") {
    Geometry g = build_geometry(Field::get(2, 1));
    SpreadSet reg = regular_spread_set(*g.field);
    Spread sp = from_spread_set(g, reg);
    CHECK(is_spread(g, sp.lines));
    SpreadSet back = to_spread_set(g, sp);
    CHECK(validate_spread_set(back).empty());
    // the canonical choice may differ from reg, but it must describe an
    // equivalent spread; for the regular spread at q=2 every spread is
    // equivalent, so just round-trip again
    Spread sp2 = from_spread_set(g, back);
    CHECK(is_spread(g, sp2.lines));

    // fixed point: encoding the canonical set again is stable
    SpreadSet again = to_spread_set(g, sp2);
    CHECK(encode_line(again) == encode_line(back));
}

TEST_CASE("q=8 regular spread: 64 matrices, 256-character line, bit-exact round trip") {
    const Field& f = Field::get(2, 3);
    SpreadSet reg = regular_spread_set(f);
    CHECK(reg.mats.size() == 64);
    CHECK(validate_spread_set(reg).empty());
    std::string line = encode_line(reg);
    CHECK(line.size() == 256);
    SpreadSet dec = decode_line(line, f);
    CHECK(dec.mats.size() == 64);
    CHECK(encode_line(dec) == line);
    CHECK(decode_line(line + "  \r\n", f).mats.size() == 64);  // trailing whitespace ok
    // zero matrix encodes as 0000 and sorts first
    CHECK(line.substr(0, 4) == "0000");
}

TEST_CASE("transpose is an involution and preserves the invariant") {
    const Field& f = Field::get(3, 1);
    SpreadSet reg = regular_spread_set(f);
    SpreadSet t = transpose_set(reg);
    CHECK(validate_spread_set(t).empty());
    CHECK(encode_line(transpose_set(t)) == encode_line(reg));
    // a symmetric set is a fixed point
    bool symmetric = true;
    for (const Mat2& m : reg.mats)
        if (m.b != m.c) symmetric = false;
    if (symmetric) CHECK(encode_line(t) == encode_line(reg));
}

TEST_CASE("the regular spread is equivalent to its transpose") {
    Geometry g = build_geometry(Field::get(2, 1));
    GroupPair groups = build_groups(g);
    SpreadSet reg = regular_spread_set(*g.field);
    Spread s1 = from_spread_set(g, reg);
    Spread s2 = from_spread_set(g, transpose_set(reg));
    MinImageEngine engine(groups.pgl, 2);
    CHECK(engine.min_image(s1.lines) == engine.min_image(s2.lines));
}

TEST_CASE("transpose preserves the invariant on randomly translated spreads") {
    Geometry g = build_geometry(Field::get(3, 1));
    GroupPair groups = build_groups(g);
    Spread reg = regular_spread(g);
    std::mt19937_64 rng(90);
    for (int t = 0; t < 100; ++t) {
        Perm r = groups.pgl->random_element(rng);
        Spread moved;
        moved.lines = apply_to_set(r, reg.lines);
        SpreadSet ss = to_spread_set(g, moved);
        CHECK(validate_spread_set(ss).empty());
        SpreadSet tt = transpose_set(ss);
        CHECK(validate_spread_set(tt).empty());
    }
}

TEST_CASE("from_spread_set round trip is equivalent under the collineation group") {
    Geometry g = build_geometry(Field::get(2, 1));
    GroupPair groups = build_groups(g);
    MinImageEngine engine(groups.pgl, 6);
    std::vector<Spread> all = spreads_from_scratch(g);
    for (int i = 0; i < 5; ++i) {
        const Spread& s = all[i * 7];
        SpreadSet ss = to_spread_set(g, s);
        Spread back = from_spread_set(g, decode_line(encode_line(ss), *g.field));
        CHECK(engine.min_image(back.lines) == engine.min_image(s.lines));
    }
}

TEST_CASE("scalar matrices at q=2") {
    const Field& f = Field::get(2, 1);
    SpreadSet s;
    s.field = &f;
    s.mats.push_back({0, 0, 0, 0});
    s.mats.push_back({1, 0, 0, 1});
    // {0, I} completes to a valid 4-matrix set? q^2 = 4 matrices needed; this
    // set alone is too small
    CHECK(!validate_spread_set(s).empty());
    // the regular set at q=2 is exactly {0, I, y, y+1} in matrix form
    SpreadSet reg = regular_spread_set(f);
    CHECK(encode_line(reg).size() == 16);
    Spread sp = from_spread_set(build_geometry(f), reg);
    CHECK(sp.lines.size() == 5);
}

TEST_CASE("decode errors") {
    const Field& f = Field::get(2, 1);
    CHECK_THROWS_AS(decode_line("000", f), std::invalid_argument);  // wrong length
    CHECK_THROWS_AS(decode_line("0000111122223333", f), std::invalid_argument);  // bad chars
    // duplicate matrices: zero difference is singular
    CHECK_THROWS_AS(decode_line("0000000010111011", f), std::invalid_argument);
    // missing zero matrix
    const Field& f3 = Field::get(3, 1);
    SpreadSet reg = regular_spread_set(f3);
    std::string line = encode_line(reg);
    // replace the zero matrix by something else already present? that would
    // duplicate; instead add 1 to every entry of the zero matrix -> "1111"
    // is I + y...; just check the missing-zero detector directly:
    SpreadSet no_zero = reg;
    no_zero.mats.erase(no_zero.mats.begin());
    no_zero.mats.push_back(no_zero.mats.back());
    CHECK(!validate_spread_set(no_zero).empty());
}

TEST_CASE("every spread set produced at q <= 3 satisfies the invariant") {
    for (int q : {2, 3}) {
        Geometry g = build_geometry(Field::get(q, 1));
        std::vector<Spread> all = spreads_from_scratch(g);
        for (size_t i = 0; i < all.size(); i += 7) {
            SpreadSet ss = to_spread_set(g, all[i]);
            CHECK(validate_spread_set(ss).empty());
        }
    }
}
