#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "spreads/gf.hpp"

using namespace spreads;

namespace {
const int kSupportedQ[][2] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
}

TEST_CASE("GF(8) uses x^3+x+1") {
    const Field& f = Field::get(2, 3);
    CHECK(f.q() == 8);
    CHECK(f.prim_poly() == std::vector<int>{1, 1, 0, 1});
    // x^3 = x + 1: idx 4 is x^3, add(x, 1) must give it
    CHECK(f.add(2, 1) == 4);
    // x * x = x^2: exponential encoding adds exponents
    CHECK(f.mul(2, 2) == 3);
}

TEST_CASE("prime fields and GF(4)") {
    const Field& f2 = Field::get(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f2.mul(1, 1) == 1);

    const Field& f4 = Field::get(2, 2);
    CHECK(f4.prim_poly() == std::vector<int>{1, 1, 1});

    // GF(9): x must have multiplicative order 8 (exhaustive order check)
    const Field& f9 = Field::get(3, 2);
    Fe x = 2;
    Fe acc = 1;
    std::set<Fe> powers;
    for (int i = 0; i < 8; ++i) {
        powers.insert(acc);
        acc = f9.mul(acc, x);
    }
    CHECK(acc == 1);
    CHECK(powers.size() == 8);
}

TEST_CASE("field axioms, exhaustive") {
    for (auto [p, e] : kSupportedQ) {
        const Field& f = Field::make(p, e);
        const int q = f.q();
        CAPTURE(q);
        for (int a = 0; a < q; ++a) {
            CHECK(f.add((Fe)a, 0) == a);
            CHECK(f.mul((Fe)a, 1) == a);
            CHECK(f.add((Fe)a, f.neg((Fe)a)) == 0);
            if (a != 0) CHECK(f.mul((Fe)a, f.inv((Fe)a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.add((Fe)a, (Fe)b) == f.add((Fe)b, (Fe)a));
                CHECK(f.mul((Fe)a, (Fe)b) == f.mul((Fe)b, (Fe)a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.add(f.add((Fe)a, (Fe)b), (Fe)c) == f.add((Fe)a, f.add((Fe)b, (Fe)c)));
                    CHECK(f.mul(f.mul((Fe)a, (Fe)b), (Fe)c) == f.mul((Fe)a, f.mul((Fe)b, (Fe)c)));
                    CHECK(f.mul((Fe)a, f.add((Fe)b, (Fe)c)) ==
                          f.add(f.mul((Fe)a, (Fe)b), f.mul((Fe)a, (Fe)c)));
                }
            }
        }
        // the multiplicative group is cyclic of order q-1 generated by idx 2
        if (q > 2) {
            std::set<Fe> seen;
            Fe acc = 1;
            for (int i = 0; i < q - 1; ++i) {
                seen.insert(acc);
                acc = f.mul(acc, 2);
            }
            CHECK(acc == 1);
            CHECK((int)seen.size() == q - 1);
        }
    }
}

TEST_CASE("frobenius") {
    const Field& f = Field::get(2, 3);
    for (int a = 0; a < 8; ++a) {
        // a^(p^e) = a
        Fe b = f.frob((Fe)a, 1);
        b = f.frob(b, 1);
        b = f.frob(b, 1);
        CHECK(b == a);
        CHECK(f.frob((Fe)a, 1) == f.mul((Fe)a, (Fe)a));
        CHECK(f.frob((Fe)a, 0) == a);
    }
    // frobenius is additive
    const Field& f9 = Field::get(3, 2);
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            CHECK(f9.frob(f9.add((Fe)a, (Fe)b), 1) ==
                  f9.add(f9.frob((Fe)a, 1), f9.frob((Fe)b, 1)));
}

TEST_CASE("character encoding") {
    const Field& f = Field::get(2, 3);
    CHECK(f.decode('1') == 1);   // multiplicative identity
    CHECK(f.decode('0') == 0);   // zero
    // '4' is x^3, which equals x + 1
    CHECK(f.decode('4') == f.add(f.decode('2'), f.decode('1')));
    for (auto [p, e] : kSupportedQ) {
        const Field& ff = Field::make(p, e);
        std::set<char> chars;
        for (int a = 0; a < ff.q(); ++a) {
            char c = ff.encode((Fe)a);
            chars.insert(c);
            CHECK(ff.decode(c) == a);
        }
        CHECK((int)chars.size() == ff.q());
    }
    CHECK_THROWS_AS(f.decode('8'), std::invalid_argument);
    CHECK_THROWS_AS(f.decode('a'), std::invalid_argument);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(Field::make(2, 4), std::invalid_argument);   // q > 9
    CHECK_THROWS_AS(Field::make(11, 1), std::invalid_argument);  // q > 9
    CHECK_THROWS_AS(Field::get(2, 3).inv(0), std::domain_error);
    // x^2+1 over GF(3) is irreducible but x has order 4: not primitive
    std::vector<int> not_primitive{1, 0, 1};
    CHECK_THROWS_AS(Field::make(3, 2, &not_primitive), std::invalid_argument);
    // reducible polynomial
    std::vector<int> reducible{1, 1, 1, 1};  // x^3+x^2+x+1 = (x+1)(x^2+1) over GF(2)
    CHECK_THROWS_AS(Field::make(2, 3, &reducible), std::invalid_argument);
    // a different primitive polynomial is accepted
    std::vector<int> alt{1, 0, 1, 1};  // x^3+x^2+1
    Field alt_field = Field::make(2, 3, &alt);
    CHECK(alt_field.q() == 8);
    CHECK(alt_field.add(2, 1) != 0);
}
