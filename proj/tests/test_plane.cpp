#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spreads/plane.hpp"
#include "spreads/spreadset.hpp"

using namespace spreads;

TEST_CASE("hamada bound values") {
    CHECK(hamada_bound(2, 6).to_u64() == 730);
    CHECK(hamada_bound(3, 1).to_u64() == 7);
    CHECK(hamada_bound(5, 2).to_u64() == 226);
    CHECK(hamada_bound(2, 2).to_u64() == 10);
}

TEST_CASE("Fano plane fixture: rank 4 over GF(2)") {
    // PG(2,2) incidence, lines as 7 triples
    const int lines[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                             {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    BitMatrix m(7, 7);
    std::vector<std::vector<int>> naive(7, std::vector<int>(7, 0));
    for (int l = 0; l < 7; ++l)
        for (int j = 0; j < 3; ++j) {
            m.set(l, lines[l][j]);
            naive[l][lines[l][j]] = 1;
        }
    CHECK(oracle::naive_rank_mod_p(naive, 2) == 4);
    CHECK(matrix_rank_mod_p(m, 2, false) == 4);
    CHECK(matrix_rank_mod_p(m, 2, true) == 4);
}

TEST_CASE("plane from the regular spread of PG(3,2)") {
    Geometry g = build_geometry(Field::get(2, 1));
    Spread reg = regular_spread(g);
    TranslationPlane pl = build_plane(g, reg);
    CHECK(pl.n == 4);
    CHECK(pl.n_pts == 21);
    CHECK(pl.n_lns == 21);
    // every line has n+1 points
    for (int l = 0; l < pl.n_lns; ++l) CHECK(pl.incidence.row_count(l) == 5);
    int rank = p_rank(pl, 2);
    CHECK(rank == 10);
    CHECK(BigUint((uint64_t)rank) == hamada_bound(2, 2));
    CHECK(p_rank_serial(pl, 2) == 10);

    // histogram
    auto h = rank_histogram({rank});
    REQUIRE(h.size() == 1);
    CHECK(h.begin()->first == 10);
    CHECK(h.begin()->second == 1);
}

TEST_CASE("non-spread input is rejected") {
    Geometry g = build_geometry(Field::get(2, 1));
    Spread bad;
    for (pt l = 0; l < 5; ++l) bad.lines.push_back(l);  // overlapping lines
    CHECK_THROWS_AS(build_plane(g, bad), std::invalid_argument);
}

TEST_CASE("plane from the regular spread of PG(3,3)") {
    Geometry g = build_geometry(Field::get(3, 1));
    Spread reg = regular_spread(g);
    TranslationPlane pl = build_plane(g, reg);
    CHECK(pl.n == 9);
    CHECK(pl.n_pts == 91);
    // the Desarguesian plane of order 9 attains the Hamada bound 6^2+1 = 37
    int rank = p_rank(pl, 3);
    CHECK(rank == 37);
    CHECK(BigUint((uint64_t)rank) == hamada_bound(3, 2));
}

TEST_CASE("rank invariance under row and column permutation") {
    Geometry g = build_geometry(Field::get(2, 1));
    Spread reg = regular_spread(g);
    TranslationPlane pl = build_plane(g, reg);
    std::mt19937_64 rng(6);
    std::vector<int> rp(pl.n_lns), cp(pl.n_pts);
    for (int i = 0; i < pl.n_lns; ++i) rp[i] = i;
    for (int i = 0; i < pl.n_pts; ++i) cp[i] = i;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    BitMatrix relab(pl.n_lns, pl.n_pts);
    for (int l = 0; l < pl.n_lns; ++l)
        for (int c = 0; c < pl.n_pts; ++c)
            if (pl.incidence.get(l, c)) relab.set(rp[l], cp[c]);
    CHECK(matrix_rank_mod_p(relab, 2, false) == 10);
}

TEST_CASE("packed / sliced elimination agrees with the naive oracle") {
    std::mt19937_64 rng(123);
    for (int p : {2, 3, 5}) {
        for (int trial = 0; trial < 6; ++trial) {
            int n = 50;
            BitMatrix m(n, n);
            std::vector<std::vector<int>> naive(n, std::vector<int>(n, 0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (rng() & 1) {
                        m.set(i, j);
                        naive[i][j] = 1;
                    }
            int expect = oracle::naive_rank_mod_p(naive, p);
            CHECK(matrix_rank_mod_p(m, p, false) == expect);
            CHECK(matrix_rank_mod_p(m, p, true) == expect);
        }
    }
}

TEST_CASE("rank is at least the Hamada bound for every plane we build") {
    for (auto [p, e] : {std::pair{2, 1}, std::pair{3, 1}}) {
        Geometry g = build_geometry(Field::get(p, e));
        Spread reg = regular_spread(g);
        TranslationPlane pl = build_plane(g, reg);
        int rank = p_rank(pl, p);
        int m = 2 * e;  // plane order is q^2 = p^(2e)
        CHECK(BigUint((uint64_t)rank) >= hamada_bound(p, m));
    }
}
