#include <doctest.h>

#include <random>
#include <sstream>

#include "spreads/geometry.hpp"

using namespace spreads;

TEST_CASE("counts for small q") {
    struct Row {
        int p, e, pts, lns, pencil;
    };
    const Row rows[] = {
        {2, 1, 15, 35, 7},
        {3, 1, 40, 130, 13},
        {2, 2, 85, 357, 21},
    };
    for (const Row& r : rows) {
        Geometry g = build_geometry(Field::get(r.p, r.e));
        CAPTURE(g.q);
        CHECK(g.n_points == r.pts);
        CHECK(g.n_lines == r.lns);
        CHECK(g.pencil_size == r.pencil);
        CHECK((int)g.points.size() == r.pts);
        CHECK((int)g.lines.size() == r.lns);
        for (const auto& lp : g.line_pts) CHECK((int)lp.size() == g.q + 1);
        for (const auto& pen : g.pencils) CHECK((int)pen.size() == r.pencil);
    }
}

TEST_CASE("line 0 is span{e3,e4} and ids are lexicographic") {
    Geometry g = build_geometry(Field::get(2, 1));
    LineRep winf{};
    winf[2] = 1;
    winf[7] = 1;  // rows (0,0,1,0), (0,0,0,1)
    CHECK(g.line_id(winf) == 0);
    for (int l = 1; l < g.n_lines; ++l) CHECK(g.lines[l - 1] < g.lines[l]);
    for (int p = 1; p < g.n_points; ++p) CHECK(g.points[p - 1] < g.points[p]);
}

TEST_CASE("lines_meet") {
    Geometry g = build_geometry(Field::get(2, 1));
    // a line meets itself
    CHECK(g.lines_meet(0, 0));
    // W_infty and W_0 are complementary
    LineRep w0{};
    w0[0] = 1;
    w0[4 + 1] = 1;  // rows (1,0,0,0),(0,1,0,0)
    int id0 = g.line_id(w0);
    REQUIRE(id0 >= 0);
    CHECK(!g.lines_meet(0, id0));
    CHECK(!g.gamma.get(0, id0));
    // self loops absent from gamma
    for (int l = 0; l < g.n_lines; ++l) CHECK(!g.gamma.get(l, l));
    // two lines through a common point meet
    const auto& pen = g.pencils[0];
    CHECK(g.lines_meet(pen[0], pen[1]));
}

TEST_CASE("line_through") {
    Geometry g = build_geometry(Field::get(3, 1));
    // (1:0:0:0) and (0:1:0:0) span the line with RREF rows e1,e2
    PointVec p1{1, 0, 0, 0}, p2{0, 1, 0, 0};
    int id1 = g.point_id(p1), id2 = g.point_id(p2);
    REQUIRE(id1 >= 0);
    REQUIRE(id2 >= 0);
    LineRep expect{};
    expect[0] = 1;
    expect[4 + 1] = 1;
    CHECK(g.line_through(id1, id2) == g.line_id(expect));
    CHECK_THROWS_AS(g.line_through(id1, id1), std::invalid_argument);

    // two points of W_infty give line 0
    PointVec p3{0, 0, 1, 0}, p4{0, 0, 0, 1};
    CHECK(g.line_through(g.point_id(p3), g.point_id(p4)) == 0);

    // brute-force oracle: the line through two random points is the unique
    // line whose point list contains both
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        int a = (int)(rng() % g.n_points), b = (int)(rng() % g.n_points);
        if (a == b) continue;
        int got = g.line_through(a, b);
        int found = -1, count = 0;
        for (int l = 0; l < g.n_lines; ++l) {
            bool ha = std::binary_search(g.line_pts[l].begin(), g.line_pts[l].end(), (uint16_t)a);
            bool hb = std::binary_search(g.line_pts[l].begin(), g.line_pts[l].end(), (uint16_t)b);
            if (ha && hb) {
                found = l;
                ++count;
            }
        }
        CHECK(count == 1);
        CHECK(found == got);
    }
}

TEST_CASE("gamma structure") {
    Geometry g = build_geometry(Field::get(2, 1));
    GammaCheckReport rep = gamma_structure_check(g);
    CHECK(rep.ok);
    CHECK(rep.edges == 315);  // 15 * C(7,2)
    // regularity: each line meets (q+1) * q * (q+1) others
    for (int l = 0; l < g.n_lines; ++l) CHECK(g.gamma.row_count(l) == 3u * 2u * 3u);

    // negative control: flip one edge
    BitMatrix bad = g.gamma;
    bad.reset(g.pencils[0][0], g.pencils[0][1]);
    GammaCheckReport rep2 = gamma_structure_check(g, &bad);
    CHECK(!rep2.ok);
    CHECK(!rep2.detail.empty());
}

TEST_CASE("independence equals disjointness") {
    Geometry g = build_geometry(Field::get(3, 1));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        int a = (int)(rng() % g.n_lines), b = (int)(rng() % g.n_lines);
        if (a == b) continue;
        bool adjacent = g.gamma.get(a, b);
        bool share = g.meet_point(a, b) >= 0;
        CHECK(adjacent == share);
        CHECK(adjacent == g.lines_meet(a, b));
    }
}

TEST_CASE("gamma dump format") {
    Geometry g = build_geometry(Field::get(2, 1));
    std::ostringstream os;
    dump_gamma(g, os);
    std::istringstream is(os.str());
    std::string tag1, tag2;
    int n, m;
    is >> tag1 >> tag2 >> n >> m;
    CHECK(tag1 == "p");
    CHECK(tag2 == "edge");
    CHECK(n == 35);
    CHECK(m == 315);
}

TEST_CASE("q=8 and q=9 counts") {
    Geometry g8 = build_geometry(Field::get(2, 3));
    CHECK(g8.n_points == 585);
    CHECK(g8.n_lines == 4745);
    CHECK(g8.pencil_size == 73);
    for (int l = 0; l < 50; ++l) CHECK(g8.gamma.row_count(l) == 9u * 8 * 9);
    Geometry g9 = build_geometry(Field::get(3, 2));
    CHECK(g9.n_points == 820);
    CHECK(g9.n_lines == 7462);
    CHECK(g9.pencil_size == 91);
}
