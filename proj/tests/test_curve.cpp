#include <doctest.h>

#include <cmath>

#include "expbrush/curve.hpp"

using namespace expbrush;

namespace {

SubBrush fixture() {
    return make_sub_brush({ExternalAddress::parse("0"),
                           ExternalAddress::parse("0,0,2"),
                           ExternalAddress::parse("0,-1"),
                           ExternalAddress::parse("-1"),
                           ExternalAddress::parse("-1,2,1"),
                           ExternalAddress::parse("0,1")},
                          64);
}

double vertex_dist(const CurveVertex& v, double x, const Rat& y) {
    return std::hypot(v.x - x, rat_to_double(v.y - y));
}

}  // namespace

TEST_CASE("seed curve is the right edge, upward") {
    const auto g0 = seed_curve(Rect{});
    REQUIRE(g0.v.size() == 2);
    CHECK(g0.v[0].x == 1.0);
    CHECK(g0.v[0].y == Rat(-1));
    CHECK(g0.v[1].y == Rat(1));
}

TEST_CASE("single-box refinement detours around it") {
    const auto sb = fixture();
    const auto seed = seed_family(Rect{}, sb);
    const auto fam = next_family(seed, sb, 1, 0);
    REQUIRE(fam.boxes.size() == 1);
    const auto res = refine_curve(seed_curve(Rect{}), fam, 0);
    const auto& v = res.curve.v;
    // up to (1, 1/2), around [1, 1+ln2] x [1/2, 3/4], and on up to (1, 1).
    REQUIRE(v.size() == 6);
    CHECK(v[0].x == 1.0);
    CHECK(v[1].y == Rat(1, 2));
    CHECK(v[2].x == fam.right_edge);
    CHECK(v[2].y == Rat(1, 2));
    CHECK(v[3].x == fam.right_edge);
    CHECK(v[3].y == Rat(3, 4));
    CHECK(v[4].x == 1.0);
    CHECK(v[4].y == Rat(3, 4));
    CHECK(v[5].y == Rat(1));
    CHECK(res.stats.max_dev <= res.stats.bound_sqrt2_w);
}

TEST_CASE("curves crossing a box interior are rejected") {
    const auto sb = fixture();
    const auto fam = next_family(seed_family(Rect{}, sb), sb, 1, 0);
    REQUIRE(fam.boxes.size() == 1);
    Polyline through;
    through.v = {{0.0, Rat(5, 8)}, {3.0, Rat(5, 8)}};  // horizontal through the box
    CHECK_THROWS_WITH_AS(refine_curve(through, fam, 0),
                         doctest::Contains("interior"), Error);

    Polyline partial;  // covers only part of the left edge
    partial.v = {{1.0, Rat(1, 2)}, {1.0, Rat(5, 8)}};
    CHECK_THROWS_AS(refine_curve(partial, fam, 0), Error);
}

TEST_CASE("distinct first-level cylinders give distinct boxes") {
    // A wider seed reaches the "0,-1" tip (~1.094) as well as the "0" hair;
    // their depth-2 cylinders (1/4,1/2) and (1/2,3/4) are disjoint.
    const auto sb = make_sub_brush(
        {ExternalAddress::parse("0"), ExternalAddress::parse("0,-1")}, 64);
    const Rect seed{-2.0, 2.0, Rat(-1), Rat(1)};
    const auto fam = next_family(seed_family(seed, sb), sb, 1, 0);
    REQUIRE(fam.boxes.size() == 2);
    CHECK(fam.boxes[0].d < fam.boxes[1].c);
    CHECK(fam.boxes[0].witness != fam.boxes[1].witness);
}

TEST_CASE("empty family leaves the curve unchanged") {
    const auto g0 = seed_curve(Rect{});
    BoxFamily empty;
    empty.level = 1;
    empty.width = level_width(1, 0);
    empty.left_edge = 1.0;
    empty.right_edge = 1.0 + empty.width;
    const auto res = refine_curve(g0, empty, 0);
    CHECK(res.curve.v.size() == g0.v.size());
}

TEST_CASE("full build: bounds, recurrence, endpoints") {
    const auto sb = fixture();
    const auto build = build_curve(sb, 3, 0, Rect{});
    CHECK(build.levels_built == 3);
    CHECK_FALSE(build.chain.terminated_early);

    for (const auto& st : build.stats) {
        CHECK(st.max_dev <= st.bound_sqrt2_w);
        CHECK(st.max_dev < st.bound_five);
        CHECK(st.bound_sqrt2_w < st.bound_five);
    }

    // Right-edge recurrence: seed right + partial width sums.
    long double acc = 1.0L;
    for (int k = 1; k <= build.levels_built; ++k) {
        acc += (long double)level_width(k, 0);
        CHECK(std::abs((double)acc - build.chain.families[k].right_edge) <= 1e-12);
    }

    // Endpoints stay at the seed's right corners.
    CHECK(build.curve.v.front().x == 1.0);
    CHECK(build.curve.v.front().y == Rat(-1));
    CHECK(build.curve.v.back().x == 1.0);
    CHECK(build.curve.v.back().y == Rat(1));

    CHECK(build.cauchy_tail > 0.0);
    CHECK(build.cauchy_tail < 1.5);
}

TEST_CASE("kmax = 0 keeps the seed edge") {
    const auto build = build_curve(fixture(), 0, 0, Rect{});
    CHECK(build.curve.v.size() == 2);
    CHECK(build.cauchy_tail > 0.0);
}

TEST_CASE("unreachable tips leave the edge untouched") {
    // Tips of these addresses sit right of everything the construction can
    // reach from the default seed.
    const auto sb = make_sub_brush(
        {ExternalAddress::parse("2"), ExternalAddress::parse("-3,1")}, 32);
    const auto build = build_curve(sb, 3, 0, Rect{});
    CHECK(build.chain.terminated_early);
    CHECK(build.curve.v.size() == 2);
    CHECK(build.cauchy_tail == 0.0);
}

TEST_CASE("jordan assembly of the bare rectangle") {
    const auto jc = assemble_jordan(seed_curve(Rect{}), Rect{});
    CHECK(jc.loop.size() == 4);
    CHECK(jc.winding == 1);
}

TEST_CASE("jordan assembly of the fixture curve") {
    const auto sb = fixture();
    const auto build = build_curve(sb, 3, 0, Rect{});
    const auto jc = assemble_jordan(build.curve, Rect{});
    CHECK(jc.winding == 1);
    CHECK(point_in_loop(jc.loop, Rat(0), Rat(0)));
    CHECK_FALSE(point_in_loop(jc.loop, Rat(5), Rat(0)));
    // Interior points of detours are enclosed too.
    CHECK(point_in_loop(jc.loop, rat_from_double(1.2), Rat(3, 5)));
}

TEST_CASE("self-intersection detection") {
    // A bowtie: two non-adjacent segments cross.
    std::vector<CurveVertex> bowtie = {
        {0.0, Rat(0)}, {2.0, Rat(0)}, {2.0, Rat(2)},
        {1.0, Rat(2)}, {1.0, Rat(-1)}, {0.0, Rat(-1)},
    };
    const auto hit = find_self_intersection(bowtie);
    REQUIRE(hit.has_value());

    std::vector<CurveVertex> square = {
        {0.0, Rat(0)}, {1.0, Rat(0)}, {1.0, Rat(1)}, {0.0, Rat(1)}};
    CHECK_FALSE(find_self_intersection(square).has_value());

    // Touching a non-adjacent segment at one point is still a failure.
    std::vector<CurveVertex> touch = {
        {0.0, Rat(0)}, {2.0, Rat(0)}, {2.0, Rat(1)}, {1.0, Rat(1)},
        {1.0, Rat(0)},  // touches the first segment
        {1.0, Rat(2)}, {0.0, Rat(2)},
    };
    CHECK(find_self_intersection(touch).has_value());

    CHECK_THROWS_AS(
        assemble_jordan(Polyline{{{1.0, Rat(-1)}, {1.0, Rat(1)}}, 0, 0.0},
                        Rect{-1.0, 1.0, Rat(-1), Rat(2)}),
        PreconditionError);
}

TEST_CASE("planted crossing is rejected with the offending pair") {
    // Arc that wanders left into the seed's left side midway.
    Polyline bad;
    bad.v = {{1.0, Rat(-1)}, {3.0, Rat(-1)}, {3.0, Rat(0)},
             {-2.0, Rat(0)},  // crosses the seed's left edge
             {-2.0, Rat(1, 2)}, {1.0, Rat(1, 2)}, {1.0, Rat(1)}};
    try {
        assemble_jordan(bad, Rect{});
        FAIL("expected CurveNotSimple");
    } catch (const CurveNotSimple& e) {
        CHECK(e.seg_a != e.seg_b);
    }
}

TEST_CASE("localized build stays in its ball and encloses the center") {
    const auto sb = fixture();
    const double x0 = -0.1;
    const Rat y0(7, 10);
    const auto loc = localized_curve(x0, y0, 0.5, sb, 3);

    CHECK(loc.offset >= 1);
    CHECK(loc.build.levels_built == 3);
    for (const auto& v : loc.jordan.loop) CHECK(vertex_dist(v, x0, y0) <= 0.5);
    CHECK(loc.jordan.winding != 0);
    CHECK(point_in_loop(loc.jordan.loop, rat_from_double(x0), y0));

    const auto rep = validate_families(loc.build.chain, sb);
    CHECK(rep.pass);
}

TEST_CASE("offset picker meets its budget") {
    const int l = pick_level_offset(0.25);
    CHECK(l >= 1);
    // The chosen offset's width series must actually stay below the budget.
    double sum = 3.0 / (l + 512.0);
    for (int k = 512; k >= 1; --k) sum += level_width(k, l);
    CHECK(sum < 0.25);
    // And the previous offset must not (otherwise it would have been picked).
    if (l > 0) {
        double prev = 3.0 / (l - 1 + 512.0);
        for (int k = 512; k >= 1; --k) prev += level_width(k, l - 1);
        CHECK(prev >= 0.25);
    }
}
