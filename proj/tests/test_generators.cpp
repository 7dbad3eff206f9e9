#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "halfguard/boolean.hpp"
#include "halfguard/classify.hpp"
#include "halfguard/generators.hpp"
#include "halfguard/visibility.hpp"
#include "test_util.hpp"

using namespace halfguard;
using hgtest::same_cycle;

namespace {

FamilySpec spec(Family f, long n, unsigned long seed = 0) {
    FamilySpec s;
    s.family = f;
    s.n = n;
    s.seed = seed;
    return s;
}

bool has_vertical_edge(const Polygon& P) {
    for (size_t i = 0; i < P.size(); ++i)
        if (P.edge(i).a.x == P.edge(i).b.x) return true;
    return false;
}

}  // namespace

TEST_CASE("family names round-trip") {
    for (Family f : {Family::MonLowerReflex, Family::MonLowerConvex, Family::OrthLower,
                     Family::MountainMedium, Family::MountainHighReflex, Family::TwoGuardable,
                     Family::RandomStaircase, Family::RandomSpiral, Family::RandomMountain}) {
        auto back = family_from_string(to_string(f));
        REQUIRE(back.has_value());
        CHECK(*back == f);
    }
    CHECK(!family_from_string("heptagon").has_value());
}

TEST_CASE("out-of-range parameters are rejected") {
    CHECK_THROWS_AS(generate(spec(Family::MonLowerReflex, 5)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::MonLowerReflex, 8)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::MonLowerReflex, 30)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::MonLowerConvex, 0)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::OrthLower, 4)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::OrthLower, 10)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::MountainMedium, 6)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::MountainHighReflex, 3)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::RandomStaircase, 0)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::RandomSpiral, 0)), GeometryError);
    CHECK_THROWS_AS(generate(spec(Family::RandomMountain, 2)), GeometryError);
    FamilySpec tg = spec(Family::TwoGuardable, 0);
    tg.length = 9;
    CHECK_THROWS_AS(generate(tg), GeometryError);
}

TEST_CASE("same seed same polygon, new seed new polygon") {
    for (Family f : {Family::RandomStaircase, Family::RandomSpiral, Family::RandomMountain,
                     Family::MountainMedium, Family::OrthLower}) {
        long n = f == Family::OrthLower ? 12 : f == Family::MountainMedium ? 11 : 4;
        Polygon a = generate(spec(f, n, 7));
        Polygon b = generate(spec(f, n, 7));
        CHECK(same_cycle(a, b));
        bool varies = false;
        for (unsigned long s = 8; s < 13 && !varies; ++s)
            varies = !same_cycle(a, generate(spec(f, n, s)));
        CHECK(varies);
    }
}

TEST_CASE("reflex lower-bound family shape") {
    for (long n : {6, 7, 9, 10, 12, 13, 27, 28}) {
        Polygon P = generate(spec(Family::MonLowerReflex, n));
        CHECK(P.size() == static_cast<size_t>(n));
        PolygonClass c = classify(P);
        CHECK(c.simple);
        CHECK(c.x_monotone);
        CHECK(!c.orthogonal);
        CHECK(!c.monotone_mountain);
        // hoods hang over the dips: every dip has a ceiling vertex at its x
        for (size_t i = 0; i < P.size(); ++i) {
            if (!(P.vertex(i).y == Rational(0))) continue;
            bool hood = false;
            for (size_t j = 0; j < P.size(); ++j)
                if (j != i && P.vertex(j).x == P.vertex(i).x && P.vertex(j).y > Rational(1))
                    hood = true;
            CHECK(hood);
        }
    }
}

TEST_CASE("convex lower-bound family shape") {
    for (long r : {1L, 2L, 3L, 5L}) {
        Polygon P = generate(spec(Family::MonLowerConvex, r));
        CHECK(P.size() == static_cast<size_t>(2 * r + 3));
        CHECK(P.reflex_indices().size() == static_cast<size_t>(r));
        PolygonClass c = classify(P);
        CHECK(c.x_monotone);
        CHECK(c.monotone_mountain);  // flat top edge over the tips' valley floor
    }
}

TEST_CASE("orthogonal comb family shape") {
    for (long n : {8, 12, 16, 24}) {
        Polygon P = generate(spec(Family::OrthLower, n, 3));
        CHECK(P.size() == static_cast<size_t>(n));
        PolygonClass c = classify(P);
        CHECK(c.orthogonal);
        CHECK(c.x_monotone);
        CHECK(!c.staircase);
        CHECK(P.reflex_indices().size() == static_cast<size_t>(n / 2 - 2));
    }
}

TEST_CASE("medium reflex mountain family shape") {
    for (long n = 7; n <= 16; ++n)
        for (unsigned long s = 1; s <= 3; ++s) {
            Polygon P = generate(spec(Family::MountainMedium, n, s));
            CHECK(P.size() == static_cast<size_t>(n));
            CHECK(classify(P).monotone_mountain);
            long r = static_cast<long>(P.reflex_indices().size());
            CHECK(2 * r >= n);   // reflex share stays in the middle band
            CHECK(4 * r <= 3 * n);
        }
}

TEST_CASE("high reflex mountain family shape") {
    for (long c : {4L, 5L, 6L}) {
        Polygon P = generate(spec(Family::MountainHighReflex, c));
        CHECK(P.size() == static_cast<size_t>(6 * c - 7));
        CHECK(classify(P).monotone_mountain);
        long r = static_cast<long>(P.reflex_indices().size());
        CHECK(r == 5 * c - 7);
        CHECK(4 * r > 3 * (6 * c - 7));
    }
}

TEST_CASE("random staircases really are staircases") {
    for (long k = 1; k <= 6; ++k)
        for (unsigned long s = 1; s <= 4; ++s) {
            Polygon P = generate(spec(Family::RandomStaircase, k, s));
            CHECK(classify(P).staircase);
            CHECK(P.size() == static_cast<size_t>(k == 1 ? 4 : 4 * k));
        }
}

TEST_CASE("random spirals really are spirals") {
    for (long k = 1; k <= 6; ++k)
        for (unsigned long s = 1; s <= 4; ++s) {
            FamilySpec sp = spec(Family::RandomSpiral, k, s);
            Polygon P = generate(sp);
            CHECK(classify(P).spiral);
            CHECK(P.reflex_indices().size() == static_cast<size_t>(k));
            CHECK(!has_vertical_edge(P));

            sp.allow_vertical = true;
            Polygon Q = generate(sp);
            CHECK(classify(Q).spiral);
            CHECK(has_vertical_edge(Q));
        }
}

TEST_CASE("random mountains really are mountains") {
    for (long n : {3, 4, 6, 9, 12})
        for (unsigned long s = 1; s <= 3; ++s)
            CHECK(classify(generate(spec(Family::RandomMountain, n, s))).monotone_mountain);
}

TEST_CASE("reflex family pairs at the hoods cover") {
    for (long n : {6, 7, 9, 12, 13}) {
        FamilySpec sp = spec(Family::MonLowerReflex, n);
        Polygon P = generate(sp);
        auto g = designated_guards(sp);
        CHECK(g.size() == static_cast<size_t>(2 * (n / 3)));
        CHECK(covers(P, g).covered);
    }
}

TEST_CASE("convex family designated guards cover with r+1") {
    for (long r : {1L, 2L, 3L}) {
        FamilySpec sp = spec(Family::MonLowerConvex, r);
        Polygon P = generate(sp);
        auto g = designated_guards(sp);
        CHECK(g.size() == static_cast<size_t>(r + 1));
        CHECK(covers(P, g).covered);
    }
}

TEST_CASE("comb family one guard per tooth covers") {
    for (long n : {8, 12, 16}) {
        FamilySpec sp = spec(Family::OrthLower, n, 5);
        Polygon P = generate(sp);
        auto g = designated_guards(sp);
        CHECK(g.size() == static_cast<size_t>(n / 4));
        for (const HalfGuard& h : g) CHECK(h.dir == Direction::Left);
        CHECK(covers(P, g).covered);
    }
}

TEST_CASE("medium mountain sweep stays within n/2 and covers") {
    for (long n = 7; n <= 16; ++n)
        for (unsigned long s = 1; s <= 3; ++s) {
            FamilySpec sp = spec(Family::MountainMedium, n, s);
            Polygon P = generate(sp);
            auto g = designated_guards(sp);
            CHECK(g.size() <= static_cast<size_t>(n / 2));
            for (const HalfGuard& h : g) CHECK(h.pos.y == Rational(10));
            CHECK(covers(P, g).covered);
        }
}

TEST_CASE("high reflex mountain pair count is exact") {
    for (long c : {4L, 5L}) {
        FamilySpec sp = spec(Family::MountainHighReflex, c);
        Polygon P = generate(sp);
        auto g = designated_guards(sp);
        CHECK(g.size() == static_cast<size_t>(2 * (c - 2)));
        CHECK(covers(P, g).covered);
    }
}

TEST_CASE("random mountains are covered by the case routing") {
    for (long n : {3, 5, 9, 13})
        for (unsigned long s = 1; s <= 2; ++s) {
            FamilySpec sp = spec(Family::RandomMountain, n, s);
            Polygon P = generate(sp);
            auto g = designated_guards(sp);
            CHECK(covers(P, g).covered);
        }
}

TEST_CASE("families without a designated construction say so") {
    CHECK_THROWS_AS(designated_guards(spec(Family::RandomStaircase, 3)), GeometryError);
    CHECK_THROWS_AS(designated_guards(spec(Family::RandomSpiral, 3)), GeometryError);
}

TEST_CASE("two guards suffice at every scale") {
    for (long L : {10L, 100L, 1000L}) {
        FamilySpec sp = spec(Family::TwoGuardable, 0);
        sp.length = L;
        Polygon P = generate(sp);
        CHECK(P.size() == 16);
        auto g = designated_guards(sp);
        REQUIRE(g.size() == 2);
        CHECK(g[0].dir == Direction::Right);
        CHECK(g[1].dir == Direction::Left);
        CHECK(covers(P, g).covered);
    }
}

TEST_CASE("two-guard layout marks the coverage handoffs") {
    FamilySpec sp = spec(Family::TwoGuardable, 0);
    sp.length = 100;
    Polygon P = generate(sp);
    TwoGuardableLayout lay = two_guardable_layout(sp);

    // both guards reach the ceiling point p1 and the floor point p2
    CHECK(half_sees(P, lay.gr, lay.p1));
    CHECK(half_sees(P, lay.gl, lay.p1));
    CHECK(half_sees(P, lay.gr, lay.p2));
    CHECK(half_sees(P, lay.gl, lay.p2));

    // one step past the handoff the lip and the step cut the sight lines
    Point beyond1{lay.p1.x - Rational(1), lay.p1.y};
    Point beyond2{lay.p2.x + Rational(1), lay.p2.y};
    CHECK(!half_sees(P, lay.gr, beyond1));
    CHECK(!half_sees(P, lay.gl, beyond2));

    // the pocket corners admit one direction only
    CHECK(half_sees(P, lay.gl, lay.p3));
    CHECK(!half_sees(P, lay.gr, lay.p3));
    CHECK(half_sees(P, lay.gr, lay.p4));
    CHECK(!half_sees(P, lay.gl, lay.p4));
}

TEST_CASE("comb witnesses have disjoint visibility polygons") {
    for (long n : {8, 12}) {
        FamilySpec sp = spec(Family::OrthLower, n, 2);
        Polygon P = generate(sp);
        WitnessSet w = witness_set(sp);
        REQUIRE(w.points.size() == static_cast<size_t>(n / 4));
        CHECK(w.claimed_bound == n / 4);
        CHECK(w.full_visibility_disjoint);
        std::vector<Polygon> vis;
        for (const Point& p : w.points) vis.push_back(visibility_polygon(P, p));
        for (size_t i = 0; i < vis.size(); ++i)
            for (size_t j = i + 1; j < vis.size(); ++j)
                CHECK(total_area(polygon_boolean(vis[i], vis[j], BoolOp::Intersection)) ==
                      Rational(0));
    }
}

TEST_CASE("convex family witnesses are pairwise unsharable") {
    FamilySpec sp = spec(Family::MonLowerConvex, 2);
    Polygon P = generate(sp);
    WitnessSet w = witness_set(sp);
    REQUIRE(w.points.size() == 3);
    CHECK(w.claimed_bound == 3);
    CHECK(!w.full_visibility_disjoint);
    for (size_t v = 0; v < P.size(); ++v)
        for (Direction d : {Direction::Left, Direction::Right}) {
            HalfGuard g{P.vertex(v), d};
            int seen = 0;
            for (const Point& p : w.points) seen += half_sees(P, g, p);
            CHECK(seen <= 1);
        }
}

TEST_CASE("reflex family witness pairing") {
    // full-size variant: no vertex half guard reaches two witness points
    FamilySpec sp = spec(Family::MonLowerReflex, 13);
    Polygon P = generate(sp);
    WitnessSet w = witness_set(sp);
    REQUIRE(w.points.size() == 8);
    CHECK(w.claimed_bound == 8);
    for (size_t v = 0; v < P.size(); ++v)
        for (Direction d : {Direction::Left, Direction::Right}) {
            HalfGuard g{P.vertex(v), d};
            int seen = 0;
            for (const Point& p : w.points) seen += half_sees(P, g, p);
            CHECK(seen <= 1);
        }

    // collapsed variant: every shareable witness set contains the wall point,
    // so a matching argument still forces 2k-1 guards
    FamilySpec sc = spec(Family::MonLowerReflex, 9);
    Polygon Q = generate(sc);
    WitnessSet wc = witness_set(sc);
    REQUIRE(wc.points.size() == 6);
    CHECK(wc.claimed_bound == 5);
    for (size_t v = 0; v < Q.size(); ++v)
        for (Direction d : {Direction::Left, Direction::Right}) {
            HalfGuard g{Q.vertex(v), d};
            std::set<size_t> seen;
            for (size_t t = 0; t < wc.points.size(); ++t)
                if (half_sees(Q, g, wc.points[t])) seen.insert(t);
            CAPTURE(v, to_string(d));
            CHECK(seen.size() <= 2);
            if (seen.size() == 2) CHECK(seen.count(0) == 1);
        }
}

TEST_CASE("witness points sit inside their polygon") {
    for (auto [f, n] : {std::pair<Family, long>{Family::MonLowerReflex, 12},
                        {Family::MonLowerConvex, 3},
                        {Family::OrthLower, 12}}) {
        FamilySpec sp = spec(f, n, 1);
        Polygon P = generate(sp);
        for (const Point& p : witness_set(sp).points) CHECK(P.contains(p));
    }
}

TEST_CASE("witness sets exist for the lower-bound families only") {
    CHECK_THROWS_AS(witness_set(spec(Family::MountainMedium, 9)), GeometryError);
    CHECK_THROWS_AS(witness_set(spec(Family::TwoGuardable, 0)), GeometryError);
    CHECK_THROWS_AS(witness_set(spec(Family::RandomStaircase, 3)), GeometryError);
}
