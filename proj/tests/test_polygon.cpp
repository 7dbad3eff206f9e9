#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "halfguard/io.hpp"
#include "halfguard/polygon.hpp"
#include "test_util.hpp"

using namespace halfguard;
using hgtest::poly;
using hgtest::pt;

TEST_CASE("construction normalizes to counterclockwise") {
    Polygon ccw = poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    Polygon cw = poly({{0, 2}, {2, 2}, {2, 0}, {0, 0}});
    CHECK(ccw.signed_area_twice() == Rational(8));
    CHECK(cw.signed_area_twice() == Rational(8));
    CHECK(hgtest::same_cycle(ccw, cw));
    CHECK(ccw.area() == Rational(4));
}

TEST_CASE("construction rejects degenerate input") {
    CHECK_THROWS_AS(poly({{0, 0}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), GeometryError);
    CHECK_THROWS_AS(poly({{0, 0}, {1, 1}, {2, 2}}), GeometryError);
    // bowtie
    CHECK_THROWS_AS(poly({{0, 0}, {2, 2}, {2, 0}, {0, 2}}), GeometryError);
    // spike revisits an edge
    CHECK_THROWS_AS(poly({{0, 0}, {4, 0}, {2, 0}, {2, 2}}), GeometryError);
    // collinear vertex rejected by default, accepted on request
    CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}), GeometryError);
    CHECK_NOTHROW(poly({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}}, true));
}

TEST_CASE("locate on a square") {
    Polygon sq = poly({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
    CHECK(sq.locate(pt(2, 2)) == Location::Interior);
    CHECK(sq.locate(pt(0, 0)) == Location::Boundary);
    CHECK(sq.locate(pt(4, 2)) == Location::Boundary);
    CHECK(sq.locate(pt(2, 0)) == Location::Boundary);
    CHECK(sq.locate(pt(5, 2)) == Location::Outside);
    CHECK(sq.locate(pt(-1, 4)) == Location::Outside);
    CHECK(sq.locate(pt(2, 5)) == Location::Outside);
    Point half{Rational(1, 2), Rational(7, 2)};
    CHECK(sq.locate(half) == Location::Interior);
}

TEST_CASE("locate on an L-shape") {
    // unit cells [0,2]x[0,1] plus [0,1]x[1,2]
    Polygon L = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    CHECK(L.locate(pt(1, 1)) == Location::Boundary);  // reflex corner
    CHECK(L.area() == Rational(3));
    Point inNotch{Rational(3, 2), Rational(3, 2)};
    CHECK(L.locate(inNotch) == Location::Outside);
    Point inside{Rational(1, 2), Rational(3, 2)};
    CHECK(L.locate(inside) == Location::Interior);
    CHECK(L.reflex_indices() == std::vector<size_t>{3});
    CHECK_FALSE(L.is_reflex(0));
}

TEST_CASE("pruned drops collinear vertices") {
    Polygon p = poly({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {1, 2}, {0, 2}}, true);
    Polygon q = p.pruned();
    CHECK(q.size() == 4);
    CHECK(q.area() == p.area());
}

TEST_CASE("bbox") {
    Polygon L = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    auto [lo, hi] = L.bbox();
    CHECK(lo == pt(0, 0));
    CHECK(hi == pt(2, 2));
}

TEST_CASE("segment_in_polygon honors the closed boundary") {
    Polygon L = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    // fully interior
    CHECK(segment_in_polygon(L, {Rational(1, 2), Rational(1, 2)},
                             {Rational(3, 2), Rational(1, 2)}));
    // along the boundary counts as seen
    CHECK(segment_in_polygon(L, pt(0, 0), pt(2, 0)));
    CHECK(segment_in_polygon(L, pt(2, 1), pt(1, 1)));
    // blocked around the reflex corner
    CHECK_FALSE(segment_in_polygon(L, {Rational(7, 4), Rational(1, 2)},
                                   {Rational(1, 2), Rational(3, 2)}));
    // grazing exactly through the reflex corner stays inside
    CHECK(segment_in_polygon(L, pt(2, 0), pt(0, 2)));
    CHECK(segment_in_polygon(L, {Rational(3, 2), Rational(1, 2)},
                             {Rational(1, 2), Rational(3, 2)}));
    // segment leaving and re-entering is rejected: diagonal of the notch
    CHECK_FALSE(segment_in_polygon(L, pt(2, 1), pt(1, 2)));
    // endpoint outside
    CHECK_FALSE(segment_in_polygon(L, pt(0, 0), pt(3, 0)));
}

TEST_CASE("segment_in_polygon sees all vertices from a kernel point") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 30; ++it) {
        Polygon star = hgtest::random_star_polygon(rng, 8);
        for (const Point& v : star.vertices())
            CHECK(segment_in_polygon(star, pt(0, 0), v));
    }
}

TEST_CASE("polygon io round-trip") {
    Polygon L = poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    std::ostringstream out;
    write_polygon(out, L);
    Polygon back = read_polygon_text(out.str());
    CHECK(hgtest::same_cycle(L, back));
}

TEST_CASE("polygon io accepts fractions, decimals, comments") {
    std::string text =
        "# a thin triangle\n"
        "3\n"
        "0 0   # origin\n"
        "5/2 0.5\n"
        "1 4\n";
    Polygon p = read_polygon_text(text);
    CHECK(p.size() == 3);
    CHECK(p.vertices()[1] == Point{Rational(5, 2), Rational(1, 2)});
}

TEST_CASE("polygon io rejects malformed input") {
    CHECK_THROWS_AS(read_polygon_text(""), ParseError);
    CHECK_THROWS_AS(read_polygon_text("2\n0 0\n1 1\n"), ParseError);
    CHECK_THROWS_AS(read_polygon_text("3\n0 0\n1 1\n"), ParseError);
    CHECK_THROWS_AS(read_polygon_text("3\n0 0\n1 1\n2 2\n3 3\n"), ParseError);
    CHECK_THROWS_AS(read_polygon_text("3\n0 0\nx 1\n2 2\n"), ParseError);
    CHECK_THROWS_AS(read_polygon_text("banana\n"), ParseError);
    // geometric rejection surfaces as ParseError too
    CHECK_THROWS_AS(read_polygon_text("3\n0 0\n1 1\n2 2\n"), ParseError);
    CHECK_THROWS_AS(read_polygon_text("4\n0 0\n2 2\n2 0\n0 2\n"), ParseError);
}
