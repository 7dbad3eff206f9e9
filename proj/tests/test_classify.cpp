#include <catch2/catch_amalgamated.hpp>

#include "halfguard/classify.hpp"
#include "test_util.hpp"

using namespace halfguard;
using hgtest::poly;

TEST_CASE("unit square flags") {
    PolygonClass c = classify(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(c.simple);
    CHECK(c.x_monotone);
    CHECK(c.y_monotone);
    CHECK(c.orthogonal);
    CHECK(c.staircase);
    CHECK(c.spiral);  // empty reflex chain
    CHECK_FALSE(c.monotone_mountain);
}

TEST_CASE("the L hexagon is a two-step staircase") {
    PolygonClass c = classify(poly({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}));
    CHECK(c.orthogonal);
    CHECK(c.x_monotone);
    CHECK(c.y_monotone);
    CHECK(c.staircase);
    CHECK(c.spiral);  // single reflex vertex
    CHECK_FALSE(c.monotone_mountain);
}

TEST_CASE("comb is orthogonal but monotone in x only") {
    Polygon comb = poly({{0, 0}, {5, 0}, {5, 3}, {4, 3}, {4, 1}, {3, 1},
                         {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
    PolygonClass c = classify(comb);
    CHECK(c.orthogonal);
    CHECK(c.x_monotone);
    CHECK_FALSE(c.y_monotone);
    CHECK_FALSE(c.staircase);
    CHECK_FALSE(c.monotone_mountain);
    CHECK_FALSE(c.spiral);  // two separated reflex pairs
}

TEST_CASE("mountain with flat top") {
    Polygon m = poly({{0, 6}, {1, 0}, {2, 3}, {3, 0}, {4, 6}});
    PolygonClass c = classify(m);
    CHECK(c.x_monotone);
    CHECK(c.monotone_mountain);
    CHECK_FALSE(c.orthogonal);
    CHECK(c.spiral);  // the lone reflex peak is one chain
}

TEST_CASE("mountain with flat bottom") {
    Polygon m = poly({{-2, 0}, {12, 0}, {10, 10}, {0, 10}});
    PolygonClass c = classify(m);
    CHECK(c.x_monotone);
    CHECK(c.monotone_mountain);
}

TEST_CASE("single-edge chain that is not horizontal is no mountain") {
    PolygonClass c = classify(poly({{0, 0}, {2, -3}, {4, 1}}));
    CHECK(c.x_monotone);
    CHECK_FALSE(c.monotone_mountain);
}

TEST_CASE("one notch keeps the reflex chain contiguous") {
    Polygon notch = poly({{0, 0}, {10, 0}, {10, 4}, {8, 4}, {8, 2}, {6, 2}, {6, 4}, {0, 4}});
    CHECK(classify(notch).spiral);
}

TEST_CASE("zigzag is not x-monotone") {
    // the boundary walks back in x four times
    Polygon z = poly({{0, 0}, {6, 0}, {6, 5}, {2, 5}, {2, 2}, {4, 2}, {4, 4}, {5, 4},
                      {5, 1}, {1, 1}, {1, 5}, {0, 5}});
    PolygonClass c = classify(z);
    CHECK_FALSE(c.x_monotone);
    CHECK_FALSE(c.monotone_mountain);
    CHECK_FALSE(c.staircase);
}

TEST_CASE("vertical edges do not break monotonicity") {
    // x-monotone with vertical edges at both extremes
    Polygon p = poly({{0, 0}, {3, 0}, {3, 2}, {2, 3}, {1, 3}, {0, 2}});
    PolygonClass c = classify(p);
    CHECK(c.x_monotone);
    CHECK(c.y_monotone);
    CHECK_FALSE(c.orthogonal);
}

TEST_CASE("convex polygons are trivially spiral and monotone") {
    Polygon hex = poly({{0, 0}, {2, 0}, {3, 1}, {2, 2}, {0, 2}, {-1, 1}});
    PolygonClass c = classify(hex);
    CHECK(c.x_monotone);
    CHECK(c.y_monotone);
    CHECK(c.spiral);
    CHECK_FALSE(c.monotone_mountain);
}
