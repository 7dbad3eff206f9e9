#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "halfguard/boolean.hpp"
#include "halfguard/polygon.hpp"

namespace halfguard {

/// Closed-segment sight: a sees b iff [a, b] stays inside the closed polygon.
inline bool sees(const Polygon& P, const Point& a, const Point& b) {
    return segment_in_polygon(P, a, b);
}

/// A half guard additionally needs the target on its looking side:
/// right-looking guards cover x >= own x, left-looking x <= own x.
inline bool half_sees(const Polygon& P, const HalfGuard& g, const Point& q) {
    if (g.dir == Direction::Right && q.x < g.pos.x) return false;
    if (g.dir == Direction::Left && q.x > g.pos.x) return false;
    return segment_in_polygon(P, g.pos, q);
}

namespace vis_detail {

/// u expressed in the frame whose positive x axis is s. Exact rotation:
/// preserves angular order relative to s.
inline Point rot_from(const Point& s, const Point& u) {
    return {dot(s, u), cross(s, u)};
}

/// d lies in the closed cone sweeping counterclockwise from s to e.
inline bool in_ccw_cone(const Point& s, const Point& e, const Point& d) {
    return angle_order(rot_from(s, d), rot_from(s, e)) <= 0;
}

}  // namespace vis_detail

/// Region of the closed polygon visible from g, as a simple polygon.
/// Computed by a radial sweep: between consecutive event directions the
/// nearest edge cannot change, so each wedge contributes the stretch of that
/// edge between the two bounding rays; gaps between wedges along an event ray
/// become window edges. The result is the regularized visible region: it is
/// the closure of the 2-D visible neighborhood, so zero-width sight lines
/// through grazing contacts contribute nothing.
inline Polygon visibility_polygon(const Polygon& P, const Point& g) {
    Location loc = P.locate(g);
    if (loc == Location::Outside) throw GeometryError("viewpoint outside polygon");

    // Interior cone at g: full circle inside, half plane on an open edge,
    // the wedge between the incident edges at a vertex.
    std::optional<std::pair<Point, Point>> cone;  // (start, end), CCW
    if (loc == Location::Boundary) {
        const size_t n = P.size();
        for (size_t i = 0; i < n && !cone; ++i)
            if (P.vertex(i) == g)
                cone = {{P.vertex(i + 1) - g, P.vertex((i + n - 1) % n) - g}};
        for (size_t i = 0; i < n && !cone; ++i) {
            Segment e = P.edge(i);
            if (on_segment(g, e.a, e.b)) cone = {{e.b - g, e.a - g}};
        }
    }

    std::vector<Point> dirs = {{Rational(1), Rational(0)},
                               {Rational(0), Rational(1)},
                               {Rational(-1), Rational(0)},
                               {Rational(0), Rational(-1)}};
    for (const Point& v : P.vertices())
        if (!(v == g)) dirs.push_back(v - g);
    if (cone) {
        std::vector<Point> kept{cone->first, cone->second};
        for (const Point& d : dirs)
            if (vis_detail::in_ccw_cone(cone->first, cone->second, d)) kept.push_back(d);
        dirs = std::move(kept);
        std::sort(dirs.begin(), dirs.end(), [&](const Point& a, const Point& b) {
            return angle_order(vis_detail::rot_from(cone->first, a),
                               vis_detail::rot_from(cone->first, b)) < 0;
        });
    } else {
        std::sort(dirs.begin(), dirs.end(),
                  [](const Point& a, const Point& b) { return angle_order(a, b) < 0; });
    }
    dirs.erase(std::unique(dirs.begin(), dirs.end(),
                           [](const Point& a, const Point& b) { return angle_order(a, b) == 0; }),
               dirs.end());

    const size_t m = dirs.size();
    const size_t wedges = cone ? m - 1 : m;
    std::vector<Point> ring;
    if (cone) ring.push_back(g);
    auto push = [&](const Point& p) {
        if (ring.empty() || !(ring.back() == p)) ring.push_back(p);
    };
    for (size_t k = 0; k < wedges; ++k) {
        const Point& d1 = dirs[k];
        const Point& d2 = dirs[(k + 1) % m];
        Point dm = d1 + d2;  // strictly inside the open wedge
        std::optional<Rational> tmin;
        size_t hit_edge = 0;
        for (size_t i = 0; i < P.size(); ++i) {
            Segment e = P.edge(i);
            auto t = ray_hit(g, dm, e.a, e.b);
            if (t && t->sign() > 0 && (!tmin || *t < *tmin)) {
                tmin = *t;
                hit_edge = i;
            }
        }
        if (!tmin) throw GeometryError("sweep ray found no boundary");
        Segment E = P.edge(hit_edge);
        auto t1 = ray_hit(g, d1, E.a, E.b);
        auto t2 = ray_hit(g, d2, E.a, E.b);
        if (!t1 || !t2) throw GeometryError("nearest edge does not span its wedge");
        push(g + d1 * *t1);
        push(g + d2 * *t2);
    }
    if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    return Polygon::make(std::move(ring), true).pruned();
}

struct VisibilityRegion {
    HalfGuard guard;
    std::vector<Polygon> pieces;  // disjoint simple pieces; may pinch at the guard
};

/// Visible region restricted to the guard's looking side. Clipping the full
/// region against the half plane can pinch at a reflex guard position or
/// collapse entirely, hence a piece list.
inline VisibilityRegion half_visibility(const Polygon& P, const HalfGuard& g) {
    Polygon V = visibility_polygon(P, g.pos);
    auto [lo, hi] = P.bbox();
    Rational x0 = g.dir == Direction::Right ? g.pos.x : lo.x - Rational(1);
    Rational x1 = g.dir == Direction::Right ? hi.x + Rational(1) : g.pos.x;
    Rational y0 = lo.y - Rational(1), y1 = hi.y + Rational(1);
    Polygon clip = Polygon::make({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    return {g, polygon_boolean(V, clip, BoolOp::Intersection)};
}

inline bool region_contains(const std::vector<Polygon>& pieces, const Point& p) {
    return std::any_of(pieces.begin(), pieces.end(),
                       [&](const Polygon& q) { return q.contains(p); });
}

struct CoverageReport {
    bool covered;
    Rational uncovered_area;
    std::vector<Polygon> uncovered;
};

/// Exact coverage test: subtracts every guard's half-visibility region from
/// the polygon. Covered means the leftover has zero area (coverage up to a
/// set of measure zero).
inline CoverageReport covers(const Polygon& P, const std::vector<HalfGuard>& guards) {
    std::vector<Polygon> residue{P};
    for (const HalfGuard& g : guards) {
        if (residue.empty()) break;
        residue = polygon_boolean(residue, half_visibility(P, g).pieces, BoolOp::Difference);
    }
    Rational left = total_area(residue);
    return {residue.empty(), left, std::move(residue)};
}

}  // namespace halfguard
