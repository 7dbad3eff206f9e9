#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>

#include "halfguard/rational.hpp"

namespace halfguard {

struct Point {
    Rational x, y;

    friend bool operator==(const Point&, const Point&) = default;
    /// Lexicographic (x, then y); used for map keys and sweep orders.
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(const Rational& s) const { return {x * s, y * s}; }

    std::string str() const { return x.str() + " " + y.str(); }
};

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

/// Sign of the signed area of triangle (a, b, c): +1 left turn, -1 right, 0 collinear.
inline int orient(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - a).sign();
}

/// True iff p lies on the closed segment [a, b].
inline bool on_segment(const Point& p, const Point& a, const Point& b) {
    if (orient(a, b, p) != 0) return false;
    return dot(p - a, p - b).sign() <= 0;
}

struct Segment {
    Point a, b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Looking direction of a half guard. Left-looking sees x <= its own x,
/// right-looking sees x >= its own x (closed half planes).
enum class Direction { Left, Right };

inline Direction opposite(Direction d) {
    return d == Direction::Left ? Direction::Right : Direction::Left;
}

inline std::string to_string(Direction d) { return d == Direction::Left ? "L" : "R"; }

struct HalfGuard {
    Point pos;
    Direction dir;
    friend bool operator==(const HalfGuard&, const HalfGuard&) = default;
};

/// Intersection of two closed segments.
struct SegHit {
    enum Kind { None, At, Overlap } kind = None;
    Point p;       // valid when kind == At
    Segment seg;   // valid when kind == Overlap, endpoints ordered lexicographically
};

inline SegHit intersect_segments(const Segment& s, const Segment& t) {
    Point r = s.b - s.a, q = t.b - t.a;
    Rational denom = cross(r, q);
    if (denom.sign() != 0) {
        // Proper lines: single crossing point of the supporting lines.
        Rational u = cross(t.a - s.a, q) / denom;
        Rational v = cross(t.a - s.a, r) / denom;
        if (u.sign() < 0 || (u - 1).sign() > 0) return {};
        if (v.sign() < 0 || (v - 1).sign() > 0) return {};
        return {SegHit::At, s.a + r * u, {}};
    }
    if (cross(t.a - s.a, r).sign() != 0) return {};  // parallel, distinct lines
    // Collinear: overlap is an interval in the 1-D order along the line.
    Point lo1 = s.a, hi1 = s.b;
    if (hi1 < lo1) std::swap(lo1, hi1);
    Point lo2 = t.a, hi2 = t.b;
    if (hi2 < lo2) std::swap(lo2, hi2);
    Point lo = lo1 < lo2 ? lo2 : lo1;
    Point hi = hi1 < hi2 ? hi1 : hi2;
    if (hi < lo) return {};
    if (lo == hi) return {SegHit::At, lo, {}};
    return {SegHit::Overlap, {}, {lo, hi}};
}

/// Parameter of p on segment [a, b], assuming p is on the supporting line.
inline Rational segment_param(const Point& a, const Point& b, const Point& p) {
    Point d = b - a;
    if (d.x.sign() != 0) return (p.x - a.x) / d.x;
    return (p.y - a.y) / d.y;
}

/// Ray from origin through dir (dir != 0) hit with closed segment [a, b].
/// Returns smallest parameter t >= 0 with origin + t*dir on the segment.
inline std::optional<Rational> ray_hit(const Point& origin, const Point& dir,
                                       const Point& a, const Point& b) {
    Point e = b - a;
    Rational denom = cross(dir, e);
    if (denom.sign() != 0) {
        Rational t = cross(a - origin, e) / denom;
        Rational v = cross(a - origin, dir) / denom;
        if (t.sign() < 0 || v.sign() < 0 || (v - 1).sign() > 0) return std::nullopt;
        return t;
    }
    if (cross(a - origin, dir).sign() != 0) return std::nullopt;
    // Collinear: closest endpoint with t >= 0.
    auto param = [&](const Point& p) -> Rational {
        if (dir.x.sign() != 0) return (p.x - origin.x) / dir.x;
        return (p.y - origin.y) / dir.y;
    };
    Rational ta = param(a), tb = param(b);
    if (ta > tb) std::swap(ta, tb);
    if (tb.sign() < 0) return std::nullopt;
    return ta.sign() >= 0 ? ta : Rational(0);
}

/// Strict angular order of nonzero direction vectors, counterclockwise
/// starting at positive x axis. Equal directions (same ray) compare equal;
/// magnitudes are ignored.
inline std::strong_ordering angle_order(const Point& u, const Point& v) {
    auto half = [](const Point& p) {
        // 0: angle in [0, pi), 1: in [pi, 2pi)
        if (p.y.sign() > 0) return 0;
        if (p.y.sign() < 0) return 1;
        return p.x.sign() > 0 ? 0 : 1;
    };
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu <=> hv;
    return Rational(0) <=> cross(u, v);
}

}  // namespace halfguard
