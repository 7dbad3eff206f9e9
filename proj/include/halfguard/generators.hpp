#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "halfguard/bounds.hpp"

namespace halfguard {

enum class Family {
    MonLowerReflex,
    MonLowerConvex,
    OrthLower,
    MountainMedium,
    MountainHighReflex,
    TwoGuardable,
    RandomStaircase,
    RandomSpiral,
    RandomMountain,
};

inline std::string to_string(Family f) {
    switch (f) {
        case Family::MonLowerReflex: return "mon-lower-reflex";
        case Family::MonLowerConvex: return "mon-lower-convex";
        case Family::OrthLower: return "orth-lower";
        case Family::MountainMedium: return "mountain-medium";
        case Family::MountainHighReflex: return "mountain-high-reflex";
        case Family::TwoGuardable: return "two-guardable";
        case Family::RandomStaircase: return "random-staircase";
        case Family::RandomSpiral: return "random-spiral";
        case Family::RandomMountain: return "random-mountain";
    }
    return "?";
}

inline std::optional<Family> family_from_string(const std::string& s) {
    for (Family f : {Family::MonLowerReflex, Family::MonLowerConvex, Family::OrthLower,
                     Family::MountainMedium, Family::MountainHighReflex, Family::TwoGuardable,
                     Family::RandomStaircase, Family::RandomSpiral, Family::RandomMountain})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

/// n is the size parameter and is read per family: vertex count for
/// MonLowerReflex (n mod 3 in {0,1}), OrthLower (multiple of 4),
/// MountainMedium and RandomMountain; reflex count for MonLowerConvex and
/// RandomSpiral; convex-vertex count for MountainHighReflex; stair count for
/// RandomStaircase. TwoGuardable ignores n and scales with length.
struct FamilySpec {
    Family family;
    long n = 0;
    unsigned long seed = 0;
    Rational eps = Rational(1, 100);  // witness points sit at this fraction of their edge
    long length = 100;                // TwoGuardable long-edge scale
    bool allow_vertical = false;      // RandomSpiral: keep the unsheared vertical edges
};

/// Lower-bound certificate: claimed_bound is what the points prove for the
/// family's argument. full_visibility_disjoint says whether the points have
/// pairwise disjoint full-visibility polygons (the orthogonal comb) or are
/// only pairwise unseeable by a single half guard (the monotone families).
struct WitnessSet {
    std::vector<Point> points;
    long claimed_bound = 0;
    bool full_visibility_disjoint = false;
};

/// The marked points of the two-guard construction: p1 is the leftmost cap
/// ceiling point the right-looking guard reaches, p2 the rightmost sunken
/// floor point the left-looking guard reaches, p3 and p4 the far corners of
/// the two wall pockets that pin the guards' heights.
struct TwoGuardableLayout {
    Point p1, p2, p3, p4;
    HalfGuard gr, gl;
};

namespace gen_detail {

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Polygon ring_from_heights(const std::vector<Rational>& ys) {
    std::vector<Point> pts;
    pts.reserve(ys.size());
    for (size_t i = 0; i < ys.size(); ++i) pts.push_back({Rational(static_cast<long>(i)), ys[i]});
    return Polygon::make(std::move(pts));
}

/// Sagging ceiling of hoods over a comb of teeth. Hood heights follow a
/// strictly convex sequence (constant second difference 16), floor peaks sit
/// one unit under the local ceiling edge, so every straight sight between
/// points of different teeth is cut off by a hood or a peak; heights start at
/// 150 so the slit arithmetic beats the 1/100 witness offset up to n = 28.
inline Polygon mon_lower_reflex(long n) {
    if (n < 6 || n > 28 || n % 3 == 2)
        throw GeometryError("admissible sizes are 6 <= n <= 28 with n mod 3 in {0, 1}");
    const long k = n / 3;
    const bool collapsed = n % 3 == 0;
    auto hood = [&](long i) {
        long d = 2 * i - k - 1;
        return Rational(150 + 2 * d * d);
    };
    auto peak = [&](long i) { return (hood(i) + hood(i + 1)) / Rational(2) - 1; };
    Rational t0 = std::max(Rational(3) * hood(1) - hood(2), Rational(2) * (Rational(2) * hood(1) - hood(2))) / Rational(2) + 8;
    Rational tk = std::max(Rational(3) * hood(k) - hood(k - 1), Rational(2) * (Rational(2) * hood(k) - hood(k - 1))) / Rational(2) + 8;

    std::vector<Point> pts;
    if (!collapsed) pts.push_back({Rational(1), t0});
    for (long i = 1; i <= k; ++i) {
        pts.push_back({Rational(2 * i), Rational(0)});
        if (i < k) pts.push_back({Rational(2 * i + 1), peak(i)});
    }
    pts.push_back({Rational(2 * k + 1), tk});
    for (long i = k; i >= 1; --i) pts.push_back({Rational(2 * i), hood(i)});
    return Polygon::make(std::move(pts));
}

/// Horizontal top edge, tips at the floor, one low peak between consecutive
/// tips. The peaks are high enough that no half guard reaches two tips.
inline Polygon mon_lower_convex(long r) {
    if (r < 1) throw GeometryError("needs at least one reflex vertex");
    std::vector<Point> pts{{Rational(0), Rational(6)}};
    for (long j = 0; j <= r; ++j) {
        pts.push_back({Rational(2 * j + 1), Rational(0)});
        if (j < r) pts.push_back({Rational(2 * j + 2), Rational(5)});
    }
    pts.push_back({Rational(2 * r + 2), Rational(6)});
    return Polygon::make(std::move(pts));
}

/// Comb with unit teeth [2i, 2i+1] x [1, 1+H] over the base strip; tooth
/// height H >= 2 keeps the witness windows on the base floor disjoint.
inline Polygon orth_lower(long n, unsigned long seed) {
    if (n < 8 || n % 4 != 0) throw GeometryError("admissible sizes are multiples of 4, n >= 8");
    std::mt19937_64 rng(seed);
    const long k = n / 4;
    const Rational top = Rational(1 + uniform(rng, 2, 4));
    std::vector<Point> pts{{Rational(0), Rational(0)}, {Rational(2 * k - 1), Rational(0)}};
    pts.push_back({Rational(2 * k - 1), top});
    pts.push_back({Rational(2 * k - 2), top});
    for (long i = k - 2; i >= 0; --i) {
        pts.push_back({Rational(2 * i + 2), Rational(1)});
        pts.push_back({Rational(2 * i + 1), Rational(1)});
        pts.push_back({Rational(2 * i + 1), top});
        pts.push_back({Rational(2 * i), top});
    }
    return Polygon::make(std::move(pts));
}

/// Interior heights of one reflex chain, left to right. Slopes strictly
/// decrease inside a chain, so every interior vertex is reflex; chains touch
/// the anchors at slope +-1 below height 9 and the dips at slope >= 3, so
/// consecutive chains always meet convexly.
inline std::vector<long> medium_chain(long size, bool left_anchor, bool right_anchor,
                                      std::mt19937_64& rng) {
    if (left_anchor) return size == 2 ? std::vector<long>{9, 7} : std::vector<long>{9, 7, 4};
    if (right_anchor) return size == 2 ? std::vector<long>{7, 9} : std::vector<long>{4, 7, 9};
    if (size == 1) return {5};
    if (size == 3) return {4, 7, 4};
    return uniform(rng, 0, 1) ? std::vector<long>{5, 3} : std::vector<long>{3, 5};
}

/// Mountain with reflex share r = n - d - 2 between n/2 and 3n/4: d seeded
/// dips at the floor, anchor chains of 2..3 reflex vertices (tops at height
/// 9, so an opposite guard on H always exists and sees them by grazing),
/// middle chains of 1..3 reflex vertices with peaks at most 7.
inline Polygon mountain_medium(long n, unsigned long seed) {
    if (n < 7) throw GeometryError("needs n >= 7");
    std::mt19937_64 rng(seed);
    const long dmin = std::max(1L, (n - 5 + 3) / 4), dmax = (n - 5) / 2;
    const long d = uniform(rng, dmin, dmax);
    const long r = n - d - 2;

    std::vector<long> size(d + 1, 1), cap(d + 1, 2);
    size[0] = size[d] = 2;
    cap[0] = cap[d] = 1;
    long rem = r - 4 - (d - 1);
    while (rem > 0) {
        long j = uniform(rng, 0, d);
        if (cap[j] == 0) continue;
        ++size[j];
        --cap[j];
        --rem;
    }

    std::vector<Rational> ys{Rational(10)};
    for (long j = 0; j <= d; ++j) {
        for (long h : medium_chain(size[j], j == 0, j == d, rng)) ys.push_back(Rational(h));
        ys.push_back(j < d ? Rational(0) : Rational(10));
    }
    return gen_detail::ring_from_heights(ys);
}

/// Reflex fraction above 3/4: chains of 4 or 5 strictly concave edges between
/// floor dips at -3 under the top edge at 12.
inline Polygon mountain_high_reflex(long c) {
    if (c < 4) throw GeometryError("needs at least 4 convex vertices");
    std::vector<Rational> ys{Rational(12)};
    for (long h : {11, 9, 6, 2}) ys.push_back(Rational(h));
    for (long j = 0; j < c - 3; ++j) {
        ys.push_back(Rational(-3));
        for (long h : {2, 5, 6, 5, 2}) ys.push_back(Rational(h));
    }
    ys.push_back(Rational(-3));
    for (long h : {2, 6, 9, 11}) ys.push_back(Rational(h));
    ys.push_back(Rational(12));
    return gen_detail::ring_from_heights(ys);
}

inline Polygon two_guardable(long length) {
    if (length < 10) throw GeometryError("pocket geometry needs length >= 10");
    const Rational M(length);
    std::vector<Point> pts{
        {Rational(0), Rational(-2)}, {2 * M, Rational(-2)},   {2 * M, Rational(0)},
        {5 * M, Rational(0)},        {5 * M, Rational(4)},    {5 * M + 1, Rational(4)},
        {5 * M + 1, Rational(5)},    {5 * M, Rational(5)},    {5 * M, Rational(10)},
        {3 * M, Rational(10)},       {3 * M, Rational(8)},    {Rational(0), Rational(8)},
        {Rational(0), Rational(4)},  {Rational(-1), Rational(4)}, {Rational(-1), Rational(3)},
        {Rational(0), Rational(3)}};
    return Polygon::make(std::move(pts));
}

inline HalfGuard two_guardable_gr(long length) {
    return {{Rational(2 * length, 5) - 2, Rational(19, 4)}, Direction::Right};
}

inline HalfGuard two_guardable_gl(long length) {
    return {{Rational(23 * length, 5) + 2, Rational(13, 4)}, Direction::Left};
}

/// Band between a monotone lattice path (R a_i, U b_i) and the same path with
/// the first rise lengthened and the last shortened by one; the offset keeps
/// the chains one unit apart everywhere, so the band is simple.
inline Polygon random_staircase(long k, unsigned long seed) {
    if (k < 1) throw GeometryError("needs at least one stair");
    std::mt19937_64 rng(seed);
    std::vector<long> a(k), b(k);
    for (long i = 0; i < k; ++i) a[i] = uniform(rng, 1, 3);
    for (long i = 0; i < k; ++i) b[i] = uniform(rng, 1, 3);
    b[k - 1] = uniform(rng, 2, 3);
    if (k == 1)
        return Polygon::make({{Rational(0), Rational(0)},
                              {Rational(a[0]), Rational(0)},
                              {Rational(a[0]), Rational(b[0])},
                              {Rational(0), Rational(b[0])}});

    std::vector<long> X(k + 1, 0), Y(k + 1, 0);
    for (long i = 0; i < k; ++i) X[i + 1] = X[i] + a[i];
    for (long i = 0; i < k; ++i) Y[i + 1] = Y[i] + b[i];

    std::vector<Point> pts{{Rational(0), Rational(0)}};
    for (long i = 1; i <= k; ++i) {
        pts.push_back({Rational(X[i]), Rational(Y[i - 1])});
        pts.push_back({Rational(X[i]), Rational(Y[i])});
    }
    pts.push_back({Rational(X[k - 1]), Rational(Y[k])});
    for (long i = k - 1; i >= 1; --i) {
        pts.push_back({Rational(X[i]), Rational(Y[i] + 1)});
        pts.push_back({Rational(X[i - 1]), Rational(Y[i] + 1)});
    }
    return Polygon::make(std::move(pts));
}

/// Rectangular spiral midline with left turns only, thickened one unit toward
/// the turn side; the walk back along the offset wall makes those corners the
/// reflex chain. An x-shear removes vertical edges unless they are wanted.
inline Polygon random_spiral(long k, unsigned long seed, bool allow_vertical) {
    if (k < 1) throw GeometryError("needs at least one reflex vertex");
    std::mt19937_64 rng(seed);
    const Point dirs[4] = {{Rational(1), Rational(0)},
                           {Rational(0), Rational(1)},
                           {Rational(-1), Rational(0)},
                           {Rational(0), Rational(-1)}};
    auto ln = [&](long j) { return dirs[(j + 1) % 4]; };  // left normal of dirs[j % 4]

    std::vector<Point> mid{{Rational(0), Rational(0)}};
    for (long j = 0; j <= k; ++j) {
        Rational len(8 * (k + 2 - (j + 1)) + uniform(rng, 0, 3));
        mid.push_back(mid.back() + dirs[j % 4] * len);
    }
    std::vector<Point> pts = mid;
    pts.push_back(mid[k + 1] + ln(k));
    for (long j = k; j >= 1; --j) pts.push_back(mid[j] + ln(j) + ln(j - 1));
    pts.push_back(mid[0] + ln(0));

    if (!allow_vertical)
        for (Point& p : pts) p.x += p.y;
    return Polygon::make(std::move(pts));
}

inline Polygon random_mountain(long n, unsigned long seed) {
    if (n < 3) throw GeometryError("needs n >= 3");
    std::mt19937_64 rng(seed);
    std::vector<Rational> ys(n, Rational(10));
    for (long i = 1; i + 1 < n; ++i) ys[i] = Rational(uniform(rng, 0, 8));
    // straighten any collinear triple by local resampling
    for (bool again = true; again;) {
        again = false;
        for (long i = 1; i + 1 < n; ++i) {
            Point a{Rational(i - 1), ys[i - 1]}, b{Rational(i), ys[i]}, c{Rational(i + 1), ys[i + 1]};
            if (orient(a, b, c) == 0) {
                ys[i] = Rational(uniform(rng, 0, 8));
                again = true;
            }
        }
    }
    return gen_detail::ring_from_heights(ys);
}

}  // namespace gen_detail

inline Polygon generate(const FamilySpec& spec) {
    using namespace gen_detail;
    switch (spec.family) {
        case Family::MonLowerReflex: return mon_lower_reflex(spec.n);
        case Family::MonLowerConvex: return mon_lower_convex(spec.n);
        case Family::OrthLower: return orth_lower(spec.n, spec.seed);
        case Family::MountainMedium: return mountain_medium(spec.n, spec.seed);
        case Family::MountainHighReflex: return mountain_high_reflex(spec.n);
        case Family::TwoGuardable: return two_guardable(spec.length);
        case Family::RandomStaircase: return random_staircase(spec.n, spec.seed);
        case Family::RandomSpiral: return random_spiral(spec.n, spec.seed, spec.allow_vertical);
        case Family::RandomMountain: return random_mountain(spec.n, spec.seed);
    }
    throw GeometryError("unknown family");
}

/// The guard set the family's own upper-bound construction places. Random
/// staircases and spirals have none; they are solved by the dedicated
/// algorithms instead.
inline std::vector<HalfGuard> designated_guards(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::MonLowerReflex: {
            Polygon P = generate(spec);
            std::vector<HalfGuard> g;
            const long k = spec.n / 3;
            for (long i = 1; i <= k; ++i) {
                // the hood over tooth i; a pair there covers the whole tooth
                Point u{Rational(2 * i), Rational(0)};
                for (size_t v = 0; v < P.size(); ++v)
                    if (P.vertex(v).x == u.x && P.vertex(v).y > u.y) u = P.vertex(v);
                g.push_back({u, Direction::Left});
                g.push_back({u, Direction::Right});
            }
            return g;
        }
        case Family::MonLowerConvex: return convex_partition_guards(generate(spec)).guards;
        case Family::OrthLower: {
            std::vector<HalfGuard> g;
            for (long i = 0; i < spec.n / 4; ++i)
                g.push_back({{Rational(2 * i + 1), Rational(1)}, Direction::Left});
            return g;
        }
        case Family::MountainMedium:
        case Family::RandomMountain: return mountain_guards(generate(spec)).guards;
        case Family::MountainHighReflex: return mountain_high_reflex_guards(generate(spec)).guards;
        case Family::TwoGuardable:
            return {gen_detail::two_guardable_gr(spec.length),
                    gen_detail::two_guardable_gl(spec.length)};
        case Family::RandomStaircase:
        case Family::RandomSpiral:
            throw GeometryError("family has no designated guard construction");
    }
    throw GeometryError("unknown family");
}

/// Lower-bound witness points. The comb's tooth corners have pairwise
/// disjoint visibility polygons; the monotone families' points are placed on
/// the edges next to the floor vertices and are pairwise unseeable by one
/// half guard, which is the weaker pairing certificate.
inline WitnessSet witness_set(const FamilySpec& spec) {
    WitnessSet w;
    switch (spec.family) {
        case Family::MonLowerReflex: {
            // one point on each edge of a dip, near the edge's top end: up
            // there the hoods and the peak slits cut every shared sight line
            Polygon P = generate(spec);
            const size_t n = P.size();
            for (size_t i = 0; i < n; ++i) {
                if (!(P.vertex(i).y == Rational(0))) continue;
                const Point& c = P.vertex(i);
                Point prev = P.vertex((i + n - 1) % n), next = P.vertex((i + 1) % n);
                w.points.push_back(prev + (c - prev) * spec.eps);
                w.points.push_back(next + (c - next) * spec.eps);
            }
            w.claimed_bound = 2 * (spec.n / 3) - (spec.n % 3 == 0 ? 1 : 0);
            return w;
        }
        case Family::MonLowerConvex: {
            Polygon P = generate(spec);
            for (size_t i = 0; i < P.size(); ++i)
                if (P.vertex(i).y == Rational(0)) w.points.push_back(P.vertex(i));
            w.claimed_bound = spec.n + 1;
            return w;
        }
        case Family::OrthLower: {
            Polygon P = generate(spec);
            Rational top(0);
            for (size_t i = 0; i < P.size(); ++i) top = std::max(top, P.vertex(i).y);
            for (long i = 0; i < spec.n / 4; ++i) w.points.push_back({Rational(2 * i), top});
            w.claimed_bound = spec.n / 4;
            w.full_visibility_disjoint = true;
            return w;
        }
        default:
            throw GeometryError("witness points exist for the lower-bound families only");
    }
}

inline TwoGuardableLayout two_guardable_layout(const FamilySpec& spec) {
    if (spec.family != Family::TwoGuardable)
        throw GeometryError("layout is specific to the two-guard construction");
    const Rational M(spec.length);
    TwoGuardableLayout lay;
    lay.gr = gen_detail::two_guardable_gr(spec.length);
    lay.gl = gen_detail::two_guardable_gl(spec.length);
    lay.p1 = {3 * M + (3 * M - lay.gr.pos.x) * Rational(2) / (Rational(8) - lay.gr.pos.y),
              Rational(10)};
    lay.p2 = {2 * M - (lay.gl.pos.x - 2 * M) * Rational(2) / lay.gl.pos.y, Rational(-2)};
    lay.p3 = {Rational(-1), Rational(4)};
    lay.p4 = {5 * M + 1, Rational(4)};
    return lay;
}

}  // namespace halfguard
