#pragma once

#include <cstddef>
#include <vector>

#include "halfguard/polygon.hpp"

namespace halfguard {

/// Non-exclusive shape flags. staircase implies orthogonal, x_monotone and
/// y_monotone; monotone_mountain implies x_monotone.
struct PolygonClass {
    bool simple = false;
    bool x_monotone = false;
    bool y_monotone = false;
    bool monotone_mountain = false;
    bool orthogonal = false;
    bool staircase = false;
    bool spiral = false;
};

namespace classify_detail {

/// Cyclic sign changes of the nonzero entries. Zero entries extend the run
/// on either side; a closed boundary always has both signs, so a monotone
/// ring yields exactly two changes.
inline size_t cyclic_sign_changes(const std::vector<int>& signs) {
    std::vector<int> nz;
    for (int s : signs)
        if (s != 0) nz.push_back(s);
    if (nz.size() < 2) return 0;
    size_t changes = 0;
    for (size_t i = 0; i < nz.size(); ++i)
        if (nz[i] != nz[(i + 1) % nz.size()]) ++changes;
    return changes;
}

inline bool monotone_in(const Polygon& P, bool along_x) {
    std::vector<int> signs;
    signs.reserve(P.size());
    for (size_t i = 0; i < P.size(); ++i) {
        Rational d = along_x ? P.vertex(i + 1).x - P.vertex(i).x
                             : P.vertex(i + 1).y - P.vertex(i).y;
        signs.push_back(d.sign());
    }
    return cyclic_sign_changes(signs) == 2;
}

inline size_t lex_extreme(const Polygon& P, bool want_max) {
    size_t best = 0;
    for (size_t i = 1; i < P.size(); ++i) {
        const Point& a = P.vertex(i);
        const Point& b = P.vertex(best);
        bool less = a.x < b.x || (a.x == b.x && a.y < b.y);
        if (want_max ? !less && !(a == b) : less) best = i;
    }
    return best;
}

}  // namespace classify_detail

/// Decides every flag exactly. The input is already validated simple, so the
/// simple flag is always true.
inline PolygonClass classify(const Polygon& P) {
    using namespace classify_detail;
    const size_t n = P.size();
    PolygonClass c;
    c.simple = true;

    c.x_monotone = monotone_in(P, true);
    c.y_monotone = monotone_in(P, false);

    c.orthogonal = true;
    for (size_t i = 0; i < n; ++i) {
        Segment e = P.edge(i);
        if (e.a.x != e.b.x && e.a.y != e.b.y) {
            c.orthogonal = false;
            break;
        }
    }

    c.staircase = c.orthogonal && c.x_monotone && c.y_monotone;

    // Mountain: x-monotone and one of the two chains between the lex extremes
    // is a single horizontal edge. A square has two-edge chains only.
    if (c.x_monotone) {
        size_t imin = lex_extreme(P, false);
        size_t imax = lex_extreme(P, true);
        bool flat = P.vertex(imin).y == P.vertex(imax).y;
        bool upper_single = (imax + 1) % n == imin;
        bool lower_single = (imin + 1) % n == imax;
        c.monotone_mountain = flat && (upper_single || lower_single);
    }

    // Spiral: the reflex vertices form one contiguous cyclic chain, so the
    // reflex flag changes at most twice around the ring. Convex polygons
    // qualify with an empty chain.
    size_t flips = 0;
    for (size_t i = 0; i < n; ++i)
        if (P.is_reflex(i) != P.is_reflex((i + 1) % n)) ++flips;
    c.spiral = flips <= 2;

    return c;
}

}  // namespace halfguard
