#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "halfguard/polygon.hpp"

namespace halfguard {

/// Corner indices into the polygon's vertex ring, counterclockwise.
struct Triangle {
    std::array<size_t, 3> v;
};

namespace tri_detail {

/// Closed containment in a counterclockwise triangle.
inline bool in_triangle(const Point& a, const Point& b, const Point& c, const Point& p) {
    return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

}  // namespace tri_detail

/// Ear clipping, exact arithmetic, O(n^3). A candidate ear is rejected if any
/// other remaining vertex lies in the closed ear triangle, which keeps later
/// triangles non-degenerate even on collinear-heavy rings.
inline std::vector<Triangle> triangulate(const Polygon& P) {
    const size_t n = P.size();
    std::vector<size_t> ring(n);
    for (size_t i = 0; i < n; ++i) ring[i] = i;

    std::vector<Triangle> tris;
    tris.reserve(n - 2);
    size_t guard_iters = 2 * n * n + 16;
    while (ring.size() > 3) {
        if (guard_iters-- == 0) throw GeometryError("ear clipping failed to make progress");
        bool clipped = false;
        for (size_t k = 0; k < ring.size(); ++k) {
            const size_t m = ring.size();
            size_t ia = ring[(k + m - 1) % m], ib = ring[k], ic = ring[(k + 1) % m];
            const Point &a = P.vertex(ia), &b = P.vertex(ib), &c = P.vertex(ic);
            if (orient(a, b, c) <= 0) continue;
            bool blocked = false;
            for (size_t j : ring) {
                if (j == ia || j == ib || j == ic) continue;
                if (tri_detail::in_triangle(a, b, c, P.vertex(j))) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            tris.push_back({{ia, ib, ic}});
            ring.erase(ring.begin() + static_cast<long>(k));
            clipped = true;
            break;
        }
        if (!clipped) throw GeometryError("no ear found; boundary too degenerate");
    }
    tris.push_back({{ring[0], ring[1], ring[2]}});
    return tris;
}

/// Vertex 3-coloring with all three colors on every triangle, via depth-first
/// propagation over the triangulation's dual tree.
inline std::vector<int> three_color(const Polygon& P, const std::vector<Triangle>& tris) {
    std::vector<int> color(P.size(), -1);
    std::vector<bool> done(tris.size(), false);
    std::vector<size_t> stack;

    color[tris[0].v[0]] = 0;
    color[tris[0].v[1]] = 1;
    color[tris[0].v[2]] = 2;
    done[0] = true;
    stack.push_back(0);

    size_t processed = 1;
    while (!stack.empty()) {
        size_t t = stack.back();
        stack.pop_back();
        for (size_t u = 0; u < tris.size(); ++u) {
            if (done[u]) continue;
            int shared = 0;
            for (size_t x : tris[u].v)
                for (size_t y : tris[t].v)
                    if (x == y) ++shared;
            if (shared != 2) continue;
            int used = 0;
            size_t open = tris[u].v[0];
            for (size_t x : tris[u].v) {
                if (color[x] >= 0)
                    used += color[x];
                else
                    open = x;
            }
            if (color[open] < 0) color[open] = 3 - used;
            done[u] = true;
            ++processed;
            stack.push_back(u);
        }
    }
    if (processed != tris.size()) throw GeometryError("triangulation dual is disconnected");
    return color;
}

}  // namespace halfguard
