#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halfguard/geom.hpp"

namespace halfguard {

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& m) : std::runtime_error(m) {}
};

enum class Location { Outside, Boundary, Interior };

/// Simple polygon, vertices stored counterclockwise. Consecutive collinear
/// vertices are rejected unless explicitly allowed at construction.
class Polygon {
public:
    /// Validates simplicity, orients counterclockwise. Throws GeometryError.
    static Polygon make(std::vector<Point> pts, bool allow_collinear = false) {
        if (pts.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
        const size_t n = pts.size();
        for (size_t i = 0; i < n; ++i)
            if (pts[i] == pts[(i + 1) % n])
                throw GeometryError("repeated consecutive vertex");

        Rational a2 = signed_area_twice_of(pts);
        if (a2.sign() == 0) throw GeometryError("polygon has zero area");
        if (a2.sign() < 0) std::reverse(pts.begin(), pts.end());

        if (!allow_collinear) {
            for (size_t i = 0; i < n; ++i) {
                const Point& p = pts[(i + n - 1) % n];
                const Point& q = pts[i];
                const Point& r = pts[(i + 1) % n];
                if (orient(p, q, r) == 0)
                    throw GeometryError("collinear consecutive vertices");
            }
        }

        for (size_t i = 0; i < n; ++i) {
            Segment ei{pts[i], pts[(i + 1) % n]};
            for (size_t j = i + 1; j < n; ++j) {
                Segment ej{pts[j], pts[(j + 1) % n]};
                SegHit h = intersect_segments(ei, ej);
                bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if (adjacent) {
                    if (h.kind != SegHit::At) throw GeometryError("overlapping adjacent edges");
                    const Point& shared = j == i + 1 ? pts[j] : pts[0];
                    if (!(h.p == shared)) throw GeometryError("adjacent edges touch off-vertex");
                } else if (h.kind != SegHit::None) {
                    throw GeometryError("self-intersecting boundary");
                }
            }
        }
        return Polygon(std::move(pts));
    }

    size_t size() const { return verts_.size(); }
    const std::vector<Point>& vertices() const { return verts_; }
    const Point& vertex(size_t i) const { return verts_[i % verts_.size()]; }
    Segment edge(size_t i) const {
        return {verts_[i % verts_.size()], verts_[(i + 1) % verts_.size()]};
    }

    Rational signed_area_twice() const { return signed_area_twice_of(verts_); }
    Rational area() const { return signed_area_twice() / Rational(2); }

    /// Interior angle test at vertex i (counterclockwise ring).
    bool is_reflex(size_t i) const {
        const size_t n = verts_.size();
        return orient(verts_[(i + n - 1) % n], verts_[i], verts_[(i + 1) % n]) < 0;
    }

    std::vector<size_t> reflex_indices() const {
        std::vector<size_t> out;
        for (size_t i = 0; i < verts_.size(); ++i)
            if (is_reflex(i)) out.push_back(i);
        return out;
    }

    /// Exact point location via horizontal crossing parity.
    Location locate(const Point& p) const {
        const size_t n = verts_.size();
        bool inside = false;
        for (size_t i = 0; i < n; ++i) {
            const Point& a = verts_[i];
            const Point& b = verts_[(i + 1) % n];
            if (on_segment(p, a, b)) return Location::Boundary;
            if ((a.y > p.y) != (b.y > p.y)) {
                // x at which the edge crosses the horizontal line through p
                Rational t = (p.y - a.y) / (b.y - a.y);
                Rational xint = a.x + t * (b.x - a.x);
                if (xint > p.x) inside = !inside;
            }
        }
        return inside ? Location::Interior : Location::Outside;
    }

    bool contains(const Point& p) const { return locate(p) != Location::Outside; }

    std::pair<Point, Point> bbox() const {
        Point lo = verts_[0], hi = verts_[0];
        for (const Point& v : verts_) {
            lo.x = std::min(lo.x, v.x);
            lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x);
            hi.y = std::max(hi.y, v.y);
        }
        return {lo, hi};
    }

    /// Same region with collinear vertices removed.
    Polygon pruned() const {
        std::vector<Point> out;
        const size_t n = verts_.size();
        for (size_t i = 0; i < n; ++i) {
            if (orient(verts_[(i + n - 1) % n], verts_[i], verts_[(i + 1) % n]) != 0)
                out.push_back(verts_[i]);
        }
        return make(std::move(out));
    }

    static Rational signed_area_twice_of(const std::vector<Point>& pts) {
        Rational s = 0;
        for (size_t i = 0; i < pts.size(); ++i)
            s += cross(pts[i], pts[(i + 1) % pts.size()]);
        return s;
    }

private:
    explicit Polygon(std::vector<Point> pts) : verts_(std::move(pts)) {}
    std::vector<Point> verts_;
};

/// True iff the closed segment [a, b] stays inside the closed polygon.
/// Splits [a, b] at every boundary crossing and tests one midpoint per piece.
inline bool segment_in_polygon(const Polygon& P, const Point& a, const Point& b) {
    if (!P.contains(a) || !P.contains(b)) return false;
    if (a == b) return true;
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    Segment s{a, b};
    for (size_t i = 0; i < P.size(); ++i) {
        SegHit h = intersect_segments(s, P.edge(i));
        if (h.kind == SegHit::At) {
            cuts.push_back(segment_param(a, b, h.p));
        } else if (h.kind == SegHit::Overlap) {
            cuts.push_back(segment_param(a, b, h.seg.a));
            cuts.push_back(segment_param(a, b, h.seg.b));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Point mid = a + (b - a) * ((cuts[i] + cuts[i + 1]) / Rational(2));
        if (!P.contains(mid)) return false;
    }
    return true;
}

}  // namespace halfguard
