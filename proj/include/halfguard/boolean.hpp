#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "halfguard/polygon.hpp"

namespace halfguard {

enum class BoolOp { Union, Intersection, Difference };

/// A point strictly inside the polygon: step inward from the midpoint of an
/// edge, halfway to the first boundary hit. Exact and valid for any simple
/// polygon whose interior is free of other geometry.
inline Point interior_point(const Polygon& P) {
    Segment e0 = P.edge(0);
    Point m = (e0.a + e0.b) * Rational(1, 2);
    Point d{-(e0.b.y - e0.a.y), e0.b.x - e0.a.x};  // inward normal, ring is CCW
    std::optional<Rational> tmin;
    for (size_t i = 0; i < P.size(); ++i) {
        Segment e = P.edge(i);
        auto t = ray_hit(m, d, e.a, e.b);
        if (t && t->sign() > 0 && (!tmin || *t < *tmin)) tmin = *t;
    }
    if (!tmin) throw GeometryError("no inward exit from boundary midpoint");
    return m + d * (*tmin / Rational(2));
}

namespace overlay {

/// Splits every segment at every intersection with every other segment.
/// Output subsegments are endpoint-ordered and deduplicated, so they meet
/// only at shared endpoints.
inline std::vector<std::pair<Point, Point>> split_segments(const std::vector<Segment>& segs) {
    const size_t m = segs.size();
    std::vector<std::vector<Rational>> cuts(m);
    for (size_t i = 0; i < m; ++i) cuts[i] = {Rational(0), Rational(1)};
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            SegHit h = intersect_segments(segs[i], segs[j]);
            if (h.kind == SegHit::None) continue;
            auto note = [&](const Point& p) {
                cuts[i].push_back(segment_param(segs[i].a, segs[i].b, p));
                cuts[j].push_back(segment_param(segs[j].a, segs[j].b, p));
            };
            if (h.kind == SegHit::At) {
                note(h.p);
            } else {
                note(h.seg.a);
                note(h.seg.b);
            }
        }
    }
    std::set<std::pair<Point, Point>> out;
    for (size_t i = 0; i < m; ++i) {
        auto& c = cuts[i];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        Point a = segs[i].a, d = segs[i].b - segs[i].a;
        for (size_t k = 0; k + 1 < c.size(); ++k) {
            Point p = a + d * c[k], q = a + d * c[k + 1];
            out.insert(p < q ? std::make_pair(p, q) : std::make_pair(q, p));
        }
    }
    return {out.begin(), out.end()};
}

struct Graph {
    std::vector<Point> pts;
    std::map<Point, int> ids;
    std::vector<std::vector<int>> adj;  // outgoing neighbors, sorted by angle

    int id(const Point& p) {
        auto [it, fresh] = ids.emplace(p, static_cast<int>(pts.size()));
        if (fresh) {
            pts.push_back(p);
            adj.emplace_back();
        }
        return it->second;
    }
};

inline Graph build_graph(const std::vector<std::pair<Point, Point>>& subsegs) {
    Graph g;
    for (const auto& [a, b] : subsegs) {
        int u = g.id(a), v = g.id(b);
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (size_t u = 0; u < g.adj.size(); ++u) {
        std::sort(g.adj[u].begin(), g.adj[u].end(), [&](int x, int y) {
            return angle_order(g.pts[x] - g.pts[u], g.pts[y] - g.pts[u]) < 0;
        });
    }
    return g;
}

/// Closed walks covering every directed edge once, with the face on the left:
/// after arriving at v, continue along the rotational predecessor of the
/// reversed edge. Bounded faces come out with positive total area.
inline std::vector<std::vector<int>> trace_walks(const Graph& g) {
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> walks;
    for (size_t u0 = 0; u0 < g.adj.size(); ++u0) {
        for (int v0 : g.adj[u0]) {
            if (seen.count({static_cast<int>(u0), v0})) continue;
            std::vector<int> walk;
            int u = static_cast<int>(u0), v = v0;
            do {
                seen.insert({u, v});
                walk.push_back(u);
                const auto& out = g.adj[v];
                size_t idx = std::find(out.begin(), out.end(), u) - out.begin();
                int w = out[(idx + out.size() - 1) % out.size()];
                u = v;
                v = w;
            } while (!(u == static_cast<int>(u0) && v == v0));
            walks.push_back(std::move(walk));
        }
    }
    return walks;
}

inline Rational walk_area_twice(const Graph& g, const std::vector<int>& w) {
    Rational s = 0;
    for (size_t i = 0; i < w.size(); ++i)
        s += cross(g.pts[w[i]], g.pts[w[(i + 1) % w.size()]]);
    return s;
}

/// Splits a closed walk at repeated vertices into vertex-disjoint simple
/// cycles. Walks revisit a vertex exactly at pinch points of their face.
inline std::vector<std::vector<int>> pinch_split(const std::vector<int>& walk) {
    std::vector<std::vector<int>> simple;
    std::vector<std::vector<int>> stack{walk};
    while (!stack.empty()) {
        std::vector<int> w = std::move(stack.back());
        stack.pop_back();
        if (w.size() < 3) throw GeometryError("degenerate overlay walk");
        std::map<int, size_t> pos;
        bool split = false;
        for (size_t i = 0; i < w.size(); ++i) {
            auto [it, fresh] = pos.emplace(w[i], i);
            if (fresh) continue;
            size_t j = it->second;
            std::vector<int> cyc(w.begin() + j, w.begin() + i);
            std::vector<int> rest(w.begin(), w.begin() + j);
            rest.insert(rest.end(), w.begin() + i, w.end());
            stack.push_back(std::move(cyc));
            stack.push_back(std::move(rest));
            split = true;
            break;
        }
        if (!split) simple.push_back(std::move(w));
    }
    return simple;
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

/// Vertical segment through v spanning the container cycle: from the lowest
/// to the highest crossing of the vertical line x = v.x with the cycle.
inline Segment spanning_chord(const Polygon& container, const Point& v) {
    std::optional<Rational> ylo, yhi;
    auto note = [&](const Rational& y) {
        if (!ylo || y < *ylo) ylo = y;
        if (!yhi || y > *yhi) yhi = y;
    };
    for (size_t i = 0; i < container.size(); ++i) {
        Segment e = container.edge(i);
        if (e.a.x == v.x && e.b.x == v.x) {
            note(e.a.y);
            note(e.b.y);
        } else if ((e.a.x <= v.x && v.x <= e.b.x) || (e.b.x <= v.x && v.x <= e.a.x)) {
            Rational t = (v.x - e.a.x) / (e.b.x - e.a.x);
            note(e.a.y + t * (e.b.y - e.a.y));
        }
    }
    if (!ylo || !(*ylo < v.y) || !(v.y < *yhi))
        throw GeometryError("chord anchor not strictly inside container");
    return {{v.x, *ylo}, {v.x, *yhi}};
}

/// All bounded faces of the arrangement of the given segments, as simple
/// polygons with pairwise disjoint interiors covering every bounded face.
/// Nested or pinched holes are resolved by inserting vertical chords and
/// rebuilding, so every reported cycle is a genuine face.
inline std::vector<std::vector<Point>> positive_faces(std::vector<Segment> segs) {
    for (int round = 0; round < 256; ++round) {
        auto subsegs = split_segments(segs);
        Graph g = build_graph(subsegs);
        Dsu dsu(g.pts.size());
        for (const auto& [a, b] : subsegs) dsu.unite(g.ids.at(a), g.ids.at(b));

        auto walks = trace_walks(g);
        struct Cyc {
            std::vector<int> ids;
            Rational area2;
            size_t walk;
        };
        std::vector<Cyc> pos, neg;
        std::vector<Rational> walk_total(walks.size());
        for (size_t wi = 0; wi < walks.size(); ++wi) {
            walk_total[wi] = walk_area_twice(g, walks[wi]);
            for (auto& sub : pinch_split(walks[wi])) {
                Rational a2 = walk_area_twice(g, sub);
                if (a2.sign() == 0) throw GeometryError("zero-area overlay cycle");
                (a2.sign() > 0 ? pos : neg).push_back({std::move(sub), a2, wi});
            }
        }
        std::vector<Polygon> pos_poly;
        pos_poly.reserve(pos.size());
        for (const auto& c : pos) {
            std::vector<Point> pts;
            for (int idx : c.ids) pts.push_back(g.pts[idx]);
            pos_poly.push_back(Polygon::make(std::move(pts), true));
        }

        auto innermost = [&](const Point& v, auto&& eligible) -> std::optional<size_t> {
            std::optional<size_t> best;
            for (size_t k = 0; k < pos.size(); ++k) {
                if (!eligible(k)) continue;
                if (pos_poly[k].locate(v) != Location::Interior) continue;
                if (!best || pos[k].area2 < pos[best.value()].area2) best = k;
            }
            return best;
        };

        // disjoint component nested inside a face of another component
        std::map<int, Point> comp_min;
        for (size_t i = 0; i < g.pts.size(); ++i) {
            int c = dsu.find(static_cast<int>(i));
            auto it = comp_min.find(c);
            if (it == comp_min.end() || g.pts[i] < it->second) comp_min[c] = g.pts[i];
        }
        std::optional<Segment> chord;
        if (comp_min.size() > 1) {
            for (const auto& [c, v] : comp_min) {
                auto best = innermost(v, [&](size_t k) {
                    return dsu.find(pos[k].ids[0]) != c;
                });
                if (best) {
                    chord = spanning_chord(pos_poly[*best], v);
                    break;
                }
            }
        }
        // hole attached to its face only at pinch vertices
        if (!chord) {
            for (const auto& h : neg) {
                if (walk_total[h.walk].sign() <= 0) continue;
                std::vector<int> cand = h.ids;
                std::sort(cand.begin(), cand.end(),
                          [&](int a, int b) { return g.pts[a] < g.pts[b]; });
                for (int vid : cand) {
                    auto best = innermost(g.pts[vid], [&](size_t k) {
                        return pos[k].walk == h.walk;
                    });
                    if (best) {
                        chord = spanning_chord(pos_poly[*best], g.pts[vid]);
                        break;
                    }
                }
                if (chord) break;
                throw GeometryError("pinched hole without interior anchor");
            }
        }
        if (!chord) {
            std::vector<std::vector<Point>> out;
            for (const auto& c : pos) {
                std::vector<Point> pts;
                for (int idx : c.ids) pts.push_back(g.pts[idx]);
                out.push_back(std::move(pts));
            }
            return out;
        }
        segs.push_back(*chord);
    }
    throw GeometryError("overlay chord insertion did not converge");
}

}  // namespace overlay

/// All bounded faces of the segment arrangement, as disjoint simple polygons.
inline std::vector<Polygon> arrangement_faces(const std::vector<Segment>& segs) {
    std::vector<Polygon> out;
    for (auto& cyc : overlay::positive_faces(segs))
        out.push_back(Polygon::make(std::move(cyc), true).pruned());
    return out;
}

/// Boolean operation on unions of simple polygons. The result is a set of
/// simple polygons with pairwise disjoint interiors whose union equals the
/// set-theoretic result up to measure zero; pieces are not merged across
/// shared edges.
inline std::vector<Polygon> polygon_boolean(const std::vector<Polygon>& A,
                                            const std::vector<Polygon>& B, BoolOp op) {
    if (A.empty()) return op == BoolOp::Union ? B : std::vector<Polygon>{};
    if (B.empty()) return op == BoolOp::Intersection ? std::vector<Polygon>{} : A;
    std::vector<Segment> segs;
    for (const auto& piece : A)
        for (size_t i = 0; i < piece.size(); ++i) segs.push_back(piece.edge(i));
    for (const auto& piece : B)
        for (size_t i = 0; i < piece.size(); ++i) segs.push_back(piece.edge(i));

    std::vector<Polygon> out;
    for (auto& cyc : overlay::positive_faces(segs)) {
        Polygon face = Polygon::make(std::move(cyc), true);
        Point p = interior_point(face);
        bool inA = std::any_of(A.begin(), A.end(),
                               [&](const Polygon& q) { return q.contains(p); });
        bool inB = std::any_of(B.begin(), B.end(),
                               [&](const Polygon& q) { return q.contains(p); });
        bool keep = op == BoolOp::Union          ? inA || inB
                    : op == BoolOp::Intersection ? inA && inB
                                                 : inA && !inB;
        if (keep) out.push_back(face.pruned());
    }
    return out;
}

inline std::vector<Polygon> polygon_boolean(const Polygon& A, const Polygon& B, BoolOp op) {
    return polygon_boolean(std::vector<Polygon>{A}, std::vector<Polygon>{B}, op);
}

inline Rational total_area(const std::vector<Polygon>& pieces) {
    Rational s = 0;
    for (const auto& p : pieces) s += p.area();
    return s;
}

}  // namespace halfguard
