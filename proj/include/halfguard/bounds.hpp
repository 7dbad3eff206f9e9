#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfguard/classify.hpp"
#include "halfguard/polygon.hpp"
#include "halfguard/triangulate.hpp"

namespace halfguard {

enum class Algorithm {
    FiskDouble,
    ConvexPartition,
    LShape,
    MountainCases,
    Staircase2Approx,
    SpiralDP,
    Oracle,
};

inline std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::FiskDouble: return "fisk";
        case Algorithm::ConvexPartition: return "convex";
        case Algorithm::LShape: return "lshape";
        case Algorithm::MountainCases: return "mountain";
        case Algorithm::Staircase2Approx: return "staircase";
        case Algorithm::SpiralDP: return "spiral";
        case Algorithm::Oracle: return "oracle";
    }
    return "?";
}

/// Guard set together with the count its placement procedure promises.
/// |guards| <= bound on admissible inputs; coverage is checked by covers().
struct GuardSolution {
    std::vector<HalfGuard> guards;
    Algorithm algorithm;
    long bound = 0;
    std::string notes;
};

namespace bounds_detail {

inline void prune_ring(std::vector<Point>& ring) {
    bool again = true;
    while (again && ring.size() > 2) {
        again = false;
        for (size_t i = 0; i < ring.size(); ++i) {
            const size_t m = ring.size();
            const Point& p = ring[(i + m - 1) % m];
            const Point& q = ring[i];
            const Point& r = ring[(i + 1) % m];
            if (q == r || orient(p, q, r) == 0) {
                ring.erase(ring.begin() + static_cast<long>(i));
                again = true;
                break;
            }
        }
    }
    if (ring.size() < 3) throw GeometryError("partition piece degenerated");
}

inline std::optional<size_t> first_reflex(const std::vector<Point>& ring) {
    const size_t m = ring.size();
    for (size_t i = 0; i < m; ++i)
        if (orient(ring[(i + m - 1) % m], ring[i], ring[(i + 1) % m]) < 0) return i;
    return std::nullopt;
}

struct CutHit {
    Rational t;
    Point z;
    size_t edge;
};

/// First boundary contact of the ray ring[i] + t*d, t > 0. The grazing
/// conventions of ray_hit make a collinear pass stop at the nearer endpoint,
/// so the open cut segment never rides along the boundary.
inline std::optional<CutHit> first_contact(const std::vector<Point>& ring, size_t i,
                                           const Point& d) {
    const size_t m = ring.size();
    std::optional<CutHit> best;
    for (size_t j = 0; j < m; ++j) {
        auto t = ray_hit(ring[i], d, ring[j], ring[(j + 1) % m]);
        if (!t || t->sign() <= 0) continue;
        if (!best || *t < best->t) best = CutHit{*t, ring[i] + d * *t, j};
    }
    if (best && best->z == ring[(best->edge + 1) % m]) best->edge = (best->edge + 1) % m;
    return best;
}

/// Splits the ring along the chord ring[i] -> hit.z. Both halves stay
/// counterclockwise and share the chord.
inline std::pair<std::vector<Point>, std::vector<Point>> split_ring(
    const std::vector<Point>& ring, size_t i, const CutHit& hit) {
    const size_t m = ring.size();
    std::vector<Point> first, second;
    for (size_t k = i;; k = (k + 1) % m) {
        first.push_back(ring[k]);
        if (k == hit.edge) break;
    }
    if (!(hit.z == ring[hit.edge])) first.push_back(hit.z);
    second.push_back(hit.z);
    for (size_t k = (hit.edge + 1) % m;; k = (k + 1) % m) {
        second.push_back(ring[k]);
        if (k == i) break;
    }
    return {std::move(first), std::move(second)};
}

inline size_t count_reflex(const std::vector<Point>& ring) {
    const size_t m = ring.size();
    size_t c = 0;
    for (size_t i = 0; i < m; ++i)
        if (orient(ring[(i + m - 1) % m], ring[i], ring[(i + 1) % m]) < 0) ++c;
    return c;
}

}  // namespace bounds_detail

/// Recursive partition into convex pieces: extend the incoming edge of a
/// reflex vertex through it until the boundary. Each cut straightens that
/// vertex, so at most r cuts and r+1 pieces result.
inline std::vector<std::vector<Point>> convex_partition(const Polygon& P) {
    using namespace bounds_detail;
    std::vector<std::vector<Point>> done, work{P.vertices()};
    size_t safety = 4 * P.size() + 16;
    while (!work.empty()) {
        if (safety-- == 0) throw GeometryError("convex partition failed to converge");
        std::vector<Point> ring = std::move(work.back());
        work.pop_back();
        prune_ring(ring);
        auto i = first_reflex(ring);
        if (!i) {
            done.push_back(std::move(ring));
            continue;
        }
        const size_t m = ring.size();
        Point d = ring[*i] - ring[(*i + m - 1) % m];
        auto hit = first_contact(ring, *i, d);
        if (!hit) throw GeometryError("edge extension left the polygon");
        auto [a, b] = split_ring(ring, *i, *hit);
        work.push_back(std::move(a));
        work.push_back(std::move(b));
    }
    return done;
}

/// One half guard per convex piece, right-looking at the piece's leftmost
/// vertex. r+1 pieces give the r+1 bound.
inline GuardSolution convex_partition_guards(const Polygon& P) {
    GuardSolution sol;
    sol.algorithm = Algorithm::ConvexPartition;
    sol.bound = static_cast<long>(P.reflex_indices().size()) + 1;
    auto pieces = convex_partition(P);
    for (const auto& ring : pieces) {
        size_t best = 0;
        for (size_t k = 1; k < ring.size(); ++k)
            if (ring[k] < ring[best]) best = k;
        sol.guards.push_back({ring[best], Direction::Right});
    }
    sol.notes = "pieces=" + std::to_string(pieces.size());
    return sol;
}

/// Triangulation 3-coloring: the least-used color class has at most n/3
/// vertices and touches every triangle; an opposite-looking pair per chosen
/// vertex acts as one full guard.
inline GuardSolution fisk_double(const Polygon& P) {
    auto tris = triangulate(P);
    auto color = three_color(P, tris);
    size_t cnt[3] = {0, 0, 0};
    for (int c : color) ++cnt[c];
    int pick = 0;
    for (int c : {1, 2})
        if (cnt[c] < cnt[pick]) pick = c;

    GuardSolution sol;
    sol.algorithm = Algorithm::FiskDouble;
    sol.bound = 2 * (static_cast<long>(P.size()) / 3);
    for (size_t i = 0; i < P.size(); ++i) {
        if (color[i] != pick) continue;
        sol.guards.push_back({P.vertex(i), Direction::Left});
        sol.guards.push_back({P.vertex(i), Direction::Right});
    }
    sol.notes = "color class " + std::to_string(pick) + " size " + std::to_string(cnt[pick]);
    return sol;
}

/// Horizontal-cut partition of an orthogonal polygon into rectangles and
/// L-pieces (at most one reflex vertex each). Cuts that join two reflex
/// vertices are preferred, then cuts isolating exactly one; the n/4 piece
/// bound is asserted rather than proven for arbitrary input.
inline std::vector<std::vector<Point>> lshape_partition(const Polygon& P) {
    using namespace bounds_detail;
    if (!classify(P).orthogonal) throw GeometryError("lshape partition needs an orthogonal polygon");

    std::vector<std::vector<Point>> done, work{P.vertices()};
    size_t safety = 4 * P.size() + 16;
    while (!work.empty()) {
        if (safety-- == 0) throw GeometryError("lshape partition failed to converge");
        std::vector<Point> ring = std::move(work.back());
        work.pop_back();
        prune_ring(ring);
        if (count_reflex(ring) <= 1) {
            done.push_back(std::move(ring));
            continue;
        }

        const size_t m = ring.size();
        int best_score = -1;
        size_t best_i = 0;
        CutHit best_hit{};
        for (size_t i = 0; i < m; ++i) {
            const Point& p = ring[(i + m - 1) % m];
            const Point& q = ring[i];
            const Point& r = ring[(i + 1) % m];
            if (orient(p, q, r) >= 0) continue;
            // extend the horizontal incident edge through the reflex corner
            Point d = p.y == q.y ? q - p : q - r;
            auto hit = first_contact(ring, i, d);
            if (!hit) continue;
            int score = 0;
            if (hit->z == ring[hit->edge] &&
                orient(ring[(hit->edge + m - 1) % m], ring[hit->edge],
                       ring[(hit->edge + 1) % m]) < 0) {
                score = 3;
            } else {
                auto [a, b] = split_ring(ring, i, *hit);
                prune_ring(a);
                prune_ring(b);
                size_t ra = count_reflex(a), rb = count_reflex(b);
                score = std::min(ra, rb) == 1 ? 2 : 1;
            }
            if (score > best_score) {
                best_score = score;
                best_i = i;
                best_hit = *hit;
            }
        }
        if (best_score < 0) throw GeometryError("no usable horizontal cut");
        auto [a, b] = split_ring(ring, best_i, best_hit);
        work.push_back(std::move(a));
        work.push_back(std::move(b));
    }
    size_t cap = P.size() / 4;
    if (done.size() > cap)
        throw GeometryError("lshape partition exceeded the n/4 piece bound");
    return done;
}

/// One half guard per L-piece at the convex corner that sees the whole piece,
/// looking toward the side of its vertical line the piece lies on.
inline GuardSolution lshape_guards(const Polygon& P) {
    GuardSolution sol;
    sol.algorithm = Algorithm::LShape;
    sol.bound = static_cast<long>(P.size()) / 4;
    auto pieces = lshape_partition(P);
    for (const auto& ring : pieces) {
        Polygon piece = Polygon::make(std::vector<Point>(ring));
        std::vector<size_t> order(ring.size());
        for (size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return ring[a] < ring[b]; });
        bool placed = false;
        for (size_t k : order) {
            if (piece.is_reflex(k)) continue;
            const Point& v = ring[k];
            bool all_right = true, all_left = true, sees_all = true;
            for (size_t w = 0; w < ring.size(); ++w) {
                if (ring[w].x < v.x) all_right = false;
                if (ring[w].x > v.x) all_left = false;
                if (w != k && !segment_in_polygon(piece, v, ring[w])) sees_all = false;
            }
            if (!sees_all || (!all_right && !all_left)) continue;
            sol.guards.push_back({v, all_right ? Direction::Right : Direction::Left});
            placed = true;
            break;
        }
        if (!placed) throw GeometryError("piece has no guarding corner");
    }
    sol.notes = "pieces=" + std::to_string(pieces.size());
    return sol;
}

namespace bounds_detail {

struct MountainFrame {
    Rational hy;                // height of the top chain H
    std::vector<size_t> chain;  // ring indices along the bottom chain, left to right
    std::vector<size_t> conv;   // positions in chain that are convex (ends included)
};

inline MountainFrame mountain_frame(const Polygon& P) {
    const size_t n = P.size();
    size_t imin = classify_detail::lex_extreme(P, false);
    size_t imax = classify_detail::lex_extreme(P, true);
    MountainFrame f;
    f.hy = P.vertex(imin).y;
    for (size_t i = imin;; i = (i + 1) % n) {
        f.chain.push_back(i);
        if (i == imax) break;
    }
    for (size_t k = 0; k < f.chain.size(); ++k)
        if (!P.is_reflex(f.chain[k])) f.conv.push_back(k);
    return f;
}

/// Split position of the reflex block between two convex chain positions:
/// highest vertex, leftmost on a tie. The convex endpoints compete too, so a
/// block that only descends (e.g. one hanging off a top corner) splits at its
/// left end and all of its edges fall to the vertex on the right. An all-reflex
/// block interior is unimodal, so each half of the split is y-monotone.
inline size_t gap_split(const Polygon& P, const MountainFrame& f, size_t a, size_t b) {
    size_t s = a;
    for (size_t k = a + 1; k <= b; ++k)
        if (P.vertex(f.chain[k]).y > P.vertex(f.chain[s]).y) s = k;
    return s;
}

inline Polygon mirror_y(const Polygon& P) {
    std::vector<Point> m;
    for (size_t i = P.size(); i-- > 0;) m.push_back({P.vertex(i).x, -P.vertex(i).y});
    return Polygon::make(std::move(m));
}

}  // namespace bounds_detail

/// Case placement on a monotone mountain: split every reflex block at its
/// top, then per bottom-chain convex vertex place two guards above it when
/// both adjacent split chains are long, otherwise one guard above the top of
/// the short side, looking across. All guards lie on H.
inline GuardSolution mountain_guards(const Polygon& P) {
    using namespace bounds_detail;
    PolygonClass cls = classify(P);
    if (!cls.monotone_mountain) throw GeometryError("mountain guards need a monotone mountain");
    const size_t n = P.size();
    size_t imin = classify_detail::lex_extreme(P, false);
    if ((imin + 1) % n == classify_detail::lex_extreme(P, true)) {
        // flat chain on the bottom: solve the mirrored polygon
        GuardSolution sol = mountain_guards(mirror_y(P));
        for (HalfGuard& g : sol.guards) g.pos.y = -g.pos.y;
        return sol;
    }

    MountainFrame f = mountain_frame(P);
    long cases[3] = {0, 0, 0};
    GuardSolution sol;
    sol.algorithm = Algorithm::MountainCases;

    auto push = [&](const Point& p, Direction d) {
        HalfGuard g{p, d};
        for (const HalfGuard& h : sol.guards)
            if (h == g) return;
        sol.guards.push_back(g);
    };

    bool run = false;  // inside a chain of single-edge dips sharing one guard
    for (size_t t = 1; t + 1 < f.conv.size(); ++t) {
        size_t v = f.conv[t];
        size_t sl = gap_split(P, f, f.conv[t - 1], v);
        size_t sr = gap_split(P, f, v, f.conv[t + 1]);
        size_t el = v - sl;  // edges of the left block that belong to v
        size_t er = sr - v;  // edges of the right block that belong to v
        Point ell = P.vertex(f.chain[sl]);
        Point rho = P.vertex(f.chain[sr]);
        if (el >= 2 && er >= 2) {
            push({P.vertex(f.chain[v]).x, f.hy}, Direction::Right);
            push({P.vertex(f.chain[v]).x, f.hy}, Direction::Left);
            ++cases[0];
            run = false;
        } else if (er >= 2) {
            // short or empty left side: one guard above its top sees both
            push({ell.x, f.hy}, Direction::Right);
            ++cases[1];
            run = false;
        } else if (el >= 2) {
            push({rho.x, f.hy}, Direction::Left);
            ++cases[1];
            run = false;
        } else {
            // a convex arc of dips (no reflex between) shares the run's guard
            if (!(run && v - f.conv[t - 1] == 1)) push({ell.x, f.hy}, Direction::Right);
            ++cases[2];
            run = true;
        }
    }

    long r = static_cast<long>(P.reflex_indices().size());
    long nn = static_cast<long>(n);
    sol.bound = 2 * r < nn ? r + 1 : nn / 2;
    sol.notes = "case1=" + std::to_string(cases[0]) + " case2=" + std::to_string(cases[1]) +
                " case3=" + std::to_string(cases[2]);
    return sol;
}

/// Reflex-heavy mountains: an opposite-looking pair on H above every bottom
/// convex vertex except the two chain ends, 2(n-r-2) guards total.
inline GuardSolution mountain_high_reflex_guards(const Polygon& P) {
    using namespace bounds_detail;
    PolygonClass cls = classify(P);
    if (!cls.monotone_mountain) throw GeometryError("mountain guards need a monotone mountain");
    const size_t n = P.size();
    size_t imin = classify_detail::lex_extreme(P, false);
    if ((imin + 1) % n == classify_detail::lex_extreme(P, true)) {
        GuardSolution sol = mountain_high_reflex_guards(mirror_y(P));
        for (HalfGuard& g : sol.guards) g.pos.y = -g.pos.y;
        return sol;
    }

    MountainFrame f = mountain_frame(P);
    GuardSolution sol;
    sol.algorithm = Algorithm::MountainCases;
    for (size_t t = 1; t + 1 < f.conv.size(); ++t) {
        Point h{P.vertex(f.chain[f.conv[t]]).x, f.hy};
        sol.guards.push_back({h, Direction::Right});
        sol.guards.push_back({h, Direction::Left});
    }
    sol.bound = 2 * (static_cast<long>(f.conv.size()) - 2);
    sol.notes = "pairs=" + std::to_string(f.conv.size() - 2);
    return sol;
}

}  // namespace halfguard
