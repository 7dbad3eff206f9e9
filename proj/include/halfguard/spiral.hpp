#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfguard/bounds.hpp"
#include "halfguard/classify.hpp"
#include "halfguard/geom.hpp"
#include "halfguard/polygon.hpp"
#include "halfguard/visibility.hpp"

namespace halfguard {

/// A corner is a convex-chain vertex whose two boundary neighbours lie on the
/// same side of the vertical line through it. Left corner: both to the right.
enum class CornerKind { LeftCorner, RightCorner };

/// Boundary split of a spiral polygon. The convex chain runs clockwise from
/// u = convex_chain.front() to u' = convex_chain.back() and carries every
/// convex vertex. The reflex chain starts at the same u and continues
/// counterclockwise through the reflex vertices; its edge i joins
/// reflex_chain[i-1] to reflex_chain[i], 1-based. The closing edge from the
/// last reflex vertex back to u' is part of the inner wall but carries no
/// index of its own.
struct SpiralDecomposition {
    Polygon polygon;
    std::vector<Point> convex_chain;
    std::vector<Point> reflex_chain;
    std::vector<std::pair<std::size_t, CornerKind>> corners;  // convex_chain indices
    std::vector<std::size_t> inner_corners;                   // reflex_chain indices
};

inline SpiralDecomposition decompose_spiral(const Polygon& P, bool allow_vertical = false) {
    if (!classify(P).spiral)
        throw GeometryError("spiral decomposition needs one contiguous reflex run");
    const std::size_t n = P.size();
    if (!allow_vertical)
        for (std::size_t i = 0; i < n; ++i)
            if (P.edge(i).a.x == P.edge(i).b.x)
                throw GeometryError("vertical edges make the vertical sight lines ambiguous");

    SpiralDecomposition d{P, {}, {}, {}, {}};
    auto reflex = P.reflex_indices();
    if (reflex.empty()) {
        // Every vertex is convex: the reflex side degenerates to one boundary
        // edge and the convex chain is the rest of the ring.
        d.reflex_chain = {P.vertex(0)};
        d.convex_chain.push_back(P.vertex(0));
        for (std::size_t j = n - 1; j >= 1; --j) d.convex_chain.push_back(P.vertex(j));
    } else {
        std::size_t start = n;  // first reflex vertex of the run
        for (std::size_t idx : reflex)
            if (!P.is_reflex((idx + n - 1) % n)) {
                start = idx;
                break;
            }
        if (start == n) throw GeometryError("the reflex run never starts");
        const std::size_t k = reflex.size();
        const std::size_t u_idx = (start + n - 1) % n;
        d.reflex_chain.push_back(P.vertex(u_idx));
        for (std::size_t j = 0; j < k; ++j) d.reflex_chain.push_back(P.vertex((start + j) % n));
        // Clockwise walk over the convex side, u down to u'.
        for (std::size_t j = 0; j < n - k; ++j) d.convex_chain.push_back(P.vertex((u_idx + n - j) % n));
    }

    const std::size_t nc = d.convex_chain.size();
    const std::size_t nr = d.reflex_chain.size() - 1;
    auto side = [](const Point& v, const Point& nb) { return (nb.x - v.x).sign(); };
    for (std::size_t j = 0; j < nc; ++j) {
        const Point& v = d.convex_chain[j];
        // Ring neighbours: along the chain where possible, across to the
        // reflex side at the chain ends.
        Point a = j + 1 < nc ? d.convex_chain[j + 1] : d.reflex_chain[nr];
        Point b = j > 0 ? d.convex_chain[j - 1] : d.reflex_chain[std::min<std::size_t>(1, nr)];
        if (nr == 0) {
            if (j == 0) b = d.convex_chain.back();
            if (j + 1 == nc) a = d.convex_chain.front();
        }
        int sa = side(v, a), sb = side(v, b);
        if (sa > 0 && sb > 0) d.corners.push_back({j, CornerKind::LeftCorner});
        if (sa < 0 && sb < 0) d.corners.push_back({j, CornerKind::RightCorner});
    }
    for (std::size_t j = 1; j <= nr; ++j) {
        const Point& v = d.reflex_chain[j];
        const Point& a = d.reflex_chain[j - 1];
        const Point& b = j < nr ? d.reflex_chain[j + 1] : d.convex_chain.back();
        int sa = side(v, a), sb = side(v, b);
        if ((sa > 0 && sb > 0) || (sa < 0 && sb < 0)) d.inner_corners.push_back(j);
    }
    return d;
}

namespace spiral_detail {

/// Position along a chain: edge index plus parameter in [0, 1] along it.
/// Vertices are normalised to the start of the later edge so every point has
/// a single representation; only the chain end keeps t == 1.
struct ChainPos {
    std::size_t seg = 0;
    Rational t;
    Point pt;
    friend bool operator==(const ChainPos& a, const ChainPos& b) {
        return a.seg == b.seg && a.t == b.t;
    }
    friend bool operator<(const ChainPos& a, const ChainPos& b) {
        if (a.seg != b.seg) return a.seg < b.seg;
        return a.t < b.t;
    }
    friend bool operator<=(const ChainPos& a, const ChainPos& b) { return a < b || a == b; }
};

inline std::optional<ChainPos> locate(const std::vector<Point>& chain, const Point& p) {
    if (chain.size() < 2) return std::nullopt;
    const std::size_t m = chain.size() - 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (!on_segment(p, chain[j], chain[j + 1])) continue;
        Rational t = segment_param(chain[j], chain[j + 1], p);
        if (t == Rational(1) && j + 1 < m) return ChainPos{j + 1, Rational(0), p};
        return ChainPos{j, t, p};
    }
    return std::nullopt;
}

/// Chain vertex index when the position sits exactly on a vertex.
inline std::optional<std::size_t> at_vertex(const ChainPos& c) {
    if (c.t.sign() == 0) return c.seg;
    if (c.t == Rational(1)) return c.seg + 1;
    return std::nullopt;
}

/// Smallest ray parameter strictly beyond t_min where the ray meets the
/// closed segment [a, b]. A ray running along the segment grazes the wall
/// and comes free at its far end, so the far endpoint is the answer there.
inline std::optional<Rational> ray_param_after(const Point& origin, const Point& dir,
                                               const Point& a, const Point& b,
                                               const Rational& t_min) {
    Point e = b - a;
    if (cross(dir, e).sign() != 0) {
        auto t = ray_hit(origin, dir, a, b);
        if (t && *t > t_min) return t;
        return std::nullopt;
    }
    if (cross(a - origin, dir).sign() != 0) return std::nullopt;
    auto param = [&](const Point& p) -> Rational {
        return dir.x.sign() != 0 ? (p.x - origin.x) / dir.x : (p.y - origin.y) / dir.y;
    };
    Rational tb = std::max(param(a), param(b));
    if (tb > t_min) return tb;
    return std::nullopt;
}

inline std::optional<Point> first_boundary_hit(const Polygon& P, const Point& origin,
                                               const Point& dir, const Rational& t_min) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < P.size(); ++i) {
        Segment e = P.edge(i);
        auto t = ray_param_after(origin, dir, e.a, e.b, t_min);
        if (t && (!best || *t < *best)) best = t;
    }
    if (!best) return std::nullopt;
    return origin + dir * *best;
}

inline std::optional<CornerKind> corner_kind_at(const SpiralDecomposition& D, const ChainPos& c) {
    auto v = at_vertex(c);
    if (!v) return std::nullopt;
    for (auto& [idx, kind] : D.corners)
        if (idx == *v) return kind;
    return std::nullopt;
}

/// Direction a forward guard looks from a convex-chain position. The chain is
/// walked clockwise, so forward follows the local x-trend; at a corner both
/// incident edges sit on one side of the vertical and the guard that faces
/// that side sees along both, so forward and backward coincide there.
inline Direction forward_direction(const SpiralDecomposition& D, const ChainPos& c) {
    if (auto kind = corner_kind_at(D, c))
        return *kind == CornerKind::LeftCorner ? Direction::Right : Direction::Left;
    const auto& ch = D.convex_chain;
    auto edge_dir = [&](std::size_t j) { return (ch[j + 1].x - ch[j].x).sign(); };
    int s = 0;
    if (auto v = at_vertex(c)) {
        if (*v < ch.size() - 1) s = edge_dir(*v);
        if (s == 0 && *v > 0) s = edge_dir(*v - 1);
    } else {
        s = edge_dir(c.seg);
    }
    if (s == 0) throw GeometryError("a vertical stretch leaves the looking direction open");
    return s > 0 ? Direction::Right : Direction::Left;
}

/// Interior side of the vertical through a chain position, +1 up or -1 down.
/// The ring keeps its interior on the left, and the chains store the ring
/// either reversed (convex side) or as is (reflex side).
inline std::optional<int> vertical_interior_sign(const std::vector<Point>& chain,
                                                 const ChainPos& c, bool chain_is_reversed_ring,
                                                 const std::optional<Point>& closing_next) {
    auto sign_of_edge = [&](const Point& a, const Point& b) {
        int s = (b.x - a.x).sign();
        return chain_is_reversed_ring ? -s : s;
    };
    std::vector<int> signs;
    if (auto v = at_vertex(c)) {
        if (*v > 0) signs.push_back(sign_of_edge(chain[*v - 1], chain[*v]));
        if (*v + 1 < chain.size()) signs.push_back(sign_of_edge(chain[*v], chain[*v + 1]));
        else if (closing_next) signs.push_back(sign_of_edge(chain[*v], *closing_next));
    } else {
        signs.push_back(sign_of_edge(chain[c.seg], chain[c.seg + 1]));
    }
    signs.erase(std::remove(signs.begin(), signs.end(), 0), signs.end());
    if (signs.empty()) return std::nullopt;
    if (signs.size() == 2 && signs[0] != signs[1]) return std::nullopt;  // corner, ambiguous
    return signs[0];
}

struct VerticalHit {
    Point pt;
    bool on_reflex_side = false;                // tracked edges or the closing edge
    std::optional<ChainPos> tracked;            // position when on a tracked reflex edge
};

inline std::optional<VerticalHit> vertical_from_convex(const SpiralDecomposition& D,
                                                       const ChainPos& c) {
    auto s = vertical_interior_sign(D.convex_chain, c, true, std::nullopt);
    if (!s) return std::nullopt;
    auto hit = first_boundary_hit(D.polygon, c.pt, Point{Rational(0), Rational(*s)}, Rational(0));
    if (!hit) return std::nullopt;
    VerticalHit out{*hit, false, std::nullopt};
    if (locate(D.convex_chain, *hit)) return out;
    out.on_reflex_side = true;
    out.tracked = locate(D.reflex_chain, *hit);
    return out;
}

/// Vertical sight from a reflex-chain position up to the convex chain. An
/// inner corner opens two vertical rays; the hit further along the chain is
/// the one that matters.
inline std::optional<ChainPos> vertical_from_reflex(const SpiralDecomposition& D,
                                                    const ChainPos& c) {
    std::vector<int> dirs;
    auto s = vertical_interior_sign(D.reflex_chain, c, false, D.convex_chain.back());
    if (s) {
        dirs.push_back(*s);
    } else if (at_vertex(c)) {
        dirs = {1, -1};  // inner corner: the corridor wraps both past sides
    } else {
        return std::nullopt;
    }
    std::optional<ChainPos> best;
    for (int dy : dirs) {
        auto hit = first_boundary_hit(D.polygon, c.pt, Point{Rational(0), Rational(dy)}, Rational(0));
        if (!hit) continue;
        auto pos = locate(D.convex_chain, *hit);
        if (pos && (!best || *best < *pos)) best = pos;
    }
    return best;
}

inline std::optional<Point> shadow_point(const SpiralDecomposition& D, const ChainPos& c) {
    HalfGuard f{c.pt, forward_direction(D, c)};
    const auto& rc = D.reflex_chain;
    for (std::size_t j = rc.size(); j-- > 0;) {
        if (rc[j] == c.pt) continue;
        if (!half_sees(D.polygon, f, rc[j])) continue;
        return first_boundary_hit(D.polygon, c.pt, rc[j] - c.pt, Rational(1));
    }
    return std::nullopt;
}

}  // namespace spiral_detail

/// Continuation of reflex edge i (1-based) past its far endpoint until the
/// boundary stops it. On a spiral the supporting line leaves the inner wall
/// and crosses the corridor, so the hit lands on the convex chain.
inline Point ext(const SpiralDecomposition& D, std::size_t i) {
    if (i == 0 || i >= D.reflex_chain.size())
        throw GeometryError("reflex edge index out of range");
    const Point& a = D.reflex_chain[i - 1];
    const Point& b = D.reflex_chain[i];
    auto hit = spiral_detail::first_boundary_hit(D.polygon, a, b - a, Rational(1));
    if (!hit) throw GeometryError("an edge extension escaped the polygon");
    return *hit;
}

/// Vertical sight from a convex-chain point into the interior; the hit when
/// the inner wall catches it, nothing when the ray crosses to the convex
/// chain instead.
inline std::optional<Point> drop(const SpiralDecomposition& D, const Point& p) {
    auto c = spiral_detail::locate(D.convex_chain, p);
    if (!c) throw GeometryError("drop starts on the convex chain");
    if (spiral_detail::corner_kind_at(D, *c))
        throw GeometryError("the vertical direction is ambiguous at a corner");
    auto hit = spiral_detail::vertical_from_convex(D, *c);
    if (!hit || !hit->on_reflex_side) return std::nullopt;
    return hit->pt;
}

/// Vertical sight from a reflex-chain point up to the convex chain. At an
/// inner corner both vertical rays leave the wall; the answer is the hit
/// further along the chain.
inline Point up(const SpiralDecomposition& D, const Point& p) {
    auto c = spiral_detail::locate(D.reflex_chain, p);
    if (!c) throw GeometryError("up starts on the reflex chain");
    auto pos = spiral_detail::vertical_from_reflex(D, *c);
    if (!pos) throw GeometryError("the vertical never reaches the convex chain");
    return pos->pt;
}

/// Where the sight of a forward guard at p slides off the reflex chain: the
/// ray through the last reflex vertex it sees, carried on to the boundary.
inline Point spp(const SpiralDecomposition& D, const Point& p) {
    auto c = spiral_detail::locate(D.convex_chain, p);
    if (!c) throw GeometryError("spp starts on the convex chain");
    auto hit = spiral_detail::shadow_point(D, *c);
    if (!hit) throw GeometryError("no reflex vertex in view");
    return *hit;
}

/// First reflex edge at or after i0 (1-based) that the guard fails to see end
/// to end; reflex_chain.size() when it sees the rest of the inner wall. Both
/// endpoints decide: the wall edge closes a triangle with the guard, and the
/// boundary cannot enter it without cutting a sight line to an endpoint.
inline std::size_t ix(const SpiralDecomposition& D, const HalfGuard& g, std::size_t i0) {
    const std::size_t nr = D.reflex_chain.size() - 1;
    std::size_t i = std::max<std::size_t>(i0, 1);
    for (; i <= nr; ++i) {
        if (!half_sees(D.polygon, g, D.reflex_chain[i - 1])) break;
        if (!half_sees(D.polygon, g, D.reflex_chain[i])) break;
    }
    return i;
}

enum class CandidateOrigin { ChainEnd, Corner, Extension, Vertical, ShadowClosure };

struct CandidatePoint {
    spiral_detail::ChainPos pos;
    CandidateOrigin origin;
};

/// Guard positions the search works over: chain ends, corners, the edge
/// extensions, the vertical hits of the reflex vertices, and everything those
/// generate under repeated shadow points. Grows at most quadratically.
struct CandidateSet {
    std::vector<CandidatePoint> points;  // chain-ordered, positions distinct
};

inline CandidateSet build_candidates(const SpiralDecomposition& D) {
    using spiral_detail::ChainPos;
    const std::size_t n = D.polygon.size();
    const std::size_t nr = D.reflex_chain.size() - 1;
    const std::size_t budget = 4 * n * n;

    std::vector<CandidatePoint> pts;
    auto add = [&](const ChainPos& c, CandidateOrigin o) {
        for (auto& q : pts)
            if (q.pos == c) return false;
        pts.push_back({c, o});
        if (pts.size() > budget)
            throw GeometryError("candidate set outgrew its quadratic budget");
        return true;
    };

    const std::size_t m = D.convex_chain.size() - 1;
    add(ChainPos{0, Rational(0), D.convex_chain.front()}, CandidateOrigin::ChainEnd);
    add(ChainPos{m - 1, Rational(1), D.convex_chain.back()}, CandidateOrigin::ChainEnd);
    for (auto& [idx, kind] : D.corners) {
        (void)kind;
        ChainPos c = idx < m ? ChainPos{idx, Rational(0), D.convex_chain[idx]}
                             : ChainPos{m - 1, Rational(1), D.convex_chain[idx]};
        add(c, CandidateOrigin::Corner);
    }
    for (std::size_t i = 1; i <= nr; ++i) {
        if (auto c = spiral_detail::locate(D.convex_chain, ext(D, i)))
            add(*c, CandidateOrigin::Extension);
        ChainPos rv = i < nr ? ChainPos{i, Rational(0), D.reflex_chain[i]}
                             : ChainPos{nr - 1, Rational(1), D.reflex_chain[i]};
        if (auto c = spiral_detail::vertical_from_reflex(D, rv)) add(*c, CandidateOrigin::Vertical);
    }

    for (std::size_t scan = 0; scan < pts.size(); ++scan) {
        auto hit = spiral_detail::shadow_point(D, pts[scan].pos);
        if (!hit) continue;
        if (auto c = spiral_detail::locate(D.convex_chain, *hit))
            add(*c, CandidateOrigin::ShadowClosure);
    }

    std::sort(pts.begin(), pts.end(),
              [](const CandidatePoint& a, const CandidatePoint& b) { return a.pos < b.pos; });
    return {std::move(pts)};
}

/// One evaluated search state, for the dump hook.
struct DpRow {
    std::size_t edge = 0;  // first reflex edge not seen end to end, 1-based
    Point p, q;
    long value = -1;       // guards still needed, -1 for a dead end
    int chosen_case = 0;   // 0 when final or dead
};

struct SpiralDpTrace {
    std::vector<DpRow> rows;
    std::size_t candidates = 0;
    std::size_t states = 0;
};

namespace spiral_detail {

struct Placed {
    ChainPos pos;
    Direction dir;
};

class SpiralSolver {
  public:
    explicit SpiralSolver(const Polygon& P) : D(decompose_spiral(P)) {
        auto cs = build_candidates(D);
        for (auto& c : cs.points) B.push_back(c.pos);
        nr = D.reflex_chain.size() - 1;
        for (std::size_t j = 0; j < nr; ++j) addR(ChainPos{j, Rational(0), D.reflex_chain[j]});
        if (nr > 0) addR(ChainPos{nr - 1, Rational(1), D.reflex_chain[nr]});
        for (std::size_t b = 0; b < B.size(); ++b) {
            auto hit = vertical_from_convex(D, B[b]);
            if (hit && hit->tracked) addR(*hit->tracked);
        }
        std::sort(R.begin(), R.end());
        R.erase(std::unique(R.begin(), R.end()), R.end());
    }

    GuardSolution run(SpiralDpTrace* trace) {
        const std::size_t p0 = nr == 0 ? R.size() : index_of_R(ChainPos{0, Rational(0), D.reflex_chain[0]});
        const std::size_t q0 = index_of_B(ChainPos{0, Rational(0), D.convex_chain.front()});
        long total = solve(p0, q0);
        if (total >= kInf)
            throw GeometryError("the recursion stalled before the chain end");

        std::vector<HalfGuard> guards;
        std::size_t pi = p0, qi = q0;
        while (!finished(pi, qi)) {
            const Entry& e = memo.at({pi, qi});
            for (int g = 0; g < e.nguards; ++g)
                guards.push_back({e.placed[static_cast<std::size_t>(g)].pos.pt,
                                  e.placed[static_cast<std::size_t>(g)].dir});
            pi = e.np;
            qi = e.nq;
        }
        if (static_cast<long>(guards.size()) != total)
            throw GeometryError("the reconstruction lost count");

        auto rep = covers(D.polygon, guards);
        if (!rep.covered)
            throw GeometryError("the recursion left part of the polygon unseen");

        if (trace) {
            trace->candidates = B.size();
            trace->states = memo.size();
            for (auto& [key, e] : memo) {
                DpRow row;
                row.edge = key.first < R.size() ? R[key.first].seg + 1 : nr + 1;
                row.p = key.first < R.size() ? R[key.first].pt : D.reflex_chain.back();
                row.q = B[key.second].pt;
                row.value = e.value >= kInf ? -1 : e.value;
                row.chosen_case = e.case_id;
                trace->rows.push_back(row);
            }
        }

        GuardSolution sol;
        sol.guards = std::move(guards);
        sol.algorithm = Algorithm::SpiralDP;
        sol.bound = total;
        sol.notes = "candidates=" + std::to_string(B.size()) + " states=" + std::to_string(memo.size());
        return sol;
    }

  private:
    static constexpr long kInf = 1L << 40;

    struct Entry {
        long value = kInf;
        int case_id = 0;
        int nguards = 0;
        std::array<Placed, 2> placed{};
        std::size_t np = 0, nq = 0;
    };

    SpiralDecomposition D;
    std::vector<ChainPos> B;  // guard positions, chain-ordered
    std::vector<ChainPos> R;  // inner-wall event points, chain-ordered
    std::size_t nr = 0;
    std::map<std::pair<std::size_t, std::size_t>, Entry> memo;
    std::map<std::size_t, std::pair<std::vector<char>, std::vector<char>>> sight;  // guard id -> seen B, seen R

    void addR(const ChainPos& c) { R.push_back(c); }

    std::size_t index_of_B(const ChainPos& c) const {
        auto it = std::lower_bound(B.begin(), B.end(), c);
        if (it == B.end() || !(*it == c))
            throw GeometryError("a guard position escaped the candidate set");
        return static_cast<std::size_t>(it - B.begin());
    }

    std::size_t index_of_R(const ChainPos& c) const {
        auto it = std::lower_bound(R.begin(), R.end(), c);
        if (it == R.end() || !(*it == c))
            throw GeometryError("an inner-wall point escaped the event set");
        return static_cast<std::size_t>(it - R.begin());
    }

    bool finished(std::size_t pi, std::size_t qi) const {
        return pi == R.size() && qi + 1 == B.size();
    }

    std::size_t guard_id(std::size_t b, Direction dir) const {
        return b * 2 + (dir == Direction::Right ? 1 : 0);
    }

    const std::pair<std::vector<char>, std::vector<char>>& row_of(std::size_t b, Direction dir) {
        std::size_t id = guard_id(b, dir);
        auto it = sight.find(id);
        if (it != sight.end()) return it->second;
        HalfGuard g{B[b].pt, dir};
        std::vector<char> sb(B.size()), sr(R.size());
        for (std::size_t j = 0; j < B.size(); ++j) sb[j] = half_sees(D.polygon, g, B[j].pt);
        for (std::size_t j = 0; j < R.size(); ++j) sr[j] = half_sees(D.polygon, g, R[j].pt);
        return sight.emplace(id, std::make_pair(std::move(sb), std::move(sr))).first->second;
    }

    /// Coverage step: the chains are convex polylines, so the part of a chain
    /// one guard sees is a single arc. Seeing the old frontier splices the
    /// guard's arc onto the seen prefix, and the frontier moves to the far end
    /// of the arc, walked event point by event point.
    std::optional<std::pair<std::size_t, std::size_t>> advance(std::size_t pi, std::size_t qi,
                                                               std::size_t gb, Direction dir) {
        const auto& row = row_of(gb, dir);
        std::size_t nq = qi;
        if (row.first[qi]) {
            std::size_t j = gb;
            while (j + 1 < B.size() && row.first[j + 1]) ++j;
            nq = std::max(nq, j);
        }
        std::size_t np = pi;
        if (pi < R.size() && row.second[pi]) {
            std::size_t j = pi;
            while (j + 1 < R.size() && row.second[j + 1]) ++j;
            np = j;
        }
        if (np + 1 == R.size() && R[np].t == Rational(1)) np = R.size();  // inner wall done
        if (np == pi && nq == qi) return std::nullopt;
        return std::make_pair(np, nq);
    }

    std::optional<std::size_t> next_corner(std::size_t qi) const {
        const std::size_t m = D.convex_chain.size() - 1;
        std::optional<std::size_t> best;
        for (auto& [idx, kind] : D.corners) {
            (void)kind;
            ChainPos c = idx < m ? ChainPos{idx, Rational(0), D.convex_chain[idx]}
                                 : ChainPos{m - 1, Rational(1), D.convex_chain[idx]};
            if (c < B[qi]) continue;
            std::size_t b = index_of_B(c);
            if (!best || b < *best) best = b;
        }
        return best;
    }

    Direction corner_direction(std::size_t b) const {
        auto kind = corner_kind_at(D, B[b]);
        if (!kind) throw GeometryError("a corner guard lost its corner");
        return *kind == CornerKind::LeftCorner ? Direction::Right : Direction::Left;
    }

    bool is_corner(std::size_t b) const { return corner_kind_at(D, B[b]).has_value(); }

    /// Follow-up corner guard shared by the one- and two-guard corner moves.
    std::optional<std::pair<std::size_t, std::size_t>> corner_step(std::size_t pi, std::size_t qi,
                                                                   std::size_t cb) {
        Direction dir = corner_direction(cb);
        const auto& row = row_of(cb, dir);
        if (!row.first[qi]) return std::nullopt;
        if (pi < R.size() && !row.second[pi]) return std::nullopt;
        return advance(pi, qi, cb, dir);
    }

    void consider(Entry& best, int case_id, long value, std::size_t np, std::size_t nq,
                  const Placed* g0, const Placed* g1) {
        if (value >= best.value) return;
        best.value = value;
        best.case_id = case_id;
        best.np = np;
        best.nq = nq;
        best.nguards = g1 ? 2 : 1;
        if (g0) best.placed[0] = *g0;
        if (g1) best.placed[1] = *g1;
    }

    long solve(std::size_t pi, std::size_t qi) {
        if (finished(pi, qi)) return 0;
        auto it = memo.find({pi, qi});
        if (it != memo.end()) return it->second.value;
        memo[{pi, qi}] = Entry{};  // claim the state; cycles cannot form, the steps only move forward
        Entry best;

        const bool bottom = pi == R.size();
        const std::size_t i = bottom ? nr + 1 : R[pi].seg + 1;
        auto nc = next_corner(qi);

        // 1: a guard at the next corner carries the front past the turn.
        if (nc) {
            if (auto nxt = corner_step(pi, qi, *nc)) {
                Placed g{B[*nc], corner_direction(*nc)};
                consider(best, 1, 1 + solve(nxt->first, nxt->second), nxt->first, nxt->second, &g, nullptr);
            }
        }

        if (!bottom) {
            const Point& vi = D.reflex_chain[i];

            // 2 and 3: a backward guard on the continuation of the open edge.
            if (auto c = locate(D.convex_chain, ext(D, i))) {
                std::size_t gb = index_of_B(*c);
                if (!is_corner(gb)) {
                    Direction dir = opposite(forward_direction(D, *c));
                    const auto& row = row_of(gb, dir);
                    if (row.first[qi]) {
                        auto vh = vertical_from_convex(D, *c);
                        bool dropped = vh && vh->on_reflex_side;
                        Placed g{*c, dir};
                        if (dropped && (!nc || gb < *nc)) {
                            if (auto nxt = advance(pi, qi, gb, dir))
                                consider(best, 2, 1 + solve(nxt->first, nxt->second), nxt->first,
                                         nxt->second, &g, nullptr);
                        }
                        if (!dropped && nc && gb < *nc) {
                            auto mid = advance(pi, qi, gb, dir);
                            std::size_t mp = mid ? mid->first : pi, mq = mid ? mid->second : qi;
                            if (auto nxt = corner_step(mp, mq, *nc)) {
                                Placed g1{B[*nc], corner_direction(*nc)};
                                consider(best, 3, 2 + solve(nxt->first, nxt->second), nxt->first,
                                         nxt->second, &g, &g1);
                            }
                        }
                    }
                }
            }

            // 4 and 5: the frontier vertex is out of sight of q, so a backward
            // guard continues the shadow line through the last visible vertex.
            if (!sees(D.polygon, vi, B[qi].pt)) {
                auto hit = shadow_point(D, B[qi]);
                std::optional<ChainPos> c;
                if (hit) c = locate(D.convex_chain, *hit);
                if (c) {
                    std::size_t gb = index_of_B(*c);
                    if (!is_corner(gb)) {
                        Direction dir = opposite(forward_direction(D, *c));
                        const auto& row = row_of(gb, dir);
                        if (row.first[qi]) {
                            auto vh = vertical_from_convex(D, *c);
                            bool dropped = vh && vh->on_reflex_side;
                            Placed g{*c, dir};
                            if (dropped && (!nc || gb < *nc)) {
                                if (auto nxt = advance(pi, qi, gb, dir))
                                    consider(best, 4, 1 + solve(nxt->first, nxt->second), nxt->first,
                                             nxt->second, &g, nullptr);
                            }
                            if (!dropped && nc && gb < *nc) {
                                auto mid = advance(pi, qi, gb, dir);
                                std::size_t mp = mid ? mid->first : pi, mq = mid ? mid->second : qi;
                                if (auto nxt = corner_step(mp, mq, *nc)) {
                                    Placed g1{B[*nc], corner_direction(*nc)};
                                    consider(best, 5, 2 + solve(nxt->first, nxt->second), nxt->first,
                                             nxt->second, &g, &g1);
                                }
                            }
                        }
                    }
                }
            }
        }

        // 6 and 7: a forward guard at the front, or back at the vertical over
        // the inner-wall frontier when that vertical comes first.
        std::optional<ChainPos> upos;
        if (!bottom) upos = vertical_from_reflex(D, R[pi]);
        if (bottom || !upos || B[qi] <= *upos) {
            Direction dir = forward_direction(D, B[qi]);
            if (auto nxt = advance(pi, qi, qi, dir)) {
                Placed g{B[qi], dir};
                consider(best, 6, 1 + solve(nxt->first, nxt->second), nxt->first, nxt->second, &g, nullptr);
            }
        }
        if (!bottom && upos && *upos < B[qi]) {
            std::size_t gb = index_of_B(*upos);
            Direction dir = forward_direction(D, *upos);
            if (auto nxt = advance(pi, qi, gb, dir)) {
                Placed g{*upos, dir};
                consider(best, 7, 1 + solve(nxt->first, nxt->second), nxt->first, nxt->second, &g, nullptr);
            }
        }

        memo[{pi, qi}] = best;
        return best.value;
    }
};

}  // namespace spiral_detail

/// Fewest-guard search over the candidate positions. Guards live on the convex
/// chain; each step either rounds the next corner, rides an inner-wall edge
/// extension backward, continues a shadow line backward, or pushes forward
/// from the front, and the seen region grows monotonically along both chains.
inline GuardSolution spiral_dp(const Polygon& P, SpiralDpTrace* trace = nullptr) {
    spiral_detail::SpiralSolver solver(P);
    return solver.run(trace);
}

}  // namespace halfguard
