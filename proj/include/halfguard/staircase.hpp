#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boolean.hpp"
#include "bounds.hpp"
#include "classify.hpp"
#include "visibility.hpp"

namespace halfguard {

/// Ordered convex-corner witnesses whose visibility polygons are pairwise
/// disjoint, so their count lower-bounds any guard set. residuals[i] holds
/// the pieces still unseen after witness i. Counting from zero, even indices
/// sit on the upper chain and odd ones on the lower chain, named in the
/// orientation where both chains ascend.
struct WitnessChain {
    std::vector<Point> witnesses;
    std::vector<std::vector<Polygon>> residuals;
};

enum class StairChain { UpperHasTwoEdges, LowerHasTwoEdges };

/// A staircase piece one of whose chains has exactly two edges. short_chain
/// names that chain in the ascending orientation of the piece; guard is
/// filled in by place_gs.
struct Stair {
    Polygon region;
    StairChain short_chain;
    HalfGuard guard{};
};

namespace stair_detail {

inline Point mirror_y(const Point& p) { return {p.x, -p.y}; }

inline Polygon mirror_y(const Polygon& P) {
    std::vector<Point> v;
    v.reserve(P.size());
    for (const Point& p : P.vertices()) v.push_back(mirror_y(p));
    return Polygon::make(std::move(v));
}

/// Both chains ascend: the leftmost column reaches the global low and the
/// rightmost column the global high. A descending staircase satisfies this
/// after mirroring in y.
inline bool ascending(const Polygon& P) {
    auto [lo, hi] = P.bbox();
    std::optional<Rational> left_low, right_high;
    for (const Point& v : P.vertices()) {
        if (v.x == lo.x && (!left_low || v.y < *left_low)) left_low = v.y;
        if (v.x == hi.x && (!right_high || v.y > *right_high)) right_high = v.y;
    }
    return *left_low == lo.y && *right_high == hi.y;
}

/// Vertex indices of the two boundary chains, each listed from the
/// bottom-left corner to the top-right one.
struct Chains {
    std::vector<size_t> lower, upper;
};

inline Chains chains(const Polygon& P) {
    const size_t n = P.size();
    auto lex_less = [&](size_t a, size_t b) {
        const Point& p = P.vertex(a);
        const Point& q = P.vertex(b);
        return p.x != q.x ? p.x < q.x : p.y < q.y;
    };
    size_t lo = 0, hi = 0;
    for (size_t i = 1; i < n; ++i) {
        if (lex_less(i, lo)) lo = i;
        if (lex_less(hi, i)) hi = i;
    }
    Chains c;
    for (size_t i = lo;; i = (i + 1) % n) {
        c.lower.push_back(i);
        if (i == hi) break;
    }
    for (size_t i = hi;; i = (i + 1) % n) {
        c.upper.push_back(i);
        if (i == lo) break;
    }
    std::reverse(c.upper.begin(), c.upper.end());
    return c;
}

inline bool vertex_of(const Polygon& P, const Point& q) {
    for (size_t i = 0; i < P.size(); ++i)
        if (P.vertex(i) == q) return true;
    return false;
}

inline StairChain stair_kind(const Polygon& piece) {
    const Polygon Q = ascending(piece) ? piece : mirror_y(piece);
    if (!classify(Q).staircase) throw GeometryError("leftover piece is not a staircase");
    Chains c = chains(Q);
    if (c.lower.size() == 3) return StairChain::LowerHasTwoEdges;
    if (c.upper.size() == 3) return StairChain::UpperHasTwoEdges;
    throw GeometryError("leftover piece is not a stair");
}

}  // namespace stair_detail

/// Sweeps witnesses over a staircase polygon, alternating chains and
/// climbing northeast. Each witness is a convex vertex of the original
/// polygon that survives on the active residual piece (the piece still
/// holding the top-right corner) strictly past the window cut by its
/// predecessor; window corners introduced by subtraction never qualify, so
/// the sweep stops once only stairs remain. The disjointness certificate is
/// verified exactly before returning.
inline WitnessChain place_cws(const Polygon& P_in) {
    if (!classify(P_in).staircase)
        throw GeometryError("witness sweep needs a staircase polygon");
    const bool flip = !stair_detail::ascending(P_in);
    const Polygon P = flip ? stair_detail::mirror_y(P_in) : P_in;
    if (flip && !stair_detail::ascending(P))
        throw GeometryError("staircase cannot be oriented with ascending chains");

    const size_t n = P.size();
    Point goal = P.vertex(0);
    for (const Point& v : P.vertices())
        if (v.x > goal.x || (v.x == goal.x && v.y > goal.y)) goal = v;

    WitnessChain out;
    std::vector<Polygon> vis;
    std::vector<Polygon> residue{P};
    for (;;) {
        if (out.witnesses.size() > n)
            throw GeometryError("witness sweep failed to terminate");
        const Polygon* active = nullptr;
        for (const Polygon& piece : residue)
            if (piece.contains(goal)) {
                active = &piece;
                break;
            }
        if (!active) break;
        if (!classify(*active).staircase)
            throw GeometryError("residual piece lost the staircase shape");

        const bool upper_turn = out.witnesses.size() % 2 == 0;
        stair_detail::Chains ch = stair_detail::chains(*active);
        const std::vector<size_t>& walk = upper_turn ? ch.upper : ch.lower;
        auto [lo, hi] = active->bbox();

        std::optional<Point> pick;
        for (size_t k = 1; k + 1 < walk.size(); ++k) {
            if (active->is_reflex(walk[k])) continue;
            const Point& v = active->vertex(walk[k]);
            if (!stair_detail::vertex_of(P, v)) continue;
            if (upper_turn && !out.witnesses.empty() && !(v.x > lo.x)) continue;
            if (!upper_turn && !(v.y > lo.y)) continue;
            pick = v;
            break;
        }
        if (!pick) break;

        out.witnesses.push_back(*pick);
        vis.push_back(visibility_polygon(P, *pick));
        residue = polygon_boolean(residue, {vis.back()}, BoolOp::Difference);
        out.residuals.push_back(residue);
    }

    for (size_t i = 0; i < vis.size(); ++i)
        for (size_t j = i + 1; j < vis.size(); ++j)
            if (total_area(polygon_boolean({vis[i]}, {vis[j]}, BoolOp::Intersection)).sign() != 0)
                throw GeometryError("witness visibility polygons overlap");

    if (flip) {
        for (Point& w : out.witnesses) w = stair_detail::mirror_y(w);
        for (std::vector<Polygon>& snap : out.residuals)
            for (Polygon& piece : snap) piece = stair_detail::mirror_y(piece);
    }
    return out;
}

/// One guard per witness: upper-chain witnesses look right, lower-chain ones
/// look left. The vertical wall under each convex corner already blocks the
/// other half plane, so the half view equals the full view and the guards
/// inherit the witness lower bound.
inline std::vector<HalfGuard> place_gcw(const WitnessChain& chain) {
    std::vector<HalfGuard> out;
    out.reserve(chain.witnesses.size());
    for (size_t i = 0; i < chain.witnesses.size(); ++i)
        out.push_back({chain.witnesses[i], i % 2 == 0 ? Direction::Right : Direction::Left});
    return out;
}

/// Splits the part of the polygon the corner guards miss into stairs. The
/// pieces sit between consecutive witness regions, plus at most one holding
/// the top or right edge, so there are never more pieces than guards; a
/// piece that is not a stair is a structural failure.
inline std::vector<Stair> extract_stairs(const Polygon& P, const WitnessChain& chain,
                                         const std::vector<HalfGuard>& corner_guards) {
    CoverageReport rep = covers(P, corner_guards);
    if (rep.uncovered.size() > chain.witnesses.size())
        throw GeometryError("more uncovered pieces than witnesses");
    std::vector<Stair> out;
    out.reserve(rep.uncovered.size());
    for (const Polygon& piece : rep.uncovered)
        out.push_back({piece, stair_detail::stair_kind(piece), HalfGuard{}});
    return out;
}

/// Posts one guard per stair: a two-edge lower chain is watched from the
/// stair's lowest-rightmost point looking left, a two-edge upper chain from
/// its highest-leftmost point looking right, corners named in the ascending
/// orientation. Coverage of every stair is re-verified exactly.
inline std::vector<HalfGuard> place_gs(std::vector<Stair>& stairs) {
    std::vector<HalfGuard> out;
    out.reserve(stairs.size());
    for (Stair& s : stairs) {
        const bool flip = !stair_detail::ascending(s.region);
        const Polygon Q = flip ? stair_detail::mirror_y(s.region) : s.region;
        Point pos = Q.vertex(0);
        if (s.short_chain == StairChain::LowerHasTwoEdges) {
            for (const Point& v : Q.vertices())
                if (v.y < pos.y || (v.y == pos.y && v.x > pos.x)) pos = v;
        } else {
            for (const Point& v : Q.vertices())
                if (v.y > pos.y || (v.y == pos.y && v.x < pos.x)) pos = v;
        }
        HalfGuard g{flip ? stair_detail::mirror_y(pos) : pos,
                    s.short_chain == StairChain::LowerHasTwoEdges ? Direction::Left
                                                                  : Direction::Right};
        if (!covers(s.region, {g}).covered)
            throw GeometryError("stair guard fails to cover its stair");
        s.guard = g;
        out.push_back(g);
    }
    return out;
}

/// Snaps stair guards onto polygon vertices. In the ascending orientation a
/// guard on a vertical wall drops to the wall's bottom end and a guard on a
/// horizontal edge moves to that edge's left end; either move keeps the
/// guard's stair in view, and losing coverage is a structural failure.
inline std::vector<HalfGuard> slide_to_vertices(std::vector<Stair>& stairs, const Polygon& P_in) {
    const bool flip = !stair_detail::ascending(P_in);
    const Polygon P = flip ? stair_detail::mirror_y(P_in) : P_in;
    std::vector<HalfGuard> out;
    out.reserve(stairs.size());
    for (Stair& s : stairs) {
        HalfGuard g = s.guard;
        if (flip) g.pos = stair_detail::mirror_y(g.pos);
        if (!stair_detail::vertex_of(P, g.pos)) {
            bool moved = false;
            for (size_t i = 0; i < P.size() && !moved; ++i) {
                Segment e = P.edge(i);
                if (!on_segment(g.pos, e.a, e.b)) continue;
                if (e.a.x == e.b.x)
                    g.pos = e.a.y < e.b.y ? e.a : e.b;
                else
                    g.pos = e.a.x < e.b.x ? e.a : e.b;
                moved = true;
            }
            if (!moved) throw GeometryError("stair guard sits off the boundary");
        }
        if (flip) g.pos = stair_detail::mirror_y(g.pos);
        // The new position usually lies outside the stair, so the view is
        // taken in the whole polygon and clipped against the stair.
        std::vector<Polygon> missed =
            polygon_boolean({s.region}, half_visibility(P_in, g).pieces, BoolOp::Difference);
        if (total_area(missed).sign() != 0)
            throw GeometryError("sliding a stair guard lost coverage");
        s.guard = g;
        out.push_back(g);
    }
    return out;
}

/// Runs the whole pipeline: witnesses, corner guards, stair guards, and the
/// optional snap to vertices. The returned bound is twice the witness count,
/// which the guard count never exceeds; two witnesses cost at most one stair
/// between them.
inline GuardSolution staircase_guards(const Polygon& P, bool vertex_guards = false) {
    WitnessChain chain = place_cws(P);
    std::vector<HalfGuard> guards = place_gcw(chain);
    std::vector<Stair> stairs = extract_stairs(P, chain, guards);
    std::vector<HalfGuard> extra = place_gs(stairs);
    if (vertex_guards) extra = slide_to_vertices(stairs, P);
    guards.insert(guards.end(), extra.begin(), extra.end());
    return {std::move(guards), Algorithm::Staircase2Approx,
            2 * static_cast<long>(chain.witnesses.size()),
            "witnesses=" + std::to_string(chain.witnesses.size()) +
                " stairs=" + std::to_string(stairs.size())};
}

}  // namespace halfguard
