#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "halfguard/boolean.hpp"
#include "halfguard/bounds.hpp"
#include "halfguard/visibility.hpp"

namespace halfguard {

/// Raised when an exact-cover run exceeds its wall clock budget.
struct OracleTimeout : std::runtime_error {
    explicit OracleTimeout(const std::string& m) : std::runtime_error(m) {}
};

/// Half-guard candidates against witness points; sees[c][w] holds exactly
/// when candidate c half-sees witness w.
struct CoverageMatrix {
    std::vector<HalfGuard> candidates;
    std::vector<Point> witnesses;
    std::vector<std::vector<bool>> sees;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

namespace oracle_detail {

inline void check_deadline(const Deadline& d) {
    if (d && std::chrono::steady_clock::now() > *d)
        throw OracleTimeout("exact cover search ran out of time");
}

// a*x + b*y = c with the leading nonzero coefficient scaled to one, so that
// equal lines have equal coefficient triples.
struct Line {
    Rational a, b, c;
};

inline Line line_through(const Point& p, const Point& q) {
    Rational a = q.y - p.y;
    Rational b = p.x - q.x;
    Rational c = a * p.x + b * p.y;
    const Rational& lead = a.sign() != 0 ? a : b;
    return {a / lead, b / lead, c / lead};
}

inline std::string line_key(const Line& l) {
    return l.a.str() + "|" + l.b.str() + "|" + l.c.str();
}

inline std::optional<Point> line_meet(const Line& l, const Line& m) {
    Rational det = l.a * m.b - l.b * m.a;
    if (det.sign() == 0) return std::nullopt;
    return Point{(l.c * m.b - l.b * m.c) / det, (l.a * m.c - l.c * m.a) / det};
}

/// The shared discretization: supporting lines of the edges, a vertical
/// through every vertex, and the chords through pairs of reflex vertices.
/// Window edges of vertex guards lie on the chords; interior guards may
/// produce windows off this family, which the re-verification pass in
/// min_cover repairs by adding witnesses where a claimed cover leaks.
inline std::vector<Line> arrangement_lines(const Polygon& P) {
    std::map<std::string, Line> uniq;
    auto add = [&](const Line& l) { uniq.emplace(line_key(l), l); };
    for (std::size_t i = 0; i < P.size(); ++i) {
        Segment e = P.edge(i);
        add(line_through(e.a, e.b));
    }
    for (const Point& v : P.vertices()) add(Line{Rational(1), Rational(0), v.x});
    auto reflex = P.reflex_indices();
    for (std::size_t i = 0; i < reflex.size(); ++i)
        for (std::size_t j = i + 1; j < reflex.size(); ++j)
            add(line_through(P.vertex(reflex[i]), P.vertex(reflex[j])));
    std::vector<Line> out;
    out.reserve(uniq.size());
    for (auto& [k, l] : uniq) out.push_back(l);
    return out;
}

inline std::set<Point> crossings_in(const Polygon& P, const std::vector<Line>& lines,
                                    std::size_t limit, const Deadline& deadline) {
    std::set<Point> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        check_deadline(deadline);
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto p = line_meet(lines[i], lines[j]);
            if (!p || !P.contains(*p)) continue;
            out.insert(*p);
            if (out.size() > limit)
                throw GeometryError("arrangement crossings exceed the size limit");
        }
    }
    return out;
}

/// One strictly interior sample per face piece: sweep the midpoint of every
/// slab between consecutive x coordinates of vertices and crossings, cut it
/// at each non-vertical line, and keep the interval midpoints inside the
/// polygon. Every arrangement face meets at least one slab, and a sample
/// never lands on an arrangement line, so each face gets sampled.
inline std::vector<Point> face_samples(const Polygon& P, const std::vector<Line>& lines,
                                       const std::set<Point>& crossings, std::size_t limit) {
    std::set<Rational> xs;
    for (const Point& v : P.vertices()) xs.insert(v.x);
    for (const Point& c : crossings) xs.insert(c.x);
    std::vector<Point> out;
    for (auto xit = xs.begin(), nxt = std::next(xit); nxt != xs.end(); ++xit, ++nxt) {
        Rational mx = (*xit + *nxt) / Rational(2);
        std::set<Rational> ys;
        for (const Line& l : lines)
            if (l.b.sign() != 0) ys.insert((l.c - l.a * mx) / l.b);
        if (ys.size() < 2) continue;
        for (auto yit = ys.begin(), ynx = std::next(yit); ynx != ys.end(); ++yit, ++ynx) {
            Point s{mx, (*yit + *ynx) / Rational(2)};
            if (P.locate(s) != Location::Interior) continue;
            out.push_back(s);
            if (out.size() > limit)
                throw GeometryError("witness sampling exceeds the size limit");
        }
    }
    return out;
}

struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return w[i >> 6] >> (i & 63) & 1; }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
        return *this;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    friend bool operator==(const Bits&, const Bits&) = default;
};

inline std::size_t gain(const Bits& row, const Bits& covered) {
    std::size_t g = 0;
    for (std::size_t i = 0; i < row.w.size(); ++i)
        g += std::size_t(std::popcount(row.w[i] & ~covered.w[i]));
    return g;
}

/// Exact minimum set cover, branch and bound. Branches on a hardest
/// uncovered witness, prefers candidates with the largest marginal gain,
/// and prunes with budget * best-possible-gain. Fully deterministic.
struct CoverSearch {
    const std::vector<Bits>& rows;
    const std::vector<std::vector<std::uint32_t>>& coverers;
    std::size_t nw;
    long cap;
    Deadline deadline;
    long best;
    std::vector<std::uint32_t> best_set;
    std::vector<std::uint32_t> cur;
    std::uint64_t nodes = 0;

    void dfs(const Bits& covered, std::size_t covered_count) {
        if ((++nodes & 255) == 0) check_deadline(deadline);
        if (covered_count == nw) {
            best = static_cast<long>(cur.size());
            best_set = cur;
            return;
        }
        long budget = std::min(cap, best - 1) - static_cast<long>(cur.size());
        if (budget <= 0) return;
        std::size_t gmax = 0;
        for (const Bits& r : rows) gmax = std::max(gmax, gain(r, covered));
        if (gmax == 0) return;
        if (std::size_t(budget) * gmax < nw - covered_count) return;
        std::size_t pick = 0, fewest = std::size_t(-1);
        for (std::size_t wi = 0; wi < nw; ++wi) {
            if (covered.test(wi) || coverers[wi].size() >= fewest) continue;
            fewest = coverers[wi].size();
            pick = wi;
        }
        std::vector<std::pair<std::size_t, std::uint32_t>> order;
        for (std::uint32_t c : coverers[pick]) {
            std::size_t gn = gain(rows[c], covered);
            if (gn) order.push_back({gn, c});
        }
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        for (const auto& [gn, c] : order) {
            Bits next = covered;
            next |= rows[c];
            cur.push_back(c);
            dfs(next, covered_count + gn);
            cur.pop_back();
        }
    }
};

}  // namespace oracle_detail

/// Every discretization point of the polygon, looking both ways: vertices,
/// pairwise crossings of the arrangement lines that land in the closed
/// polygon (edge extension hits among them), and one interior sample per
/// arrangement face. Heuristically complete for small inputs; min_cover's
/// re-verification catches the misses.
inline std::vector<HalfGuard> candidate_points(const Polygon& P, std::size_t limit = 5000) {
    auto lines = oracle_detail::arrangement_lines(P);
    auto positions = oracle_detail::crossings_in(P, lines, limit, {});
    for (const Point& v : P.vertices()) positions.insert(v);
    for (const Point& s : oracle_detail::face_samples(P, lines, positions, limit))
        positions.insert(s);
    if (positions.size() > limit)
        throw GeometryError("candidate positions exceed the size limit");
    std::vector<HalfGuard> out;
    out.reserve(2 * positions.size());
    for (const Point& p : positions) {
        out.push_back({p, Direction::Left});
        out.push_back({p, Direction::Right});
    }
    return out;
}

/// One interior point per face of the arrangement restricted to the polygon.
/// Within a face, visibility from any fixed vertex guard is constant, so the
/// samples stand in for the whole interior up to the discretization caveat
/// documented on candidate_points.
inline std::vector<Point> witness_points(const Polygon& P, std::size_t limit = 5000) {
    auto lines = oracle_detail::arrangement_lines(P);
    auto crossings = oracle_detail::crossings_in(P, lines, limit, {});
    return oracle_detail::face_samples(P, lines, crossings, limit);
}

/// One visibility polygon per distinct candidate position, then the looking
/// side filter per direction. Cell for cell equal to half_sees.
inline CoverageMatrix coverage_matrix(const Polygon& P, std::vector<HalfGuard> candidates,
                                      std::vector<Point> witnesses,
                                      const Deadline& deadline = {}) {
    CoverageMatrix M{std::move(candidates), std::move(witnesses), {}};
    M.sees.assign(M.candidates.size(), std::vector<bool>(M.witnesses.size(), false));
    std::map<Point, std::vector<bool>> full;
    for (std::size_t c = 0; c < M.candidates.size(); ++c) {
        oracle_detail::check_deadline(deadline);
        const HalfGuard& g = M.candidates[c];
        auto it = full.find(g.pos);
        if (it == full.end()) {
            Polygon V = visibility_polygon(P, g.pos);
            std::vector<bool> row(M.witnesses.size());
            for (std::size_t w = 0; w < M.witnesses.size(); ++w)
                row[w] = V.contains(M.witnesses[w]);
            it = full.emplace(g.pos, std::move(row)).first;
        }
        for (std::size_t w = 0; w < M.witnesses.size(); ++w) {
            const Point& q = M.witnesses[w];
            bool side = g.dir == Direction::Right ? q.x >= g.pos.x : q.x <= g.pos.x;
            M.sees[c][w] = side && it->second[w];
        }
    }
    return M;
}

/// Smallest candidate subset covering every witness, or nullopt if none of
/// size <= k_max exists. bound carries the optimum found. Dominated rows and
/// columns are stripped first: a witness implied by a harder one goes, a
/// candidate whose coverage sits inside another's goes. Deterministic.
inline std::optional<GuardSolution> min_cover(const CoverageMatrix& M, long k_max = 8,
                                              const Deadline& deadline = {}) {
    using oracle_detail::Bits;
    const std::size_t C = M.candidates.size(), W = M.witnesses.size();
    std::string stats = "candidates=" + std::to_string(C) + " witnesses=" + std::to_string(W);
    if (W == 0) return GuardSolution{{}, Algorithm::Oracle, 0, stats};

    std::vector<Bits> col(W, Bits(C));
    for (std::size_t c = 0; c < C; ++c)
        for (std::size_t w = 0; w < W; ++w)
            if (M.sees[c][w]) col[w].set(c);

    std::vector<std::size_t> wids;
    for (std::size_t i = 0; i < W; ++i) {
        oracle_detail::check_deadline(deadline);
        bool implied = false;
        for (std::size_t j = 0; j < W && !implied; ++j)
            implied = j != i && col[j].subset_of(col[i]) && (!(col[j] == col[i]) || j < i);
        if (!implied) wids.push_back(i);
    }
    const std::size_t nw = wids.size();

    std::vector<Bits> row(C, Bits(nw));
    for (std::size_t c = 0; c < C; ++c)
        for (std::size_t wi = 0; wi < nw; ++wi)
            if (M.sees[c][wids[wi]]) row[c].set(wi);

    std::vector<std::uint32_t> cids;
    Bits none(nw);
    for (std::size_t c = 0; c < C; ++c) {
        oracle_detail::check_deadline(deadline);
        if (row[c] == none) continue;
        bool dominated = false;
        for (std::size_t d = 0; d < C && !dominated; ++d)
            dominated = d != c && row[c].subset_of(row[d]) && (!(row[c] == row[d]) || d < c);
        if (!dominated) cids.push_back(static_cast<std::uint32_t>(c));
    }

    std::vector<Bits> rows;
    rows.reserve(cids.size());
    for (std::uint32_t c : cids) rows.push_back(row[c]);
    std::vector<std::vector<std::uint32_t>> coverers(nw);
    for (std::uint32_t r = 0; r < rows.size(); ++r)
        for (std::size_t wi = 0; wi < nw; ++wi)
            if (rows[r].test(wi)) coverers[wi].push_back(r);
    for (const auto& cov : coverers)
        if (cov.empty()) return std::nullopt;

    oracle_detail::CoverSearch search{rows, coverers, nw, k_max, deadline, k_max + 1, {}, {}, 0};

    // greedy cover seeds the incumbent so pruning bites early
    {
        Bits covered(nw);
        std::vector<std::uint32_t> picked;
        std::size_t have = 0;
        while (static_cast<long>(picked.size()) < k_max && have < nw) {
            std::size_t bestgain = 0;
            std::uint32_t bestc = 0;
            for (std::uint32_t r = 0; r < rows.size(); ++r) {
                std::size_t g = oracle_detail::gain(rows[r], covered);
                if (g > bestgain) { bestgain = g; bestc = r; }
            }
            if (bestgain == 0) break;
            picked.push_back(bestc);
            covered |= rows[bestc];
            have += bestgain;
        }
        if (have == nw) {
            search.best = static_cast<long>(picked.size());
            search.best_set = picked;
        }
    }

    search.dfs(Bits(nw), 0);
    if (search.best > k_max) return std::nullopt;

    std::vector<HalfGuard> guards;
    for (std::uint32_t r : search.best_set) guards.push_back(M.candidates[cids[r]]);
    std::sort(guards.begin(), guards.end(), [](const HalfGuard& a, const HalfGuard& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        return static_cast<int>(a.dir) < static_cast<int>(b.dir);
    });
    stats += " core=" + std::to_string(rows.size()) + "x" + std::to_string(nw) +
             " nodes=" + std::to_string(search.nodes);
    return GuardSolution{std::move(guards), Algorithm::Oracle, search.best, stats};
}

struct OracleLimits {
    long k_max = 8;
    double timeout_secs = 0;  // positive: wall clock budget for the whole run
    std::size_t size_limit = 5000;
    int max_rounds = 40;
};

/// Exact minimum half-guard cover of a small polygon. Solves set cover over
/// the discretized candidates and witnesses, then re-verifies the claimed
/// cover with the exact boolean difference; any leaked region contributes a
/// fresh witness that rules the failed guard set out, and the search rests
/// only on a cover that verifies. nullopt means no cover of size <= k_max
/// over the candidate set.
inline std::optional<GuardSolution> min_cover(const Polygon& P, const OracleLimits& lim = {}) {
    Deadline deadline;
    if (lim.timeout_secs > 0)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(lim.timeout_secs));
    auto candidates = candidate_points(P, lim.size_limit);
    auto witnesses = witness_points(P, lim.size_limit);
    for (int round = 0; round < lim.max_rounds; ++round) {
        CoverageMatrix M = coverage_matrix(P, candidates, witnesses, deadline);
        auto sol = min_cover(M, lim.k_max, deadline);
        if (!sol) return std::nullopt;
        CoverageReport rep = covers(P, sol->guards);
        if (rep.covered) {
            sol->notes += " rounds=" + std::to_string(round);
            return sol;
        }
        // every uncovered piece yields a point this guard set cannot see,
        // so the failed set never comes back
        for (const Polygon& piece : rep.uncovered) witnesses.push_back(interior_point(piece));
    }
    throw GeometryError("witness refinement did not settle");
}

/// |points| as a certified lower bound on the half-guard number: the full
/// visibility regions are verified pairwise interior-disjoint, and a half
/// guard sees no more than the full guard at the same spot. Rejects inputs
/// that do not certify.
inline long lower_bound_witnesses(const Polygon& P, const std::vector<Point>& points) {
    std::vector<Polygon> vis;
    vis.reserve(points.size());
    for (const Point& p : points) {
        if (!P.contains(p)) throw GeometryError("witness point outside the polygon");
        vis.push_back(visibility_polygon(P, p));
    }
    for (std::size_t i = 0; i < vis.size(); ++i)
        for (std::size_t j = i + 1; j < vis.size(); ++j)
            if (total_area(polygon_boolean(vis[i], vis[j], BoolOp::Intersection)).sign() != 0)
                throw GeometryError("witness visibility regions overlap");
    return static_cast<long>(points.size());
}

}  // namespace halfguard
