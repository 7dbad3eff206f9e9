#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfguard/polygon.hpp"

namespace halfguard {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

/// Strips '#' comments and returns whitespace-separated tokens.
inline std::vector<std::string> tokenize_polygon_text(std::istream& in) {
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) toks.push_back(t);
    }
    return toks;
}

/// Format: vertex count, then that many "x y" pairs. Coordinates are
/// integers, decimals, or num/den fractions; '#' starts a comment.
inline Polygon read_polygon(std::istream& in, bool allow_collinear = false) {
    auto toks = tokenize_polygon_text(in);
    if (toks.empty()) throw ParseError("empty polygon input");
    long n = 0;
    try {
        size_t used = 0;
        n = std::stol(toks[0], &used);
        if (used != toks[0].size()) throw ParseError("bad vertex count: " + toks[0]);
    } catch (const std::logic_error&) {
        throw ParseError("bad vertex count: " + toks[0]);
    }
    if (n < 3) throw ParseError("vertex count must be at least 3");
    if (static_cast<long>(toks.size()) != 1 + 2 * n)
        throw ParseError("expected " + std::to_string(2 * n) + " coordinates, got " +
                         std::to_string(toks.size() - 1));
    std::vector<Point> pts;
    pts.reserve(n);
    for (long i = 0; i < n; ++i) {
        auto x = Rational::parse(toks[1 + 2 * i]);
        auto y = Rational::parse(toks[2 + 2 * i]);
        if (!x || !y)
            throw ParseError("bad coordinate on vertex " + std::to_string(i) + ": " +
                             toks[1 + 2 * i] + " " + toks[2 + 2 * i]);
        pts.push_back({*x, *y});
    }
    try {
        return Polygon::make(std::move(pts), allow_collinear);
    } catch (const GeometryError& e) {
        throw ParseError(std::string("invalid polygon: ") + e.what());
    }
}

inline Polygon read_polygon_text(const std::string& text, bool allow_collinear = false) {
    std::istringstream in(text);
    return read_polygon(in, allow_collinear);
}

inline void write_polygon(std::ostream& out, const Polygon& P) {
    out << P.size() << "\n";
    for (const Point& v : P.vertices()) out << v.x.str() << " " << v.y.str() << "\n";
}

}  // namespace halfguard
