#pragma once

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "halfguard/polygon.hpp"
#include "halfguard/visibility.hpp"

namespace halfguard {

namespace svg_detail {

/// Drawing resolution: 12 significant digits. The exact pipeline never
/// reads these numbers back.
inline std::string num(double d) {
    std::ostringstream os;
    os << std::setprecision(12) << d;
    return os.str();
}

inline const char* stroke_color(Direction d) {
    return d == Direction::Right ? "#b0392b" : "#2e5fb8";
}

}  // namespace svg_detail

/// Accumulates overlays over one polygon and writes a self-contained SVG.
/// Output is byte-stable for identical input: fixed precision, insertion
/// order, no timestamps. Right-looking guards draw red, left-looking blue;
/// the half disc sits on the side the guard can see.
class SvgScene {
public:
    explicit SvgScene(const Polygon& P) : poly_(P) {
        auto [lo, hi] = P.bbox();
        minx_ = lo.x.to_double();
        miny_ = lo.y.to_double();
        maxx_ = hi.x.to_double();
        maxy_ = hi.y.to_double();
        double margin = 0.05 * std::max(maxx_ - minx_, maxy_ - miny_);
        if (margin <= 0) margin = 1;
        minx_ -= margin;
        miny_ -= margin;
        maxx_ += margin;
        maxy_ += margin;
        unit_ = std::max(maxx_ - minx_, maxy_ - miny_);
    }

    void add_region(const Polygon& piece, Direction dir) { regions_.push_back({piece, dir}); }

    void add_region(const VisibilityRegion& region) {
        for (const Polygon& piece : region.pieces) add_region(piece, region.guard.dir);
    }

    void add_guard(const HalfGuard& g) { guards_.push_back(g); }

    void add_witness(const Point& p) { witnesses_.push_back(p); }

    void write(std::ostream& out) const {
        using svg_detail::num;
        double w = maxx_ - minx_;
        double h = maxy_ - miny_;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(minx_) << " "
            << num(miny_) << " " << num(w) << " " << num(h) << "\" width=\"720\" height=\""
            << num(720.0 * h / w) << "\">\n";
        path(out, poly_, "fill=\"#f5f2ea\" stroke=\"#222222\" stroke-width=\"" +
                             num(0.004 * unit_) + "\" stroke-linejoin=\"round\"");
        for (const auto& [piece, dir] : regions_) {
            std::string style = std::string("fill=\"") + svg_detail::stroke_color(dir) +
                                "\" fill-opacity=\"0.16\" stroke=\"none\"";
            path(out, piece, style);
        }
        for (const Point& p : witnesses_) {
            out << "  <circle cx=\"" << num(p.x.to_double()) << "\" cy=\"" << fy(p.y.to_double())
                << "\" r=\"" << num(0.010 * unit_) << "\" fill=\"#222222\"/>\n";
        }
        for (const HalfGuard& g : guards_) {
            double x = g.pos.x.to_double();
            double y = g.pos.y.to_double();
            double r = 0.018 * unit_;
            const char* color = svg_detail::stroke_color(g.dir);
            int sweep = g.dir == Direction::Right ? 1 : 0;
            out << "  <path d=\"M " << num(x) << " " << fy(y + r) << " A " << num(r) << " "
                << num(r) << " 0 0 " << sweep << " " << num(x) << " " << fy(y - r)
                << " Z\" fill=\"" << color << "\"/>\n";
            out << "  <circle cx=\"" << num(x) << "\" cy=\"" << fy(y) << "\" r=\"" << num(r)
                << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
                << num(0.004 * unit_) << "\"/>\n";
        }
        out << "</svg>\n";
    }

    std::string str() const {
        std::ostringstream os;
        write(os);
        return os.str();
    }

private:
    // svg y grows downward; reflect inside the viewBox
    std::string fy(double y) const { return svg_detail::num(maxy_ + miny_ - y); }

    void path(std::ostream& out, const Polygon& P, const std::string& style) const {
        using svg_detail::num;
        out << "  <path d=\"";
        for (std::size_t i = 0; i < P.size(); ++i)
            out << (i == 0 ? "M " : " L ") << num(P.vertex(i).x.to_double()) << " "
                << fy(P.vertex(i).y.to_double());
        out << " Z\" " << style << "/>\n";
    }

    Polygon poly_;
    std::vector<std::pair<Polygon, Direction>> regions_;
    std::vector<HalfGuard> guards_;
    std::vector<Point> witnesses_;
    double minx_, miny_, maxx_, maxy_, unit_;
};

}  // namespace halfguard
