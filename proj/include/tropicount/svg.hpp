#ifndef TROPICOUNT_SVG_HPP
#define TROPICOUNT_SVG_HPP

// Static SVG drawing of a placed tropical curve.

#include "curve.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropicount {

struct SvgOptions {
    double width = 480;      // pixels; the height follows the aspect ratio
    double margin = 0.3;     // ends run this fraction of the span past the vertices
    double pad = 24;         // pixels around the box
};

namespace detail {

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

struct Frame {
    double x0, y0, x1, y1, scale, pad;
    double px(double x) const { return pad + (x - x0) * scale; }
    double py(double y) const { return pad + (y1 - y) * scale; }
};

/// Parameter where the ray p + t d leaves the box.
inline double exit_time(const Frame& f, double px, double py, double dx, double dy) {
    double t = 1e300;
    if (dx > 0) t = std::min(t, (f.x1 - px) / dx);
    if (dx < 0) t = std::min(t, (f.x0 - px) / dx);
    if (dy > 0) t = std::min(t, (f.y1 - py) / dy);
    if (dy < 0) t = std::min(t, (f.y0 - py) / dy);
    return std::max(t, 0.0);
}

} // namespace detail

/// Edges as segments, ends clipped at a box around the vertices, weights above 1 as labels, marked
/// points as filled dots and contracted edges as small dashed loops. Vertices need positions, or
/// edge lengths to place them.
inline std::string render_svg(TropicalCurve c, const SvgOptions& opt = {}) {
    if (c.num_vertices == 0) throw std::invalid_argument("empty curve");
    const bool placed = std::all_of(c.positions.begin(), c.positions.end(), [](const auto& p) { return p.has_value(); });
    if (!placed) {
        if (!c.has_lengths()) throw std::invalid_argument("curve needs vertex positions or edge lengths");
        if (!place_vertices(c, Point{0, 0})) throw std::invalid_argument("edge lengths do not close up");
    }
    std::vector<std::pair<double, double>> pos;
    for (const auto& p : c.positions) pos.push_back({p->x.get_d(), p->y.get_d()});

    double x0 = pos[0].first, x1 = x0, y0 = pos[0].second, y1 = y0;
    for (auto [x, y] : pos) {
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1.0});
    const double m = opt.margin * span;
    x0 -= m, x1 += m, y0 -= m, y1 += m;
    const double scale = (opt.width - 2 * opt.pad) / (x1 - x0);
    const detail::Frame f{x0, y0, x1, y1, scale, opt.pad};
    const double height = (y1 - y0) * scale + 2 * opt.pad;
    using detail::fmt;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(opt.width) << "\" height=\"" << fmt(height)
        << "\" viewBox=\"0 0 " << fmt(opt.width) << " " << fmt(height) << "\">\n"
        << "<rect x=\"" << fmt(opt.pad) << "\" y=\"" << fmt(opt.pad) << "\" width=\"" << fmt(opt.width - 2 * opt.pad)
        << "\" height=\"" << fmt(height - 2 * opt.pad) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n"
        << "<g stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";

    auto segment = [&](double ax, double ay, double bx, double by, std::int64_t w) {
        out << "<line x1=\"" << fmt(f.px(ax)) << "\" y1=\"" << fmt(f.py(ay)) << "\" x2=\"" << fmt(f.px(bx)) << "\" y2=\""
            << fmt(f.py(by)) << "\"";
        if (w > 1) out << " stroke-width=\"" << fmt(1.5 + w) << "\"";
        out << "/>\n";
    };
    std::vector<std::string> labels;
    auto label = [&](double x, double y, std::int64_t w) {
        if (w <= 1) return;
        labels.push_back("<text x=\"" + fmt(f.px(x) + 4) + "\" y=\"" + fmt(f.py(y) - 4) + "\">" + std::to_string(w) + "</text>\n");
    };

    for (const auto& e : c.edges) {
        const auto [ax, ay] = pos[static_cast<std::size_t>(e.tail)];
        if (e.contracted()) {
            out << "<circle cx=\"" << fmt(f.px(ax) + 8) << "\" cy=\"" << fmt(f.py(ay)) << "\" r=\"8\" stroke-dasharray=\"3 2\"/>\n";
            continue;
        }
        const auto [bx, by] = pos[static_cast<std::size_t>(e.head)];
        segment(ax, ay, bx, by, e.weight());
        label((ax + bx) / 2, (ay + by) / 2, e.weight());
    }
    for (const auto& e : c.ends) {
        const auto [ax, ay] = pos[static_cast<std::size_t>(e.vertex)];
        const double dx = static_cast<double>(e.vec.x), dy = static_cast<double>(e.vec.y);
        const double t = detail::exit_time(f, ax, ay, dx, dy);
        segment(ax, ay, ax + t * dx, ay + t * dy, e.weight());
        label(ax + t * dx * 0.8, ay + t * dy * 0.8, e.weight());
    }
    out << "</g>\n<g fill=\"black\">\n";
    std::vector<int> marked;
    for (const auto& mk : c.marks) marked.push_back(mk.vertex);
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    for (int v : marked) {
        const auto [x, y] = pos[static_cast<std::size_t>(v)];
        out << "<circle cx=\"" << fmt(f.px(x)) << "\" cy=\"" << fmt(f.py(y)) << "\" r=\"4\"/>\n";
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (const auto& l : labels) out << l;
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace tropicount

#endif // TROPICOUNT_SVG_HPP
