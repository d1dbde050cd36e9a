#ifndef TROPICOUNT_SUBDIVISION_HPP
#define TROPICOUNT_SUBDIVISION_HPP

// Genus-one curves obtained from a rational one by adding a contracted edge, and the resolutions
// of a 4-valent vertex carrying a contracted loop.

#include "multiplicity.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tropicount {

/// Side of a counterclockwise polygon whose outward normal is u.
constexpr Vec2 side_of_normal(Vec2 u) { return {-u.y, u.x}; }

/// Newton polygon of a balanced family of weighted outgoing vectors.
inline LatticePolygon dual_polygon(std::vector<Vec2> ends) {
    std::vector<Vec2> sides;
    for (auto u : ends) sides.push_back(side_of_normal(u));
    std::sort(sides.begin(), sides.end(), [](Vec2 a, Vec2 b) {
        return std::atan2(static_cast<double>(a.y), static_cast<double>(a.x)) <
               std::atan2(static_cast<double>(b.y), static_cast<double>(b.x));
    });
    std::vector<Vec2> verts{{0, 0}};
    for (auto s : sides) verts.push_back(verts.back() + s);
    if (!(verts.back() == Vec2{0, 0})) throw std::invalid_argument("ends are not balanced");
    verts.pop_back();
    return LatticePolygon(verts);
}

/// Interior lattice points of the triangle dual to a trivalent vertex with outgoing u, v, -(u+v).
inline std::int64_t triangle_interior(Vec2 u, Vec2 v) {
    const Vec2 w = -(u + v);
    return (iabs(cross(u, v)) - lattice_length(u) - lattice_length(v) - lattice_length(w) + 2) / 2;
}

// Six-valent vertex ------------------------------------------------------------------------------

struct Resolution {
    enum class Kind { loop_at_vertex, loop_on_edge, crossing_edge } kind = Kind::loop_at_vertex;
    Vec2 first, second;  // triangle sides, the edge, or the two crossing edges
    Int multiplicity = 0;
};

/// One way to pull the 4-valent vertex apart: ends {i,j} at one new vertex, {k,l} at the other.
struct SubdivisionFamily {
    std::array<int, 2> pair{0, 1};
    Int rational_multiplicity = 0;  // M times the two vertex multiplicities
    std::size_t crossings = 0;
    std::vector<Resolution> resolutions;  // those with nonzero multiplicity
    Int total() const {
        Int s = 0;
        for (const auto& r : resolutions) s += r.multiplicity;
        return s;
    }
};

namespace detail {

/// Do the rays a + s u and b + t v (s, t > 0) meet?
inline bool rays_cross(Vec2 a, Vec2 u, Vec2 b, Vec2 v) {
    const std::int64_t d = cross(u, v);
    if (d == 0) return false;
    const Vec2 w = b - a;
    const Rational s = fraction(cross(w, v), d), t = fraction(cross(w, u), d);
    return s > 0 && t > 0;
}

} // namespace detail

/// Star of four weighted outgoing edges from the polygon: its sides, with a triangle's first side of
/// lattice length >= 2 cut at its first lattice point.
inline std::array<Vec2, 4> sixvalent_star(const LatticePolygon& p) {
    std::vector<Vec2> sides;
    for (std::size_t i = 0; i < p.size(); ++i) sides.push_back(p.edge(i));
    if (sides.size() == 3) {
        auto it = std::find_if(sides.begin(), sides.end(), [](Vec2 s) { return lattice_length(s) >= 2; });
        if (it == sides.end()) throw std::invalid_argument("triangle has no side to split");
        const Vec2 step = primitive(*it);
        const Vec2 rest = *it - step;
        *it = step;
        sides.insert(it + 1, rest);
    }
    if (sides.size() != 4) throw std::invalid_argument("six-valent star needs a polygon with four sides");
    std::array<Vec2, 4> star;
    for (std::size_t i = 0; i < 4; ++i) star[i] = {sides[i].y, -sides[i].x};
    return star;
}

/// Resolutions of a contracted loop at a 4-valent vertex with outgoing edges `star`; `base` is the
/// multiplicity of the rest of the curve. In every family the multiplicities add up to
/// #int(P) times the family's rational multiplicity.
inline std::vector<SubdivisionFamily> resolve_sixvalent(const std::array<Vec2, 4>& star, const Int& base) {
    Vec2 sum;
    for (auto u : star) {
        if (u.is_zero()) throw std::invalid_argument("zero edge in star");
        sum += u;
    }
    if (!sum.is_zero()) throw std::invalid_argument("star is not balanced");
    std::vector<SubdivisionFamily> out;
    for (int j : {1, 2, 3}) {
        std::array<int, 2> rest{};
        for (int x = 1, n = 0; x < 4; ++x)
            if (x != j) rest[static_cast<std::size_t>(n++)] = x;
        const Vec2 ui = star[0], uj = star[static_cast<std::size_t>(j)];
        const Vec2 uk = star[static_cast<std::size_t>(rest[0])], ul = star[static_cast<std::size_t>(rest[1])];
        if (cross(ui, uj) == 0 || cross(uk, ul) == 0) continue;
        SubdivisionFamily f;
        f.pair = {0, j};
        f.rational_multiplicity = base * Int(iabs(cross(ui, uj))) * Int(iabs(cross(uk, ul)));
        const Int& m = f.rational_multiplicity;
        auto add = [&](Resolution::Kind kind, Vec2 a, Vec2 b, std::int64_t factor) {
            if (factor != 0) f.resolutions.push_back({kind, a, b, Int(factor) * m});
        };
        add(Resolution::Kind::loop_at_vertex, ui, uj, triangle_interior(ui, uj));
        add(Resolution::Kind::loop_at_vertex, uk, ul, triangle_interior(uk, ul));
        // new vertices at 0 and at uk + ul, joined by an edge of that vector
        const Vec2 inner = uk + ul;
        add(Resolution::Kind::loop_on_edge, inner, inner, lattice_length(inner) - 1);
        std::vector<Vec2> crossed;
        for (Vec2 a : {ui, uj})
            for (Vec2 b : {uk, ul})
                if (detail::rays_cross({0, 0}, a, inner, b)) {
                    ++f.crossings;
                    add(Resolution::Kind::crossing_edge, a, b, iabs(cross(a, b)));
                    for (Vec2 e : {a, b})
                        if (std::find(crossed.begin(), crossed.end(), e) == crossed.end()) crossed.push_back(e);
                }
        // part of a crossed edge is dual to an interior edge of the subdivision
        for (Vec2 e : crossed) add(Resolution::Kind::loop_on_edge, e, e, lattice_length(e) - 1);
        out.push_back(std::move(f));
    }
    return out;
}

inline std::vector<SubdivisionFamily> resolve_sixvalent(const LatticePolygon& p, const Int& base) {
    return resolve_sixvalent(sixvalent_star(p), base);
}

// Contracted edges on a simple rational curve ----------------------------------------------------

namespace detail {

/// from + s vec for 0 <= s <= hi, or s >= 0 for a ray.
struct Piece {
    Point from;
    Vec2 vec;
    std::optional<Rational> hi;
};

/// Where the two pieces' lines meet, as parameters (s, t); nullopt when parallel and apart.
/// Throws when they overlap along a segment.
inline std::optional<std::pair<Rational, Rational>> piece_intersection(const Piece& p, const Piece& q) {
    const Rational wx = q.from.x - p.from.x, wy = q.from.y - p.from.y;
    const std::int64_t d = cross(p.vec, q.vec);
    if (d == 0) {
        if (wx * p.vec.y - wy * p.vec.x != 0) return std::nullopt;
        // collinear: compare the parameter ranges along p
        const Rational norm(dot(p.vec, p.vec));
        const Rational a = (wx * p.vec.x + wy * p.vec.y) / norm;
        const bool same_way = dot(p.vec, q.vec) > 0;
        const Rational ratio = Rational(dot(p.vec, q.vec)) / norm;
        std::optional<Rational> lo = a, hi = a;
        if (q.hi) (same_way ? hi : lo) = a + *q.hi * ratio;
        else (same_way ? hi : lo) = std::nullopt;
        const bool below = hi && *hi <= 0;
        const bool above = lo && p.hi && *lo >= *p.hi;
        if (!below && !above) throw std::invalid_argument("requires simple curve");
        return std::nullopt;
    }
    const Rational s = (wx * q.vec.y - wy * q.vec.x) / Rational(d);
    const Rational t = (wx * p.vec.y - wy * p.vec.x) / Rational(d);
    return std::make_pair(s, t);
}

} // namespace detail

struct ContractedEdgeTotal {
    Int total = 0;                 // sum of the genus-one multiplicities
    Int rational_multiplicity = 0;
    std::int64_t interior_points = 0;
    std::int64_t from_crossings = 0, from_vertices = 0, from_edges = 0;
};

/// Adds a contracted edge to a simple rational curve in every possible way: between two crossing
/// edges (area of the dual parallelogram), as a loop at a vertex (interior points of the dual
/// triangle), or as a loop on a bounded edge (weight - 1).
/// Marked points are ignored. Throws std::logic_error if the total is not #int(Delta) Mult.
inline ContractedEdgeTotal contracted_edge_total(const TropicalCurve& curve) {
    if (curve.genus() != 0) throw std::invalid_argument("requires simple curve");
    TropicalCurve c = curve;
    c.marks.clear();
    c = smooth_bivalent(c);
    if (!c.has_lengths() || !c.positions[0]) throw std::invalid_argument("contracted_edge_total needs a placed curve");

    ContractedEdgeTotal r;
    std::vector<Vec2> ends;
    for (const auto& e : c.ends) ends.push_back(e.vec);
    const auto delta = dual_polygon(ends);
    r.interior_points = interior_lattice_points(delta);

    std::vector<detail::Piece> pieces;
    for (int v = 0; v < c.num_vertices; ++v) {
        std::vector<Vec2> out;
        for (int e : c.incident(v)) {
            const auto& ed = c.edges[e];
            if (ed.contracted()) throw std::invalid_argument("requires simple curve");
            out.push_back(ed.tail == v ? ed.vec : -ed.vec);
        }
        for (const auto& e : c.ends)
            if (e.vertex == v) out.push_back(e.vec);
        if (out.size() != 3 || cross(out[0], out[1]) == 0) throw std::invalid_argument("requires simple curve");
        r.from_vertices += triangle_interior(out[0], out[1]);
        for (int w = 0; w < v; ++w)
            if (*c.positions[w] == *c.positions[v]) throw std::invalid_argument("requires simple curve");
    }
    for (const auto& ed : c.edges) pieces.push_back({*c.positions[ed.tail], ed.vec, *ed.length});
    for (const auto& e : c.ends) pieces.push_back({*c.positions[e.vertex], e.vec, std::nullopt});

    for (std::size_t a = 0; a < pieces.size(); ++a)
        for (std::size_t b = a + 1; b < pieces.size(); ++b) {
            const auto& p = pieces[a];
            const auto& q = pieces[b];
            auto hit = detail::piece_intersection(p, q);
            if (!hit) continue;
            const auto [s, t] = *hit;
            const bool in_p = s > 0 && (!p.hi || s < *p.hi), in_q = t > 0 && (!q.hi || t < *q.hi);
            const bool on_p = s >= 0 && (!p.hi || s <= *p.hi), on_q = t >= 0 && (!q.hi || t <= *q.hi);
            if (in_p && in_q) {
                r.from_crossings += iabs(cross(p.vec, q.vec));
            } else if ((in_p && on_q) || (in_q && on_p)) {
                throw std::invalid_argument("requires simple curve");  // a vertex on another edge
            }
        }
    for (const auto& ed : c.edges) r.from_edges += lattice_length(ed.vec) - 1;

    r.rational_multiplicity = vertex_product_multiplicity(c);
    r.total = Int(r.from_crossings + r.from_vertices + r.from_edges) * r.rational_multiplicity;
    if (r.total != Int(r.interior_points) * r.rational_multiplicity)
        throw std::logic_error("contracted edge total differs from #int(Delta) Mult");
    return r;
}

} // namespace tropicount

#endif // TROPICOUNT_SUBDIVISION_HPP
