#ifndef TROPICOUNT_POLYGON_HPP
#define TROPICOUNT_POLYGON_HPP

// Lattice polygons and the degree <-> Newton polygon duality on Hirzebruch surfaces.

#include "arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tropicount {

/// Convex lattice polygon, vertices counterclockwise with no three consecutive collinear.
class LatticePolygon {
public:
    LatticePolygon() = default;

    /// Builds a polygon from a closed vertex list, dropping repeated and collinear vertices.
    /// Throws std::invalid_argument if the result is not a strictly convex polygon of positive area.
    explicit LatticePolygon(std::vector<Vec2> vertices) : vertices_(normalize(std::move(vertices))) {}

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    Vec2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }

    /// Twice the area (an integer).
    std::int64_t double_area() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < size(); ++i) s += cross(vertex(i), vertex(i + 1));
        return s;
    }

    std::int64_t boundary_points() const {
        std::int64_t b = 0;
        for (std::size_t i = 0; i < size(); ++i) b += lattice_length(edge(i));
        return b;
    }

    /// Strictly inside (not on the boundary).
    bool contains_interior(Vec2 p) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (cross(edge(i), p - vertex(i)) <= 0) return false;
        return true;
    }

    bool contains(Vec2 p) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (cross(edge(i), p - vertex(i)) < 0) return false;
        return true;
    }

    /// All lattice points of the closed polygon.
    std::vector<Vec2> lattice_points() const {
        std::vector<Vec2> out;
        auto [lo, hi] = bounding_box();
        for (auto x = lo.x; x <= hi.x; ++x)
            for (auto y = lo.y; y <= hi.y; ++y)
                if (contains({x, y})) out.push_back({x, y});
        return out;
    }

    std::pair<Vec2, Vec2> bounding_box() const {
        Vec2 lo = vertices_.front(), hi = vertices_.front();
        for (auto v : vertices_) {
            lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
            hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
        }
        return {lo, hi};
    }

    bool operator==(const LatticePolygon&) const = default;

private:
    static std::vector<Vec2> normalize(std::vector<Vec2> v) {
        std::vector<Vec2> dedup;
        for (auto p : v)
            if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
        while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
        bool changed = true;
        while (changed && dedup.size() >= 3) {
            changed = false;
            for (std::size_t i = 0; i < dedup.size(); ++i) {
                const auto n = dedup.size();
                Vec2 a = dedup[(i + n - 1) % n], b = dedup[i], c = dedup[(i + 1) % n];
                if (cross(b - a, c - b) == 0) {
                    dedup.erase(dedup.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }
        if (dedup.size() < 3) throw std::invalid_argument("degenerate polygon");
        const auto n = dedup.size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 a = dedup[i], b = dedup[(i + 1) % n], c = dedup[(i + 2) % n];
            if (cross(b - a, c - b) <= 0) throw std::invalid_argument("polygon is not convex counterclockwise");
        }
        // a convex polygon winds once; reject star shapes
        std::int64_t area2 = 0;
        for (std::size_t i = 0; i < n; ++i) area2 += cross(dedup[i], dedup[(i + 1) % n]);
        std::int64_t turn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 e0 = dedup[(i + 1) % n] - dedup[i];
            Vec2 e1 = dedup[(i + 2) % n] - dedup[(i + 1) % n];
            if (e0.y < 0 && e1.y >= 0) ++turn;  // count upward crossings of the edge heading
        }
        if (area2 <= 0 || turn > 1) throw std::invalid_argument("polygon is not convex counterclockwise");
        return dedup;
    }

    std::vector<Vec2> vertices_;
};

struct PickData {
    Rational area;
    std::int64_t boundary_points = 0;
    std::int64_t interior_points = 0;
};

/// Lattice points strictly inside by direct scan.
inline std::int64_t interior_lattice_points_scan(const LatticePolygon& p) {
    std::int64_t count = 0;
    auto [lo, hi] = p.bounding_box();
    for (auto x = lo.x + 1; x < hi.x; ++x)
        for (auto y = lo.y + 1; y < hi.y; ++y)
            if (p.contains_interior({x, y})) ++count;
    return count;
}

/// Interior count from Pick's theorem, I = A - B/2 + 1.
inline std::int64_t interior_lattice_points_pick(const LatticePolygon& p) {
    return (p.double_area() - p.boundary_points() + 2) / 2;
}

/// Number of lattice points strictly inside; the scan is cross-checked against Pick.
inline std::int64_t interior_lattice_points(const LatticePolygon& p) {
    const auto scan = interior_lattice_points_scan(p);
    if (scan != interior_lattice_points_pick(p)) throw std::logic_error("Pick cross-check failed");
    return scan;
}

inline PickData pick_data(const LatticePolygon& p) {
    PickData d;
    d.area = Rational(p.double_area(), 2);
    d.area.canonicalize();
    d.boundary_points = p.boundary_points();
    d.interior_points = interior_lattice_points(p);
    if (d.area != Rational(d.interior_points) + fraction(d.boundary_points, 2) - 1)
        throw std::logic_error("Pick identity violated");
    return d;
}

/// Area of a parallelogram written as #interior + b/2 + 1, b = boundary points that are not vertices.
inline Rational parallelogram_pick_area(const LatticePolygon& p) {
    if (p.size() != 4 || !(p.edge(0) == -p.edge(2)) || !(p.edge(1) == -p.edge(3)))
        throw std::invalid_argument("not a parallelogram");
    const auto b = p.boundary_points() - 4;
    Rational a = Rational(interior_lattice_points(p)) + fraction(b, 2) + 1;
    a.canonicalize();
    return a;
}

/// Newton polygon of bidegree (a,b) on F_n: (0,0),(a,0),(a,b),(0,b+an).
/// For n = 1 and b = 0 this is the degree-a triangle of the plane.
inline LatticePolygon polygon_of_degree(std::int64_t n, std::int64_t a, std::int64_t b) {
    if (n < 0 || a < 0 || b < 0) throw std::invalid_argument("negative degree data");
    if (a == 0) throw std::invalid_argument("degree with a = 0 has no Newton polygon of positive area");
    return LatticePolygon({{0, 0}, {a, 0}, {a, b}, {0, b + a * n}});
}

struct WeightedEnd {
    Vec2 direction;  // primitive
    std::int64_t weight = 1;

    Vec2 vector() const { return direction * weight; }
    auto operator<=>(const WeightedEnd&) const = default;
};

/// Tangency data for relative degrees.
struct Tangency {
    std::vector<std::int64_t> weights;  // empty, {w}, or {w', w''} with w' >= w''

    static Tangency none() { return {}; }
    static Tangency single(std::int64_t w) { return {{w}}; }
    static Tangency pair(std::int64_t w1, std::int64_t w2) {
        return {{std::max(w1, w2), std::min(w1, w2)}};
    }
    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto w : weights) s += w;
        return s;
    }
    bool operator==(const Tangency&) const = default;

    std::string key() const {
        if (weights.empty()) return "-";
        std::string s;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(weights[i]);
        }
        return s;
    }
};

class TropicalDegree {
public:
    TropicalDegree() = default;
    TropicalDegree(std::int64_t n, std::int64_t a, std::int64_t b, Tangency t, std::vector<WeightedEnd> ends)
        : n_(n), a_(a), b_(b), tangency_(std::move(t)), ends_(std::move(ends)) {
        std::sort(ends_.begin(), ends_.end());
    }

    std::int64_t surface_n() const { return n_; }
    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    const Tangency& tangency() const { return tangency_; }
    const std::vector<WeightedEnd>& ends() const { return ends_; }
    std::size_t num_ends() const { return ends_.size(); }

    /// Pure fiber classes have no polygon of positive area.
    bool degenerate() const { return a_ == 0; }

    Vec2 weighted_sum() const {
        Vec2 s;
        for (const auto& e : ends_) s += e.vector();
        return s;
    }

    /// Number of point conditions making rational curves of this degree rigid.
    std::int64_t rigid_point_count() const { return static_cast<std::int64_t>(ends_.size()) - 1; }

    bool operator==(const TropicalDegree&) const = default;

private:
    std::int64_t n_ = 0, a_ = 0, b_ = 0;
    Tangency tangency_;
    std::vector<WeightedEnd> ends_;
};

namespace detail {
inline void check_bidegree(std::int64_t n, std::int64_t a, std::int64_t b) {
    if (n < 0 || a < 0 || b < 0) throw std::invalid_argument("negative degree data");
    if (a == 0 && b == 0) throw std::invalid_argument("bidegree (0,0)");
}
inline void push_ends(std::vector<WeightedEnd>& ends, Vec2 dir, std::int64_t count, std::int64_t weight = 1) {
    for (std::int64_t i = 0; i < count; ++i) ends.push_back({dir, weight});
}
} // namespace detail

/// Ends of a bidegree-(a,b) curve on F_n, all of weight one.
inline TropicalDegree degree_standard(std::int64_t n, std::int64_t a, std::int64_t b) {
    detail::check_bidegree(n, a, b);
    std::vector<WeightedEnd> ends;
    detail::push_ends(ends, {n, 1}, a);
    detail::push_ends(ends, {1, 0}, b);
    detail::push_ends(ends, {0, -1}, a);
    detail::push_ends(ends, {-1, 0}, a * n + b);
    return {n, a, b, Tangency::none(), std::move(ends)};
}

/// Degree with one or two rightward ends of prescribed weight (tangency with the right boundary divisor).
inline TropicalDegree degree_relative(std::int64_t n, std::int64_t a, std::int64_t b, const Tangency& t) {
    detail::check_bidegree(n, a, b);
    if (t.weights.empty()) return degree_standard(n, a, b);
    if (t.weights.size() > 2) throw std::invalid_argument("at most two tangency weights");
    for (auto w : t.weights)
        if (w < 1) throw std::invalid_argument("tangency weights must be positive");
    if (t.total() > b) throw std::invalid_argument("tangency exceeds bidegree");
    Tangency canon = t.weights.size() == 2 ? Tangency::pair(t.weights[0], t.weights[1]) : t;
    std::vector<WeightedEnd> ends;
    detail::push_ends(ends, {n, 1}, a);
    detail::push_ends(ends, {1, 0}, b - t.total());
    for (auto w : canon.weights) ends.push_back({{1, 0}, w});
    detail::push_ends(ends, {0, -1}, a);
    detail::push_ends(ends, {-1, 0}, a * n + b);
    return {n, a, b, canon, std::move(ends)};
}

// JSON ------------------------------------------------------------------------------------------

inline nlohmann::json to_json(const LatticePolygon& p) {
    nlohmann::json v = nlohmann::json::array();
    for (auto q : p.vertices()) v.push_back({q.x, q.y});
    return {{"vertices", v}};
}

inline LatticePolygon polygon_from_json(const nlohmann::json& j) {
    std::vector<Vec2> v;
    for (const auto& q : j.at("vertices")) v.push_back({q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>()});
    return LatticePolygon(std::move(v));
}

inline nlohmann::json to_json(const TropicalDegree& d) {
    nlohmann::json ends = nlohmann::json::array();
    for (const auto& e : d.ends())
        ends.push_back({{"dir", {e.direction.x, e.direction.y}}, {"weight", e.weight}});
    return {{"ends", ends}};
}

} // namespace tropicount

#endif // TROPICOUNT_POLYGON_HPP
