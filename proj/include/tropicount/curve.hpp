#ifndef TROPICOUNT_CURVE_HPP
#define TROPICOUNT_CURVE_HPP

// Parametrized tropical curves in the plane (genus 0 or 1).
//
// A curve is an abstract graph: vertices, bounded edges (possibly loops or contracted),
// unbounded ends and marked points. Every bounded edge carries its weighted vector
// (tail -> head); ends carry their outgoing weighted vector. Marked points are contracted
// ends attached at a vertex. Lengths and positions are optional: a curve without them is
// just a combinatorial type.

#include "arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropicount {

struct CurveEdge {
    int tail = 0;
    int head = 0;
    Vec2 vec;  // weighted vector from tail to head
    std::optional<Rational> length;

    std::int64_t weight() const { return lattice_length(vec); }
    bool is_loop() const { return tail == head; }
    bool contracted() const { return vec.is_zero(); }
};

struct CurveEnd {
    int vertex = 0;
    Vec2 vec;  // weighted outgoing vector

    std::int64_t weight() const { return lattice_length(vec); }
};

struct CurveMark {
    int vertex = 0;
    int label = 0;
};

struct TropicalCurve {
    int num_vertices = 0;
    std::vector<CurveEdge> edges;
    std::vector<CurveEnd> ends;
    std::vector<CurveMark> marks;
    std::vector<std::optional<Point>> positions;  // per vertex, optional
    std::optional<Rational> j_length;

    int add_vertex() {
        positions.emplace_back();
        return num_vertices++;
    }
    int add_edge(int tail, int head, Vec2 vec) {
        edges.push_back({tail, head, vec, std::nullopt});
        return static_cast<int>(edges.size()) - 1;
    }
    void add_end(int v, Vec2 vec) { ends.push_back({v, vec}); }
    void add_mark(int v, int label) { marks.push_back({v, label}); }

    int genus() const { return static_cast<int>(edges.size()) - num_vertices + 1; }

    /// Incident bounded edges of a vertex (loops appear once).
    std::vector<int> incident(int v) const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(edges.size()); ++i)
            if (edges[i].tail == v || edges[i].head == v) out.push_back(i);
        return out;
    }

    int valence(int v) const {
        int d = 0;
        for (const auto& e : edges) d += (e.tail == v) + (e.head == v);
        for (const auto& e : ends) d += e.vertex == v;
        for (const auto& m : marks) d += m.vertex == v;
        return d;
    }

    bool has_mark(int v) const {
        return std::any_of(marks.begin(), marks.end(), [v](const CurveMark& m) { return m.vertex == v; });
    }

    /// Outgoing weighted vectors at v from bounded edges and ends (loops and marks excluded).
    std::vector<Vec2> outgoing(int v) const {
        std::vector<Vec2> out;
        for (const auto& e : edges) {
            if (e.is_loop()) continue;
            if (e.tail == v) out.push_back(e.vec);
            if (e.head == v) out.push_back(-e.vec);
        }
        for (const auto& e : ends)
            if (e.vertex == v) out.push_back(e.vec);
        return out;
    }

    Vec2 outgoing_sum(int v) const {
        Vec2 s;
        for (auto w : outgoing(v)) s += w;
        return s;
    }

    bool connected() const {
        if (num_vertices == 0) return false;
        std::vector<char> seen(num_vertices, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& e : edges) {
                int o = e.tail == v ? e.head : e.head == v ? e.tail : -1;
                if (o >= 0 && !seen[o]) { seen[o] = 1; stack.push_back(o); }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }

    bool has_lengths() const {
        return std::all_of(edges.begin(), edges.end(), [](const CurveEdge& e) { return e.length.has_value(); });
    }
};

struct BalancingReport {
    bool ok = true;
    std::vector<int> failing_vertices;
    std::vector<int> inconsistent_edges;
};

/// Balancing at every vertex and, where positions and lengths are known,
/// position(head) - position(tail) = length * vec on every bounded edge.
inline BalancingReport check_balancing(const TropicalCurve& c) {
    BalancingReport r;
    for (int v = 0; v < c.num_vertices; ++v)
        if (!c.outgoing_sum(v).is_zero()) r.failing_vertices.push_back(v);
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
        const auto& e = c.edges[i];
        if (!e.length || !c.positions[e.tail] || !c.positions[e.head]) continue;
        Point d = *c.positions[e.head] - *c.positions[e.tail];
        Point expect = scaled(e.vec, *e.length);
        if (!(d == expect)) r.inconsistent_edges.push_back(i);
    }
    r.ok = r.failing_vertices.empty() && r.inconsistent_edges.empty();
    return r;
}

/// Spanning tree from vertex 0; parent_edge[v] = edge used to reach v (-1 at the root).
struct SpanningTree {
    std::vector<int> parent_edge;
    std::vector<int> parent;
    std::vector<int> order;
    std::vector<int> non_tree_edges;
};

inline SpanningTree spanning_tree(const TropicalCurve& c) {
    SpanningTree t;
    t.parent_edge.assign(c.num_vertices, -1);
    t.parent.assign(c.num_vertices, -1);
    std::vector<char> seen(c.num_vertices, 0);
    std::vector<char> used(c.edges.size(), 0);
    std::queue<int> q;
    if (c.num_vertices == 0) return t;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        t.order.push_back(v);
        for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
            const auto& e = c.edges[i];
            if (e.is_loop()) continue;
            int o = e.tail == v ? e.head : e.head == v ? e.tail : -1;
            if (o < 0 || seen[o]) continue;
            seen[o] = 1;
            used[i] = 1;
            t.parent_edge[o] = i;
            t.parent[o] = v;
            q.push(o);
        }
    }
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i)
        if (!used[i]) t.non_tree_edges.push_back(i);
    return t;
}

/// Signed edge coefficients of the tree path root -> v: position(v) = root + sum coeff[e] * len[e] * vec[e].
inline std::vector<int> path_coefficients(const TropicalCurve& c, const SpanningTree& t, int v) {
    std::vector<int> coeff(c.edges.size(), 0);
    while (t.parent_edge[v] >= 0) {
        const auto& e = c.edges[t.parent_edge[v]];
        coeff[t.parent_edge[v]] += (e.head == v) ? 1 : -1;
        v = t.parent[v];
    }
    return coeff;
}

/// The unique cycle of a genus-1 curve as a list of (edge, orientation) pairs traversed in order.
struct Cycle {
    std::vector<int> edges;
    std::vector<int> signs;      // +1 when traversed tail -> head
    std::vector<int> vertices;   // vertices met along the cycle
    bool contains_edge(int e) const { return std::find(edges.begin(), edges.end(), e) != edges.end(); }
    bool contains_vertex(int v) const { return std::find(vertices.begin(), vertices.end(), v) != vertices.end(); }
};

inline Cycle find_cycle(const TropicalCurve& c) {
    if (c.genus() != 1) throw std::invalid_argument("find_cycle: curve is not of genus one");
    auto t = spanning_tree(c);
    if (t.non_tree_edges.size() != 1) throw std::invalid_argument("find_cycle: disconnected graph");
    const int f = t.non_tree_edges.front();
    const auto& fe = c.edges[f];
    Cycle cyc;
    if (fe.is_loop()) {
        cyc.edges = {f};
        cyc.signs = {1};
        cyc.vertices = {fe.tail};
        return cyc;
    }
    // path head -> tail through the tree, then f from tail to head
    auto ancestors = [&](int v) {
        std::vector<int> a{v};
        while (t.parent[v] >= 0) { v = t.parent[v]; a.push_back(v); }
        return a;
    };
    auto au = ancestors(fe.tail), av = ancestors(fe.head);
    int lca = -1;
    for (int x : au)
        if (std::find(av.begin(), av.end(), x) != av.end()) { lca = x; break; }
    // walk head -> lca
    cyc.edges.push_back(f);
    cyc.signs.push_back(1);
    cyc.vertices.push_back(fe.tail);
    int v = fe.head;
    while (v != lca) {
        cyc.vertices.push_back(v);
        int pe = t.parent_edge[v];
        cyc.edges.push_back(pe);
        cyc.signs.push_back(c.edges[pe].tail == v ? 1 : -1);
        v = t.parent[v];
    }
    // lca -> tail (reverse of tail -> lca)
    std::vector<int> down;
    int u = fe.tail;
    while (u != lca) { down.push_back(u); u = t.parent[u]; }
    cyc.vertices.push_back(lca);
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
        int x = *it;
        int pe = t.parent_edge[x];
        cyc.edges.push_back(pe);
        cyc.signs.push_back(c.edges[pe].head == x ? 1 : -1);
        if (x != fe.tail) cyc.vertices.push_back(x);
    }
    // vertices may list tail twice when lca == tail
    std::vector<int> uniq;
    for (int x : cyc.vertices)
        if (std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
    cyc.vertices = uniq;
    return cyc;
}

/// 2 - dim(affine span of the cycle image): 0 planar, 1 flat, 2 contracted.
inline int deficiency(const TropicalCurve& c) {
    if (c.genus() != 1) throw std::invalid_argument("deficiency requires a genus-one curve");
    auto cyc = find_cycle(c);
    std::vector<Vec2> dirs;
    for (int e : cyc.edges)
        if (!c.edges[e].contracted()) dirs.push_back(c.edges[e].vec);
    if (dirs.empty()) return 2;
    for (auto d : dirs)
        if (!parallel(d, dirs.front())) return 0;
    return 1;
}

/// Direction spanning the image of a flat cycle (primitive).
inline Vec2 flat_cycle_direction(const TropicalCurve& c, const Cycle& cyc) {
    for (int e : cyc.edges)
        if (!c.edges[e].contracted()) return primitive(c.edges[e].vec);
    throw std::invalid_argument("cycle is contracted");
}

/// Computes vertex positions from lengths, with vertex 0 placed at `root`.
/// Returns false if the cycle does not close.
inline bool place_vertices(TropicalCurve& c, const Point& root) {
    if (!c.has_lengths()) throw std::invalid_argument("place_vertices: missing lengths");
    auto t = spanning_tree(c);
    c.positions.assign(c.num_vertices, std::nullopt);
    c.positions[0] = root;
    for (int v : t.order) {
        if (v == 0) continue;
        const auto& e = c.edges[t.parent_edge[v]];
        Point step = scaled(e.vec, *e.length);
        c.positions[v] = e.head == v ? *c.positions[t.parent[v]] + step : *c.positions[t.parent[v]] - step;
    }
    return check_balancing(c).inconsistent_edges.empty();
}

// JSON ------------------------------------------------------------------------------------------

inline nlohmann::json to_json(const TropicalCurve& c) {
    using nlohmann::json;
    json verts = json::array();
    for (int v = 0; v < c.num_vertices; ++v) {
        json jv = {{"id", v}};
        if (c.positions[v]) jv["position"] = {to_string(c.positions[v]->x), to_string(c.positions[v]->y)};
        verts.push_back(jv);
    }
    json edges = json::array();
    for (const auto& e : c.edges) {
        Vec2 dir = primitive(e.vec);
        json je = {{"ends", {e.tail, e.head}}, {"weight", e.weight()}, {"direction", {dir.x, dir.y}}};
        if (e.length) je["length"] = to_string(*e.length);
        edges.push_back(je);
    }
    json ends = json::array();
    for (const auto& e : c.ends) {
        Vec2 dir = primitive(e.vec);
        ends.push_back({{"vertex", e.vertex}, {"weight", e.weight()}, {"direction", {dir.x, dir.y}}});
    }
    json marks = json::array();
    for (const auto& m : c.marks) marks.push_back({{"vertex", m.vertex}, {"label", m.label}});
    json out = {{"vertices", verts}, {"edges", edges}, {"ends", ends}, {"marks", marks}, {"genus", c.genus()}};
    if (c.j_length) out["j_length"] = to_string(*c.j_length);
    return out;
}

inline Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        Rational q(j.get<std::string>());
        q.canonicalize();
        return q;
    }
    if (j.is_number()) return Rational(j.get<double>());
    throw std::invalid_argument("expected a rational number");
}

inline Vec2 vec_from_json(const nlohmann::json& j) {
    return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()};
}

/// Parses the curve schema written by to_json. Throws on malformed input.
inline TropicalCurve curve_from_json(const nlohmann::json& j) {
    TropicalCurve c;
    const auto& verts = j.at("vertices");
    if (!verts.is_array() || verts.empty()) throw std::invalid_argument("curve has no vertices");
    for (std::size_t i = 0; i < verts.size(); ++i) {
        c.add_vertex();
        if (verts[i].contains("position")) {
            const auto& p = verts[i]["position"];
            c.positions[i] = Point{rational_from_json(p.at(0)), rational_from_json(p.at(1))};
        }
    }
    auto check_vertex = [&](int v) {
        if (v < 0 || v >= c.num_vertices) throw std::invalid_argument("vertex index out of range");
        return v;
    };
    for (const auto& je : j.value("edges", nlohmann::json::array())) {
        int t = check_vertex(je.at("ends").at(0).get<int>());
        int h = check_vertex(je.at("ends").at(1).get<int>());
        Vec2 dir = vec_from_json(je.at("direction"));
        std::int64_t w = je.value("weight", std::int64_t{1});
        int id = c.add_edge(t, h, dir * w);
        if (je.contains("length")) c.edges[id].length = rational_from_json(je["length"]);
    }
    for (const auto& je : j.value("ends", nlohmann::json::array())) {
        Vec2 dir = vec_from_json(je.at("direction"));
        c.add_end(check_vertex(je.at("vertex").get<int>()), dir * je.value("weight", std::int64_t{1}));
    }
    for (const auto& jm : j.value("marks", nlohmann::json::array()))
        c.add_mark(check_vertex(jm.at("vertex").get<int>()), jm.value("label", 0));
    if (j.contains("j_length")) c.j_length = rational_from_json(j["j_length"]);
    return c;
}

} // namespace tropicount

#endif // TROPICOUNT_CURVE_HPP
