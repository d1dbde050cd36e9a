#ifndef TROPICOUNT_MULTIPLICITY_HPP
#define TROPICOUNT_MULTIPLICITY_HPP

// Evaluation matrices, cell weights, well-spacedness and multiplicities of tropical curves.
//
// Column layout of every evaluation matrix: two root columns (position of vertex 0) followed by
// one column per bounded edge length. Marked points contribute two rows each, ordered by label.

#include "curve.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tropicount {

using Row = std::vector<Rational>;

inline std::vector<CurveMark> marks_by_label(const TropicalCurve& c) {
    auto m = c.marks;
    std::sort(m.begin(), m.end(), [](const CurveMark& a, const CurveMark& b) { return a.label < b.label; });
    return m;
}

/// Two rows per marked point: position of the mark as a linear function of root and edge lengths.
inline std::vector<Row> evaluation_rows(const TropicalCurve& c, const SpanningTree& t) {
    const std::size_t cols = 2 + c.edges.size();
    std::vector<Row> rows;
    for (const auto& m : marks_by_label(c)) {
        auto coeff = path_coefficients(c, t, m.vertex);
        Row rx(cols, Rational(0)), ry(cols, Rational(0));
        rx[0] = 1;
        ry[1] = 1;
        for (std::size_t e = 0; e < c.edges.size(); ++e) {
            if (coeff[e] == 0) continue;
            rx[2 + e] = coeff[e] * c.edges[e].vec.x;
            ry[2 + e] = coeff[e] * c.edges[e].vec.y;
        }
        rows.push_back(std::move(rx));
        rows.push_back(std::move(ry));
    }
    return rows;
}

/// Cycle-closing rows (x and y components of the sum of length * vector around the cycle).
inline std::pair<Row, Row> closure_rows(const TropicalCurve& c, const Cycle& cyc) {
    const std::size_t cols = 2 + c.edges.size();
    Row rx(cols, Rational(0)), ry(cols, Rational(0));
    for (std::size_t i = 0; i < cyc.edges.size(); ++i) {
        const auto& e = c.edges[cyc.edges[i]];
        rx[2 + cyc.edges[i]] += cyc.signs[i] * e.vec.x;
        ry[2 + cyc.edges[i]] += cyc.signs[i] * e.vec.y;
    }
    return {rx, ry};
}

/// How the j-row measures the cycle: abstract edge lengths (the coordinate on the moduli of
/// genus-one curves), or lengths scaled by edge weights, contracted edges counting once.
enum class CycleLength { abstract, weighted };

/// The j-row: total length of the cycle.
inline Row j_row(const TropicalCurve& c, const Cycle& cyc, CycleLength kind = CycleLength::abstract) {
    Row r(2 + c.edges.size(), Rational(0));
    for (int e : cyc.edges) {
        const auto& ed = c.edges[e];
        r[2 + e] = (kind == CycleLength::abstract || ed.contracted()) ? 1 : ed.weight();
    }
    return r;
}

inline Matrix stack(const std::vector<Row>& rows) {
    Matrix m;
    for (const auto& r : rows) m.append_row(r);
    return m;
}

inline void require_square(const std::vector<Row>& rows) {
    if (rows.empty() || rows.size() != rows.front().size())
        throw std::invalid_argument("non-rigid configuration");
}

/// Merges unmarked 2-valent vertices whose two edges continue each other, so that the
/// combinatorial type has no redundant length columns.
inline TropicalCurve smooth_bivalent(TropicalCurve c) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < c.num_vertices && !changed; ++v) {
            if (c.has_mark(v) || c.valence(v) != 2) continue;
            auto inc = c.incident(v);
            if (inc.size() == 1 && c.edges[inc[0]].is_loop()) continue;
            std::vector<int> ends_at;
            for (int i = 0; i < static_cast<int>(c.ends.size()); ++i)
                if (c.ends[i].vertex == v) ends_at.push_back(i);
            TropicalCurve out;
            if (inc.size() == 2) {
                // orient both through v: a = edge into v, b = edge out of v
                auto into = [&](int ei) { return c.edges[ei].head == v ? c.edges[ei].vec : -c.edges[ei].vec; };
                auto other = [&](int ei) { return c.edges[ei].head == v ? c.edges[ei].tail : c.edges[ei].head; };
                int a = inc[0], b = inc[1];
                if (!(into(a) == -into(b))) continue;
                int from = other(a), to = other(b);
                Vec2 vec = into(a);
                std::optional<Rational> len;
                if (c.edges[a].length && c.edges[b].length) len = *c.edges[a].length + *c.edges[b].length;
                // rebuild without v
                std::vector<int> remap(c.num_vertices, -1);
                for (int u = 0; u < c.num_vertices; ++u)
                    if (u != v) {
                        remap[u] = out.add_vertex();
                        out.positions[remap[u]] = c.positions[u];
                    }
                for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
                    if (i == a || i == b) continue;
                    int id = out.add_edge(remap[c.edges[i].tail], remap[c.edges[i].head], c.edges[i].vec);
                    out.edges[id].length = c.edges[i].length;
                }
                int id = out.add_edge(remap[from], remap[to], vec);
                out.edges[id].length = len;
                for (const auto& e : c.ends) out.add_end(remap[e.vertex], e.vec);
                for (const auto& m : c.marks) out.add_mark(remap[m.vertex], m.label);
            } else if (inc.size() == 1 && ends_at.size() == 1) {
                int a = inc[0];
                Vec2 into = c.edges[a].head == v ? c.edges[a].vec : -c.edges[a].vec;
                if (!(into == c.ends[ends_at[0]].vec)) continue;
                int from = c.edges[a].head == v ? c.edges[a].tail : c.edges[a].head;
                std::vector<int> remap(c.num_vertices, -1);
                for (int u = 0; u < c.num_vertices; ++u)
                    if (u != v) {
                        remap[u] = out.add_vertex();
                        out.positions[remap[u]] = c.positions[u];
                    }
                for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
                    if (i == a) continue;
                    int id = out.add_edge(remap[c.edges[i].tail], remap[c.edges[i].head], c.edges[i].vec);
                    out.edges[id].length = c.edges[i].length;
                }
                for (int i = 0; i < static_cast<int>(c.ends.size()); ++i)
                    out.add_end(i == ends_at[0] ? remap[from] : remap[c.ends[i].vertex], c.ends[i].vec);
                for (const auto& m : c.marks) out.add_mark(remap[m.vertex], m.label);
            } else {
                continue;
            }
            out.j_length = c.j_length;
            c = std::move(out);
            changed = true;
        }
    }
    return c;
}

// Genus 0 ---------------------------------------------------------------------------------------

/// |det| of the evaluation map of a rigid rational curve (rows: marked points; columns: root
/// position and bounded edge lengths).
inline Int multiplicity_genus0(const TropicalCurve& c) {
    if (c.genus() != 0) throw std::invalid_argument("multiplicity_genus0 requires a rational curve");
    auto t = spanning_tree(c);
    auto rows = evaluation_rows(c, t);
    if (rows.empty() && c.edges.empty()) throw std::invalid_argument("non-rigid configuration");
    require_square(rows);
    Rational d = determinant(stack(rows));
    return abs(Int(d.get_num()));
}

/// Product over unmarked vertices of |det| of two outgoing vectors (Mikhalkin multiplicity).
inline Int vertex_product_multiplicity(const TropicalCurve& c) {
    Int m = 1;
    for (int v = 0; v < c.num_vertices; ++v) {
        if (c.has_mark(v)) continue;
        auto out = c.outgoing(v);
        if (out.size() != 3) throw std::invalid_argument("vertex_product_multiplicity: non-trivalent vertex");
        m *= static_cast<long>(iabs(cross(out[0], out[1])));
    }
    return m;
}

// Well-spacedness ------------------------------------------------------------------------------

/// A linear form in the edge lengths: sum coeff[e] * length[e].
struct LengthForm {
    std::map<int, std::int64_t> coeff;

    Rational evaluate(const TropicalCurve& c) const {
        Rational s = 0;
        for (auto [e, k] : coeff) s += Rational(k) * *c.edges[e].length;
        return s;
    }
    Row as_row(std::size_t num_edges) const {
        Row r(2 + num_edges, Rational(0));
        for (auto [e, k] : coeff) r[2 + e] = k;
        return r;
    }
};

/// Condition coming from one affine line containing the cycle image.
struct LineCondition {
    enum class Kind { always, never, runs } kind = Kind::always;
    Vec2 direction;
    std::vector<LengthForm> departures;  // lattice distances to points where the curve leaves the line
};

namespace detail {

/// Walks from the vertices in `start` along edges parallel to d (not in `skip`), collecting the
/// lattice distance to every vertex where some incident edge or end leaves the line.
/// Runs ending in an unbounded end contribute nothing.
inline std::vector<LengthForm> departure_runs(const TropicalCurve& c, const std::vector<int>& start,
                                              const std::vector<int>& skip_edges, Vec2 d) {
    std::vector<LengthForm> out;
    struct State { int vertex; int via; LengthForm dist; };
    std::vector<State> stack;
    std::vector<char> visited(c.num_vertices, 0);
    for (int s : start) visited[s] = 1;
    auto is_skip = [&](int e) { return std::find(skip_edges.begin(), skip_edges.end(), e) != skip_edges.end(); };
    for (int s : start)
        for (int e : c.incident(s)) {
            if (is_skip(e) || c.edges[e].is_loop()) continue;
            const auto& ed = c.edges[e];
            if (ed.contracted() || !parallel(ed.vec, d)) continue;
            int o = ed.tail == s ? ed.head : ed.tail;
            if (visited[o]) continue;
            LengthForm f;
            f.coeff[e] = ed.weight();
            stack.push_back({o, e, f});
        }
    while (!stack.empty()) {
        auto st = stack.back();
        stack.pop_back();
        int v = st.vertex;
        if (visited[v]) continue;
        visited[v] = 1;
        bool leaves = false;
        for (const auto& e : c.ends)
            if (e.vertex == v && !parallel(e.vec, d)) leaves = true;
        for (int e : c.incident(v)) {
            if (e == st.via) continue;
            const auto& ed = c.edges[e];
            if (ed.is_loop() || ed.contracted() || !parallel(ed.vec, d)) leaves = true;
        }
        if (leaves) {
            out.push_back(st.dist);
            continue;
        }
        for (int e : c.incident(v)) {
            if (e == st.via) continue;
            const auto& ed = c.edges[e];
            int o = ed.tail == v ? ed.head : ed.tail;
            if (visited[o]) continue;
            LengthForm f = st.dist;
            f.coeff[e] += ed.weight();
            stack.push_back({o, e, f});
        }
    }
    return out;
}

} // namespace detail

/// Line conditions for the well-spacedness of a genus-1 curve. Empty for planar cycles.
///
/// Flat cycle: one line; distances are measured to the points where the curve leaves it.
/// Contracted loop at p: every line through p spanned by an edge at p. If two or more edges at p
/// leave the line, distance 0 is attained twice; exactly one leaving edge violates the condition;
/// if none leave, distances are measured along the runs as for a flat cycle.
inline std::vector<LineCondition> well_spacedness_conditions(const TropicalCurve& c) {
    std::vector<LineCondition> out;
    const int def = deficiency(c);
    if (def == 0) return out;
    auto cyc = find_cycle(c);
    if (def == 1) {
        LineCondition lc;
        lc.kind = LineCondition::Kind::runs;
        lc.direction = flat_cycle_direction(c, cyc);
        lc.departures = detail::departure_runs(c, cyc.vertices, cyc.edges, lc.direction);
        out.push_back(lc);
        return out;
    }
    // deficiency 2: the cycle is contracted; the image of the whole cycle is one point
    auto outgoing = [&] {
        std::vector<Vec2> v;
        for (int x : cyc.vertices)
            for (auto w : c.outgoing(x))
                if (!w.is_zero()) v.push_back(w);
        return v;
    }();
    // edges among the cycle vertices that are contracted belong to the cycle's image as well
    std::vector<Vec2> dirs;
    for (auto w : outgoing) {
        Vec2 p = primitive(w);
        if (p.x < 0 || (p.x == 0 && p.y < 0)) p = -p;
        if (std::find(dirs.begin(), dirs.end(), p) == dirs.end()) dirs.push_back(p);
    }
    for (auto d : dirs) {
        LineCondition lc;
        lc.direction = d;
        int leaving = 0;
        for (auto w : outgoing)
            if (!parallel(w, d)) ++leaving;
        if (leaving >= 2) {
            lc.kind = LineCondition::Kind::always;
        } else if (leaving == 1) {
            lc.kind = LineCondition::Kind::never;
        } else {
            lc.kind = LineCondition::Kind::runs;
            lc.departures = detail::departure_runs(c, cyc.vertices, cyc.edges, d);
        }
        out.push_back(lc);
    }
    return out;
}

/// True when the minimum of the multiset occurs at least twice.
inline bool minimum_attained_twice(std::vector<Rational> w) {
    if (w.size() < 2) return false;
    std::sort(w.begin(), w.end());
    return w[0] == w[1];
}

/// Well-spacedness predicate. Planar cycles are never superabundant.
inline bool is_well_spaced(const TropicalCurve& c) {
    if (c.genus() != 1) throw std::invalid_argument("is_well_spaced requires a genus-one curve");
    for (const auto& lc : well_spacedness_conditions(c)) {
        if (lc.kind == LineCondition::Kind::never) return false;
        if (lc.kind == LineCondition::Kind::always) continue;
        if (!c.has_lengths()) throw std::invalid_argument("is_well_spaced: lengths required");
        std::vector<Rational> w;
        for (const auto& f : lc.departures) w.push_back(f.evaluate(c));
        if (!minimum_attained_twice(w)) return false;
    }
    return true;
}

// Cell weights ---------------------------------------------------------------------------------

struct FlatCycleData {
    std::int64_t upper_weight = 0;  // w'
    std::int64_t lower_weight = 0;  // w''
    bool marked = false;
    int left_vertex = -1;
    int right_vertex = -1;
    std::vector<int> upper_edges;
    std::vector<int> lower_edges;
};

/// Splits a flat cycle into its two arcs between the vertices where the rest of the curve attaches.
inline FlatCycleData flat_cycle_data(const TropicalCurve& c) {
    auto cyc = find_cycle(c);
    FlatCycleData f;
    std::vector<int> branch;
    for (int v : cyc.vertices) {
        bool attached = false;
        for (int e : c.incident(v))
            if (!cyc.contains_edge(e)) attached = true;
        for (const auto& end : c.ends)
            if (end.vertex == v) attached = true;
        if (attached) branch.push_back(v);
        if (c.has_mark(v)) f.marked = true;
    }
    if (branch.size() != 2) throw std::invalid_argument("unsupported flat cycle shape");
    // rotate the cycle so it starts at branch[0]
    const std::size_t n = cyc.edges.size();
    std::size_t start = 0;
    while (c.edges[cyc.edges[start]].tail != branch[0] && c.edges[cyc.edges[start]].head != branch[0]) ++start;
    // walk from branch[0]
    int v = branch[0];
    std::vector<int>* arc = &f.upper_edges;
    std::size_t idx = start;
    // decide traversal direction: cycle order edges[i] goes from vertex_i
    // find the cycle edge leaving branch[0] in cycle order
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = (idx + k) % n;
        int e = cyc.edges[i];
        int from = cyc.signs[i] > 0 ? c.edges[e].tail : c.edges[e].head;
        if (from == branch[0]) { idx = i; break; }
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = (idx + k) % n;
        int e = cyc.edges[i];
        arc->push_back(e);
        int to = cyc.signs[i] > 0 ? c.edges[e].head : c.edges[e].tail;
        v = to;
        if (v == branch[1]) arc = &f.lower_edges;
    }
    auto arc_weight = [&](const std::vector<int>& edges) {
        std::int64_t w = -1;
        for (int e : edges) {
            if (c.edges[e].contracted()) continue;
            if (w < 0) w = c.edges[e].weight();
            else if (w != c.edges[e].weight()) throw std::invalid_argument("unsupported flat cycle shape");
        }
        return w;
    };
    f.upper_weight = arc_weight(f.upper_edges);
    f.lower_weight = arc_weight(f.lower_edges);
    f.left_vertex = branch[0];
    f.right_vertex = branch[1];
    return f;
}

/// Interior lattice points of the triangle dual to a trivalent vertex with outgoing vectors u,v,w.
inline std::int64_t dual_triangle_interior(Vec2 u, Vec2 v, Vec2 w) {
    const std::int64_t area2 = iabs(cross(u, v));
    const std::int64_t b = lattice_length(u) + lattice_length(v) + lattice_length(w);
    return (area2 - b + 2) / 2;
}

/// Weight of the maximal cell containing c.
inline Rational cell_weight(const TropicalCurve& c) {
    const int def = deficiency(c);
    auto cyc = find_cycle(c);
    if (def == 0) {
        auto [rx, ry] = closure_rows(c, cyc);
        return Rational(image_index({rx, ry}));
    }
    if (def == 1) {
        std::size_t branches = 0;
        for (int v : cyc.vertices) {
            bool attached = false;
            for (int e : c.incident(v))
                if (!cyc.contains_edge(e)) attached = true;
            for (const auto& end : c.ends)
                if (end.vertex == v) attached = true;
            if (attached) ++branches;
        }
        if (branches != 2) {
            // several attachment points: index of the closure map along the cycle direction
            std::int64_t g = 0;
            for (int e : cyc.edges)
                if (!c.edges[e].contracted()) g = std::gcd(g, c.edges[e].weight());
            return Rational(g);
        }
        auto f = flat_cycle_data(c);
        const std::int64_t g = std::gcd(f.upper_weight, f.lower_weight);
        if (f.upper_weight != f.lower_weight || f.marked) return Rational(g);
        Rational half(g, 2);
        half.canonicalize();
        return half;
    }
    // contracted loop
    if (cyc.edges.size() != 1) return 0;
    const int p = cyc.vertices.front();
    if (c.has_mark(p)) return 0;
    auto out = c.outgoing(p);
    for (auto w : out)
        if (w.is_zero()) return 0;
    if (out.size() == 3 && !parallel(out[0], out[1]) && !parallel(out[1], out[2]) && !parallel(out[0], out[2]))
        return Rational(dual_triangle_interior(out[0], out[1], out[2]));
    if (out.size() == 2 && out[0] == -out[1]) {
        Rational r(lattice_length(out[0]) - 1, 2);
        r.canonicalize();
        return r;
    }
    return 0;
}

/// Cell weight from flat-cycle arc weights (deficiency one).
inline Rational flat_cycle_weight(std::int64_t w1, std::int64_t w2, bool marked_point_on_cycle) {
    const auto g = std::gcd(w1, w2);
    if (w1 != w2 || marked_point_on_cycle) return Rational(g);
    Rational r(g, 2);
    r.canonicalize();
    return r;
}

// Genus-1 multiplicities -----------------------------------------------------------------------

/// Which pair of departure distances is tied in the well-spaced cell. Needed only for
/// superabundant types without lengths that have more than two departure points.
struct WellSpacedTie {
    std::size_t first = 0;
    std::size_t second = 1;
};

struct CellSystem {
    std::vector<Row> rows;      // evaluation rows, j row, constraint rows
    std::vector<Row> constraints;
    Rational weight;
    int deficiency = 0;
};

/// Full linear system of the cell: evaluation, j, cycle closure and well-spacedness rows.
inline CellSystem cell_system(const TropicalCurve& c, std::optional<WellSpacedTie> tie = std::nullopt,
                              CycleLength kind = CycleLength::abstract) {
    if (c.genus() != 1) throw std::invalid_argument("cell_system requires a genus-one curve");
    CellSystem s;
    s.deficiency = deficiency(c);
    s.weight = cell_weight(c);
    auto t = spanning_tree(c);
    auto cyc = find_cycle(c);
    s.rows = evaluation_rows(c, t);
    s.rows.push_back(j_row(c, cyc, kind));
    auto [rx, ry] = closure_rows(c, cyc);
    if (s.deficiency == 0) {
        s.constraints = {rx, ry};
    } else if (s.deficiency == 1) {
        Vec2 d = flat_cycle_direction(c, cyc);
        s.constraints.push_back(d.x != 0 ? rx : ry);
    }
    for (const auto& lc : well_spacedness_conditions(c)) {
        if (lc.kind != LineCondition::Kind::runs) continue;
        if (lc.departures.size() < 2) throw std::invalid_argument("type is not well-spaced");
        WellSpacedTie tp;
        if (tie) {
            tp = *tie;
        } else if (c.has_lengths()) {
            std::vector<std::pair<Rational, std::size_t>> w;
            for (std::size_t i = 0; i < lc.departures.size(); ++i) w.push_back({lc.departures[i].evaluate(c), i});
            std::sort(w.begin(), w.end());
            tp = {w[0].second, w[1].second};
        } else if (lc.departures.size() != 2) {
            throw std::invalid_argument("ambiguous well-spaced cell");
        }
        Row r = lc.departures[tp.first].as_row(c.edges.size());
        Row r2 = lc.departures[tp.second].as_row(c.edges.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= r2[k];
        s.constraints.push_back(std::move(r));
    }
    for (const auto& r : s.constraints) s.rows.push_back(r);
    return s;
}

/// weight * |det of J restricted to the lattice of the cell|, computed as
/// weight * |det(full system)| / index(constraint rows).
inline Rational multiplicity_raw(const TropicalCurve& c, std::optional<WellSpacedTie> tie = std::nullopt,
                                 CycleLength kind = CycleLength::abstract) {
    auto s = cell_system(c, tie, kind);
    if (s.weight == 0) return 0;
    require_square(s.rows);
    Rational d = determinant(stack(s.rows));
    Int idx = image_index(s.constraints);
    if (idx == 0) return 0;
    Rational m = s.weight * abs(d) / Rational(idx);
    m.canonicalize();
    return m;
}

/// Deficiency-0 multiplicity: |det| of the square system (evaluation, j, closure rows).
inline Int multiplicity_genus1_def0(const TropicalCurve& c) {
    if (c.genus() != 1 || deficiency(c) != 0) throw std::invalid_argument("requires a deficiency-0 genus-one curve");
    auto t = spanning_tree(c);
    auto cyc = find_cycle(c);
    auto rows = evaluation_rows(c, t);
    rows.push_back(j_row(c, cyc));
    auto [rx, ry] = closure_rows(c, cyc);
    rows.push_back(rx);
    rows.push_back(ry);
    require_square(rows);
    return abs(Int(determinant(stack(rows)).get_num()));
}

/// Flat-cycle formula: 2(w'+w'')M if w' != w'', else (w'+w'')M.
inline Int flat_cycle_formula(std::int64_t w1, std::int64_t w2, const Int& rational_mult) {
    Int f = (w1 != w2 ? 2 : 1) * (w1 + w2);
    return f * rational_mult;
}

/// Rational curve obtained by replacing a flat cycle by a single edge of weight w' + w''.
inline TropicalCurve collapse_flat_cycle(const TropicalCurve& c) {
    auto f = flat_cycle_data(c);
    auto cyc = find_cycle(c);
    TropicalCurve out;
    for (int v = 0; v < c.num_vertices; ++v) {
        out.add_vertex();
        out.positions[v] = c.positions[v];
    }
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) {
        if (cyc.contains_edge(i)) continue;
        int id = out.add_edge(c.edges[i].tail, c.edges[i].head, c.edges[i].vec);
        out.edges[id].length = c.edges[i].length;
    }
    // single edge from the left branch vertex to the right one, carrying the sum of the arcs
    Vec2 vec;
    std::optional<Rational> len;
    {
        auto chain = [&](const std::vector<int>& arc) {
            Vec2 s;
            int v = f.left_vertex;
            for (int e : arc) {
                const auto& ed = c.edges[e];
                if (ed.tail == v) { s += primitive(ed.vec); v = ed.head; }
                else { s -= primitive(ed.vec); v = ed.tail; }
            }
            return primitive(s);
        };
        Vec2 d = chain(f.upper_edges);
        vec = d * (f.upper_weight + f.lower_weight);
        if (c.positions[f.left_vertex] && c.positions[f.right_vertex]) {
            Point diff = *c.positions[f.right_vertex] - *c.positions[f.left_vertex];
            len = vec.x != 0 ? diff.x / Rational(vec.x) : diff.y / Rational(vec.y);
        }
    }
    int id = out.add_edge(f.left_vertex, f.right_vertex, vec);
    out.edges[id].length = len;
    for (const auto& e : c.ends) out.add_end(e.vertex, e.vec);
    for (const auto& m : c.marks) out.add_mark(m.vertex, m.label);
    // cycle vertices other than the branch vertices would carry marks; those are rejected earlier
    return smooth_bivalent(out);
}

/// Deficiency-1 multiplicity via the rational curve with the cycle flattened.
inline Int multiplicity_flat_cycle(const TropicalCurve& c) {
    if (c.genus() != 1 || deficiency(c) != 1) throw std::invalid_argument("requires a deficiency-1 curve");
    auto f = flat_cycle_data(c);
    if (f.marked) throw std::invalid_argument("unsupported: marked cycle");
    return flat_cycle_formula(f.upper_weight, f.lower_weight, multiplicity_genus0(collapse_flat_cycle(c)));
}

/// Contracted-loop formula: m * Mult(rational curve).
inline Int contracted_loop_formula(std::int64_t interior_points, const Int& rational_mult) {
    return Int(static_cast<long>(interior_points)) * rational_mult;
}

/// Deficiency-2 multiplicity: m * Mult(curve without the loop), m = interior lattice points of the
/// dual triangle (5-valent) or dual edge (4-valent). Weight-zero types give 0.
inline Int multiplicity_contracted_loop(const TropicalCurve& c) {
    if (c.genus() != 1 || deficiency(c) != 2) throw std::invalid_argument("requires a deficiency-2 curve");
    if (cell_weight(c) == 0) return 0;
    auto cyc = find_cycle(c);
    const int p = cyc.vertices.front();
    auto out = c.outgoing(p);
    std::int64_t m = out.size() == 3 ? dual_triangle_interior(out[0], out[1], out[2]) : lattice_length(out[0]) - 1;
    TropicalCurve g = c;
    g.edges.erase(g.edges.begin() + cyc.edges.front());
    g.j_length.reset();
    return contracted_loop_formula(m, multiplicity_genus0(smooth_bivalent(g)));
}

} // namespace tropicount

#endif // TROPICOUNT_MULTIPLICITY_HPP
