#ifndef TROPICOUNT_STRINGS_HPP
#define TROPICOUNT_STRINGS_HPP

// Strings (mark-free paths between two ends, or a mark-free cycle) and the decomposition of a
// genus-one curve whose string can be moved to the right.

#include "curve.hpp"
#include "multiplicity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace tropicount {

struct CurveString {
    bool closed = false;
    int first_end = -1;        // indices into c.ends; -1 for a closed string
    int last_end = -1;
    std::vector<int> edges;     // bounded edges in order
    std::vector<int> vertices;  // vertices in order
};

namespace detail {

inline void string_paths(const TropicalCurve& c, int start_end, int v, std::vector<char>& seen, std::vector<int>& edges,
                         std::vector<int>& verts, std::vector<CurveString>& out) {
    for (int i = 0; i < static_cast<int>(c.ends.size()); ++i)
        if (i > start_end && c.ends[i].vertex == v) out.push_back({false, start_end, i, edges, verts});
    for (int e : c.incident(v)) {
        const auto& ed = c.edges[e];
        if (ed.is_loop()) continue;
        const int o = ed.tail == v ? ed.head : ed.tail;
        if (seen[o] || c.has_mark(o)) continue;
        seen[o] = 1;
        edges.push_back(e);
        verts.push_back(o);
        string_paths(c, start_end, o, seen, edges, verts, out);
        verts.pop_back();
        edges.pop_back();
        seen[o] = 0;
    }
}

} // namespace detail

/// Every string of c. A string avoids all vertices carrying a marked point.
inline std::vector<CurveString> find_strings(const TropicalCurve& c) {
    std::vector<CurveString> out;
    for (int i = 0; i < static_cast<int>(c.ends.size()); ++i) {
        const int v = c.ends[i].vertex;
        if (c.has_mark(v)) continue;
        std::vector<char> seen(c.num_vertices, 0);
        seen[v] = 1;
        std::vector<int> edges, verts{v};
        detail::string_paths(c, i, v, seen, edges, verts, out);
    }
    if (c.genus() == 1) {
        auto cyc = find_cycle(c);
        if (std::none_of(cyc.vertices.begin(), cyc.vertices.end(), [&](int v) { return c.has_mark(v); }))
            out.push_back({true, -1, -1, cyc.edges, cyc.vertices});
    }
    return out;
}

struct StringComponent {
    TropicalCurve curve;
    std::int64_t a = 0, b = 0;
    std::vector<std::int64_t> weights;  // weights of the horizontal edges joining it to the string
    Int multiplicity = 0;               // rational multiplicity (flat cycle collapsed for the first component)
};

struct StringDecomposition {
    int kind = 2;  // 2: the cycle runs through the string; 3: a flat cycle hangs off it
    std::int64_t n = 0;
    std::int64_t w0_upper = 0, w0_lower = 0;  // w0' >= w0''
    CurveString string;
    std::vector<StringComponent> components;  // components[0] is the one carrying the cycle
};

namespace detail {

inline std::int64_t end_weight_towards(const TropicalCurve& c, Vec2 dir) {
    std::int64_t s = 0;
    for (const auto& e : c.ends)
        if (primitive(e.vec) == dir) s += e.weight();
    return s;
}

/// Splits c along the string s, or returns false if s is not of the movable shape.
inline bool try_decompose(const TropicalCurve& c, const CurveString& s, StringDecomposition& d) {
    if (s.closed) return false;
    const Vec2 e1 = c.ends[s.first_end].vec, e2 = c.ends[s.last_end].vec;
    const Vec2 down{0, -1};
    if (!(e1 == down) && !(e2 == down)) return false;
    const Vec2 top = e1 == down ? e2 : e1;
    if (top.y != 1 || top.x < 0) return false;
    const std::int64_t n = top.x;
    std::vector<char> on_string(c.num_vertices, 0);
    for (int v : s.vertices) on_string[v] = 1;
    std::vector<char> string_edge(c.edges.size(), 0);
    for (int e : s.edges) string_edge[e] = 1;
    // ends at string vertices are only the two string ends
    for (int i = 0; i < static_cast<int>(c.ends.size()); ++i)
        if (on_string[c.ends[i].vertex] && i != s.first_end && i != s.last_end) return false;
    // connecting edges: horizontal, leaving the string to the left
    std::vector<std::pair<int, int>> links;  // (edge, component vertex)
    for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
        if (string_edge[e]) continue;
        const auto& ed = c.edges[e];
        const bool t = on_string[ed.tail], h = on_string[ed.head];
        if (t && h) return false;
        if (!t && !h) continue;
        const Vec2 out = t ? ed.vec : -ed.vec;
        if (out.y != 0 || out.x >= 0) return false;
        links.push_back({e, t ? ed.head : ed.tail});
    }
    // components of the rest
    std::vector<int> comp(c.num_vertices, -1);
    int ncomp = 0;
    for (int v = 0; v < c.num_vertices; ++v) {
        if (on_string[v] || comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e : c.incident(u)) {
                const auto& ed = c.edges[e];
                int o = ed.tail == u ? ed.head : ed.tail;
                if (on_string[o] || comp[o] >= 0) continue;
                comp[o] = ncomp;
                stack.push_back(o);
            }
        }
        ++ncomp;
    }
    std::vector<std::vector<std::pair<int, int>>> by_comp(ncomp);
    for (auto l : links) by_comp[comp[l.second]].push_back(l);
    // genus of each component
    std::vector<int> nv(ncomp, 0), ne(ncomp, 0);
    for (int v = 0; v < c.num_vertices; ++v)
        if (comp[v] >= 0) ++nv[comp[v]];
    for (const auto& ed : c.edges)
        if (comp[ed.tail] >= 0 && comp[ed.tail] == comp[ed.head]) ++ne[comp[ed.tail]];
    int zero = -1;
    int kind = 0;
    for (int k = 0; k < ncomp; ++k) {
        const int g = ne[k] - nv[k] + 1;
        if (by_comp[k].size() == 2 && g == 0) {
            if (zero >= 0) return false;
            zero = k;
            kind = 2;
        } else if (by_comp[k].size() == 1 && g == 1) {
            if (zero >= 0) return false;
            zero = k;
            kind = 3;
        } else if (!(by_comp[k].size() == 1 && g == 0)) {
            return false;
        }
    }
    if (zero < 0) return false;

    auto build = [&](int k) {
        StringComponent sc;
        std::vector<int> remap(c.num_vertices, -1);
        for (int v = 0; v < c.num_vertices; ++v)
            if (comp[v] == k) {
                remap[v] = sc.curve.add_vertex();
                sc.curve.positions[remap[v]] = c.positions[v];
            }
        for (const auto& ed : c.edges)
            if (comp[ed.tail] == k && comp[ed.head] == k) {
                int id = sc.curve.add_edge(remap[ed.tail], remap[ed.head], ed.vec);
                sc.curve.edges[id].length = ed.length;
            }
        for (const auto& e : c.ends)
            if (comp[e.vertex] == k) sc.curve.add_end(remap[e.vertex], e.vec);
        for (auto [e, u] : by_comp[k]) {
            const auto& ed = c.edges[e];
            const Vec2 towards = ed.tail == u ? ed.vec : -ed.vec;
            sc.curve.add_end(remap[u], towards);
            sc.weights.push_back(towards.x);
        }
        for (const auto& m : c.marks)
            if (comp[m.vertex] == k) sc.curve.add_mark(remap[m.vertex], m.label);
        std::sort(sc.weights.rbegin(), sc.weights.rend());
        sc.a = end_weight_towards(sc.curve, {0, -1});
        sc.b = end_weight_towards(sc.curve, {1, 0});
        return sc;
    };

    StringDecomposition out;
    out.kind = kind;
    out.n = n;
    out.string = s;
    out.components.push_back(build(zero));
    for (int k = 0; k < ncomp; ++k)
        if (k != zero) out.components.push_back(build(k));

    auto& z = out.components.front();
    if (kind == 2) {
        out.w0_upper = z.weights[0];
        out.w0_lower = z.weights[1];
        z.multiplicity = multiplicity_genus0(smooth_bivalent(z.curve));
    } else {
        if (deficiency(z.curve) != 1) return false;
        auto f = flat_cycle_data(z.curve);
        out.w0_upper = std::max(f.upper_weight, f.lower_weight);
        out.w0_lower = std::min(f.upper_weight, f.lower_weight);
        z.multiplicity = multiplicity_genus0(collapse_flat_cycle(z.curve));
    }
    for (std::size_t i = 1; i < out.components.size(); ++i)
        out.components[i].multiplicity = multiplicity_genus0(smooth_bivalent(out.components[i].curve));

    std::int64_t sa = 0, sb = 0, sw = 0;
    for (const auto& sc : out.components) {
        sa += sc.a;
        sb += sc.b;
        for (auto w : sc.weights) sw += w;
    }
    const std::int64_t a = end_weight_towards(c, {0, -1}), b = end_weight_towards(c, {1, 0});
    if (sa != a - 1 || sb != b + n || sw != n) throw std::logic_error("string decomposition: bidegrees do not add up");
    d = std::move(out);
    return true;
}

} // namespace detail

/// Removes the string of a curve whose j-invariant is unbounded along its cell.
inline StringDecomposition decompose_string_curve(const TropicalCurve& c) {
    if (c.genus() == 1) {
        for (const auto& s : find_strings(c)) {
            StringDecomposition d;
            if (detail::try_decompose(c, s, d)) return d;
        }
    }
    throw std::invalid_argument("not a string-type curve");
}

/// Multiplicity from the components: 2 w0' w0'' M_0 prod w_i M_i for a cycle through the string;
/// for a flat cycle, eps * prod_{i>=0} w_i M_i with w_0 = w0' + w0'' and eps = 2 unless w0' = w0''.
inline Int multiplicity_string(const StringDecomposition& d) {
    Int m = 1;
    if (d.kind == 2) m = Int(2 * d.w0_upper * d.w0_lower);
    else m = Int(d.w0_upper != d.w0_lower ? 2 : 1);
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        m *= d.components[i].multiplicity;
        if (i > 0 || d.kind == 3) m *= Int(d.components[i].weights.front());
    }
    return m;
}

} // namespace tropicount

#endif // TROPICOUNT_STRINGS_HPP
