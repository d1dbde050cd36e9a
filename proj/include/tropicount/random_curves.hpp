#ifndef TROPICOUNT_RANDOM_CURVES_HPP
#define TROPICOUNT_RANDOM_CURVES_HPP

// Random rigid tropical curves with lengths, for property checks of the multiplicity rules.

#include "curve.hpp"
#include "multiplicity.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace tropicount {

namespace detail {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Puts a marked point inside bounded edge `pick`, or on end `pick - edges` if larger.
inline void add_mark_on(TropicalCurve& c, std::mt19937_64& rng, std::size_t pick, int label) {
    const int p = c.add_vertex();
    if (pick < c.edges.size()) {
        auto& e = c.edges[pick];
        const Rational total = *e.length;
        const Rational t = total * Rational(uniform(rng, 1, 4), 5);
        const int head = e.head;
        const Vec2 vec = e.vec;
        e.head = p;
        e.length = t;
        const int id = c.add_edge(p, head, vec);
        c.edges[id].length = total - t;
    } else {
        auto& end = c.ends[pick - c.edges.size()];
        const int v = end.vertex;
        const Vec2 vec = end.vec;
        end.vertex = p;
        const int id = c.add_edge(v, p, vec);
        c.edges[id].length = Rational(uniform(rng, 1, 3));
    }
    c.add_mark(p, label);
}

/// Chooses `count` distinct edges or ends of a tree so that cutting them leaves exactly one
/// unmarked end in every piece (the rigid configurations). The first `forced` ends are always cut.
inline std::optional<std::vector<std::size_t>> rigid_mark_slots(const TropicalCurve& c, std::mt19937_64& rng,
                                                                std::size_t count, std::size_t forced = 0) {
    const std::size_t E = c.edges.size(), n = E + c.ends.size();
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < forced; ++i) slots.push_back(E + i);
    for (std::size_t i = 0; i < n; ++i)
        if (i < E || i >= E + forced) slots.push_back(i);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::shuffle(slots.begin() + static_cast<std::ptrdiff_t>(forced), slots.end(), rng);
        std::vector<char> cut(n, 0);
        for (std::size_t i = 0; i < count; ++i) cut[slots[i]] = 1;
        std::vector<int> comp(static_cast<std::size_t>(c.num_vertices), -1);
        int pieces = 0;
        for (int v = 0; v < c.num_vertices; ++v) {
            if (comp[static_cast<std::size_t>(v)] >= 0) continue;
            std::vector<int> stack{v};
            comp[static_cast<std::size_t>(v)] = pieces;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (std::size_t e = 0; e < E; ++e) {
                    if (cut[e]) continue;
                    const auto& ed = c.edges[e];
                    int o = ed.tail == u ? ed.head : ed.head == u ? ed.tail : -1;
                    if (o < 0 || comp[static_cast<std::size_t>(o)] >= 0) continue;
                    comp[static_cast<std::size_t>(o)] = pieces;
                    stack.push_back(o);
                }
            }
            ++pieces;
        }
        std::vector<int> free_ends(static_cast<std::size_t>(pieces), 0);
        for (std::size_t i = 0; i < c.ends.size(); ++i)
            if (!cut[E + i]) ++free_ends[static_cast<std::size_t>(comp[static_cast<std::size_t>(c.ends[i].vertex)])];
        if (std::all_of(free_ends.begin(), free_ends.end(), [](int k) { return k == 1; }))
            return std::vector<std::size_t>(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(count));
    }
    return std::nullopt;
}

} // namespace detail

/// Random rational curve whose first ends are `fixed`, followed by `extra` random ends and one
/// closing end. Marks (labels from `first_label`) make it rigid; with `missing` > 0 the marks that
/// would sit on the first `missing` ends are left out. nullopt if the draw is degenerate.
inline std::optional<TropicalCurve> random_rational_curve(std::mt19937_64& rng, const std::vector<Vec2>& fixed, int extra,
                                                          int first_label = 0, int missing = 0) {
    std::vector<Vec2> ends = fixed;
    Vec2 sum;
    for (auto v : fixed) sum += v;
    for (int i = 0; i < extra; ++i) {
        Vec2 v{detail::uniform(rng, -2, 2), detail::uniform(rng, -2, 2)};
        if (v.is_zero()) return std::nullopt;
        ends.push_back(v);
        sum += v;
    }
    if (sum.is_zero()) return std::nullopt;
    ends.push_back(-sum);
    if (ends.size() < 3) return std::nullopt;

    TropicalCurve c;
    // items: (leaf index >= 0 | -(vertex+1), outgoing vector from the parent)
    std::vector<std::pair<int, Vec2>> items;
    for (std::size_t i = 0; i < ends.size(); ++i) items.push_back({static_cast<int>(i), ends[i]});
    std::vector<int> end_vertex(ends.size(), -1);
    auto attach = [&](int v, const std::pair<int, Vec2>& it) {
        if (it.first >= 0) {
            end_vertex[static_cast<std::size_t>(it.first)] = v;
        } else {
            if (it.second.is_zero()) return false;
            const int id = c.add_edge(v, -it.first - 1, it.second);
            c.edges[id].length = Rational(detail::uniform(rng, 1, 4));
        }
        return true;
    };
    while (items.size() > 3) {
        std::shuffle(items.begin(), items.end(), rng);
        auto x = items.back();
        items.pop_back();
        auto y = items.back();
        items.pop_back();
        const int v = c.add_vertex();
        if (!attach(v, x) || !attach(v, y)) return std::nullopt;
        items.push_back({-(v + 1), x.second + y.second});
    }
    const int root = c.add_vertex();
    for (const auto& it : items)
        if (!attach(root, it)) return std::nullopt;
    for (std::size_t i = 0; i < ends.size(); ++i) c.add_end(end_vertex[i], ends[i]);
    const auto forced = static_cast<std::size_t>(missing);
    auto r = detail::rigid_mark_slots(c, rng, ends.size() - 1, forced);
    if (!r) return std::nullopt;
    std::vector<std::size_t> slots(r->begin() + static_cast<std::ptrdiff_t>(forced), r->end());
    // later insertions append edges, so earlier slot numbers keep their meaning if ends come last
    const std::size_t E = c.edges.size();
    std::vector<std::size_t> on_edges, on_ends;
    for (auto sl : slots) (sl < E ? on_edges : on_ends).push_back(sl);
    int next = first_label;
    for (auto sl : on_ends) detail::add_mark_on(c, rng, c.edges.size() + (sl - E), next++);
    for (auto sl : on_edges) detail::add_mark_on(c, rng, sl, next++);
    place_vertices(c, Point{Rational(detail::uniform(rng, -5, 5)), Rational(detail::uniform(rng, -5, 5))});
    if (!check_balancing(c).ok) return std::nullopt;
    if (missing == 0 && multiplicity_genus0(c) == 0) return std::nullopt;
    if (missing > 0) {
        TropicalCurve full = c;
        for (int i = 0; i < missing; ++i) detail::add_mark_on(full, rng, full.edges.size() + static_cast<std::size_t>(i), -1 - i);
        if (multiplicity_genus0(full) == 0) return std::nullopt;
    }
    return c;
}

/// Rigid curve with a well-spaced flat cycle in the middle of a heavy bounded edge: the edge
/// becomes u -> a => b -> v with the two outer pieces of equal length.
inline std::optional<TropicalCurve> random_flat_cycle_curve(std::mt19937_64& rng) {
    // two heavy ends make heavy bounded edges likely
    const std::int64_t k = detail::uniform(rng, 2, 3);
    const Vec2 h1{k, k * detail::uniform(rng, -1, 1)}, h2{k * detail::uniform(rng, -1, 1), -k};
    auto base = random_rational_curve(rng, {h1, h2}, static_cast<int>(detail::uniform(rng, 1, 3)));
    if (!base) return std::nullopt;
    TropicalCurve c = *base;
    std::vector<int> heavy;
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i)
        if (c.edges[i].weight() >= 2) heavy.push_back(i);
    if (heavy.empty()) return std::nullopt;
    const int e = heavy[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(heavy.size()) - 1))];
    const Vec2 W = c.edges[e].vec;
    const std::int64_t w = c.edges[e].weight();
    const std::int64_t w1 = detail::uniform(rng, 1, w - 1), w2 = w - w1;
    const Vec2 d = primitive(W);
    const Rational L = *c.edges[e].length;
    const Rational side = L * Rational(detail::uniform(rng, 1, 3), 8);
    const Rational span = (L - side * Rational(2)) * Rational(w);  // lattice length of each arc
    const int head = c.edges[e].head;
    const int a = c.add_vertex(), b = c.add_vertex();
    c.edges[e].head = a;
    c.edges[e].length = side;
    int id = c.add_edge(a, b, d * w1);
    c.edges[id].length = span / Rational(w1);
    id = c.add_edge(a, b, d * w2);
    c.edges[id].length = span / Rational(w2);
    id = c.add_edge(b, head, W);
    c.edges[id].length = side;
    c.j_length = span / Rational(w1) + span / Rational(w2);
    if (!place_vertices(c, *c.positions[0]) || !is_well_spaced(c)) return std::nullopt;
    return c;
}

/// Rigid curve with a contracted loop at a trivalent vertex or at the lattice midpoint of a
/// bounded edge.
inline std::optional<TropicalCurve> random_contracted_loop_curve(std::mt19937_64& rng) {
    auto base = random_rational_curve(rng, {}, static_cast<int>(detail::uniform(rng, 1, 4)));
    if (!base) return std::nullopt;
    TropicalCurve c = *base;
    int p = -1;
    if (detail::uniform(rng, 0, 1) == 0) {
        std::vector<int> cand;
        for (int v = 0; v < c.num_vertices; ++v)
            if (!c.has_mark(v) && c.valence(v) == 3) cand.push_back(v);
        if (cand.empty()) return std::nullopt;
        p = cand[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(cand.size()) - 1))];
    } else {
        if (c.edges.empty()) return std::nullopt;
        const auto e = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(c.edges.size()) - 1));
        p = c.add_vertex();
        const Rational half = *c.edges[e].length / Rational(2);
        const int head = c.edges[e].head;
        const Vec2 vec = c.edges[e].vec;
        c.edges[e].head = p;
        c.edges[e].length = half;
        const int id = c.add_edge(p, head, vec);
        c.edges[id].length = half;
    }
    const Rational j(detail::uniform(rng, 1, 9));
    const int id = c.add_edge(p, p, Vec2{0, 0});
    c.edges[id].length = j;
    c.j_length = j;
    if (!place_vertices(c, *c.positions[0]) || !is_well_spaced(c)) return std::nullopt;
    return c;
}

/// Curve whose string can be moved to the right: rational pieces hanging off a string from
/// direction (0,-1) to (n,1) by horizontal edges; the cycle runs through the string
/// (`flat` false) or is a flat cycle next to it. In the flat case the piece carrying the cycle has
/// one marked point on the edge towards the cycle and one fewer elsewhere, so that piece is rigid
/// once the cycle is collapsed; the whole curve then keeps one degree of freedom.
inline std::optional<TropicalCurve> random_string_curve(std::mt19937_64& rng, bool flat) {
    const std::int64_t w0a = detail::uniform(rng, 1, 3), w0b = detail::uniform(rng, 1, 3);
    const auto k = static_cast<std::size_t>(detail::uniform(rng, 0, 2));
    std::vector<std::int64_t> side;
    for (std::size_t i = 0; i < k; ++i) side.push_back(detail::uniform(rng, 1, 3));

    struct Piece {
        TropicalCurve curve;
        std::vector<int> link_vertices;  // vertices joined to the string
        std::vector<std::int64_t> link_weights;
    };
    std::vector<Piece> pieces;
    int label = 0;
    auto make = [&](const std::vector<std::int64_t>& ws, int missing) -> bool {
        std::vector<Vec2> fixed;
        for (auto w : ws) fixed.push_back({w, 0});
        auto c = random_rational_curve(rng, fixed, static_cast<int>(detail::uniform(rng, 1, 2)), label, missing);
        if (!c) return false;
        Piece p;
        p.curve = *c;
        label += static_cast<int>(c->marks.size());
        for (std::size_t i = 0; i < ws.size(); ++i) {
            p.link_vertices.push_back(p.curve.ends[i].vertex);
            p.link_weights.push_back(ws[i]);
        }
        p.curve.ends.erase(p.curve.ends.begin(), p.curve.ends.begin() + static_cast<std::ptrdiff_t>(ws.size()));
        pieces.push_back(std::move(p));
        return true;
    };
    Rational tie;  // lattice distance that the flat cycle needs on both sides
    if (!flat) {
        if (!make({w0a, w0b}, 0)) return std::nullopt;
    } else {
        const std::int64_t w0 = w0a + w0b;
        if (!make({w0}, 1)) return std::nullopt;
        auto& p = pieces.front();
        auto& c = p.curve;
        const int u = p.link_vertices.front();
        const int r = c.add_vertex(), q = c.add_vertex();
        // the edge from the piece to the cycle carries a marked point
        const int m = c.add_vertex();
        const Rational l1(detail::uniform(rng, 1, 3));
        const Rational cut = l1 * Rational(detail::uniform(rng, 1, 3), 4);
        int id = c.add_edge(u, m, {w0, 0});
        c.edges[id].length = cut;
        id = c.add_edge(m, r, {w0, 0});
        c.edges[id].length = l1 - cut;
        c.add_mark(m, label++);
        const Rational span(detail::uniform(rng, 1, 4));
        id = c.add_edge(r, q, {w0a, 0});
        c.edges[id].length = span / Rational(w0a);
        id = c.add_edge(r, q, {w0b, 0});
        c.edges[id].length = span / Rational(w0b);
        place_vertices(c, *c.positions[0]);
        p.link_vertices = {q};
        p.link_weights = {w0};
        tie = l1 * Rational(w0);
    }
    for (auto w : side)
        if (!make({w}, 0)) return std::nullopt;

    // string vertices sorted by height
    struct Link {
        std::size_t piece;
        int vertex;
        std::int64_t weight;
        Rational y;
    };
    std::vector<Link> links;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = 0; j < pieces[i].link_vertices.size(); ++j) {
            const int v = pieces[i].link_vertices[j];
            links.push_back({i, v, pieces[i].link_weights[j], pieces[i].curve.positions[v]->y});
        }
    std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) { return a.y < b.y; });
    for (std::size_t i = 1; i < links.size(); ++i)
        if (links[i].y == links[i - 1].y) return std::nullopt;
    // x of each string vertex relative to the lowest one
    std::vector<Rational> rel(links.size(), Rational(0));
    std::int64_t slope = 0;
    for (std::size_t i = 1; i < links.size(); ++i) {
        slope += links[i - 1].weight;
        rel[i] = rel[i - 1] + Rational(slope) * (links[i].y - links[i - 1].y);
    }
    // anchor the string through the piece carrying the cycle
    Rational anchor;
    bool first = true;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (links[i].piece != 0) continue;
        const Rational ux = pieces[0].curve.positions[links[i].vertex]->x;
        const Rational need = flat ? ux + tie - rel[i] : ux + Rational(links[i].weight) - rel[i];
        if (first || need > anchor) anchor = need;
        first = false;
    }
    if (!flat) anchor += Rational(detail::uniform(rng, 0, 3));

    TropicalCurve c;
    std::vector<int> offset;
    for (auto& p : pieces) {
        offset.push_back(c.num_vertices);
        for (int v = 0; v < p.curve.num_vertices; ++v) c.add_vertex();
        for (const auto& e : p.curve.edges) {
            int id = c.add_edge(e.tail + offset.back(), e.head + offset.back(), e.vec);
            c.edges[id].length = e.length;
        }
        for (const auto& e : p.curve.ends) c.add_end(e.vertex + offset.back(), e.vec);
        for (const auto& m : p.curve.marks) c.add_mark(m.vertex + offset.back(), m.label);
    }
    std::vector<int> sv;
    for (std::size_t i = 0; i < links.size(); ++i) sv.push_back(c.add_vertex());
    slope = 0;
    for (std::size_t i = 0; i < links.size(); ++i) {
        const auto& L = links[i];
        const int u = L.vertex + offset[L.piece];
        Rational len;
        if (L.piece == 0) len = (anchor + rel[i] - pieces[0].curve.positions[L.vertex]->x) / Rational(L.weight);
        else len = Rational(detail::uniform(rng, 1, 3));
        if (len <= 0) return std::nullopt;
        int id = c.add_edge(u, sv[i], {L.weight, 0});
        c.edges[id].length = len;
        if (i + 1 < links.size()) {
            slope += L.weight;
            id = c.add_edge(sv[i], sv[i + 1], {slope, 1});
            c.edges[id].length = links[i + 1].y - L.y;
        }
    }
    c.add_end(sv.front(), {0, -1});
    c.add_end(sv.back(), {slope + links.back().weight, 1});
    if (!place_vertices(c, *pieces[0].curve.positions[0])) return std::nullopt;
    if (!check_balancing(c).ok) return std::nullopt;
    if (!is_well_spaced(c)) return std::nullopt;
    return c;
}

} // namespace tropicount

#endif // TROPICOUNT_RANDOM_CURVES_HPP
