#ifndef TROPICOUNT_RATIONAL_COUNT_HPP
#define TROPICOUNT_RATIONAL_COUNT_HPP

// Rational (relative) curve counts N(a,b), N^w(a,b), N^{w',w''}(a,b) on F_n.
//
// Main engine: marked floor diagrams for horizontally stretched point configurations.
// Oracles: the WDVV recursion for the plane and exhaustive search over trivalent types.

#include "multiplicity.hpp"
#include "polygon.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropicount {

/// Thrown for well-formed queries with no admissible degree (e.g. tangency weight > b).
struct InfeasibleQuery : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CountQuery {
    std::int64_t n = 1;
    std::int64_t a = 0;
    std::int64_t b = 0;
    Tangency tangency;
    int genus = 0;

    /// Number of point conditions: 2b+(n+2)a-1, minus w (single) or w'+w''-1 (pair).
    std::int64_t num_points() const {
        const std::int64_t base = 2 * b + (n + 2) * a - 1;
        if (tangency.weights.size() == 1) return base - tangency.weights[0] + 1;
        if (tangency.weights.size() == 2) return base - tangency.total() + 2;
        return base;
    }
    TropicalDegree degree() const {
        try {
            return degree_relative(n, a, b, tangency);
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()) == "tangency exceeds bidegree") throw InfeasibleQuery(e.what());
            throw;
        }
    }
    std::string key() const {
        return std::to_string(n) + ":" + std::to_string(a) + ":" + std::to_string(b) + ":" + tangency.key() + ":" +
               std::to_string(genus);
    }
};

inline CountQuery plane_query(std::int64_t d) { return {1, d, 0, Tangency::none(), 0}; }

enum class CountMethod { tropical_enum, wdvv, brute_force, formula };

inline std::string to_string(CountMethod m) {
    switch (m) {
    case CountMethod::tropical_enum: return "tropical_enum";
    case CountMethod::wdvv: return "wdvv";
    case CountMethod::brute_force: return "brute_force";
    case CountMethod::formula: return "formula";
    }
    return "unknown";
}

inline CountMethod method_from_string(const std::string& s) {
    if (s == "tropical_enum") return CountMethod::tropical_enum;
    if (s == "wdvv") return CountMethod::wdvv;
    if (s == "brute_force") return CountMethod::brute_force;
    if (s == "formula") return CountMethod::formula;
    throw std::invalid_argument("unknown count method: " + s);
}

struct Witness {
    TropicalCurve curve;
    Int multiplicity;
};

struct CountRecord {
    CountQuery query;
    Int value = 0;
    CountMethod method = CountMethod::tropical_enum;
    std::uint64_t seed = 0;
    std::vector<Witness> witnesses;
};

inline nlohmann::json to_json(const CountQuery& q) {
    nlohmann::json t = nlohmann::json::array();
    for (auto w : q.tangency.weights) t.push_back(w);
    return {{"n", q.n}, {"a", q.a}, {"b", q.b}, {"tangency", t}, {"genus", q.genus}, {"num_points", q.num_points()}};
}

inline CountQuery query_from_json(const nlohmann::json& j) {
    CountQuery q;
    q.n = j.at("n").get<std::int64_t>();
    q.a = j.at("a").get<std::int64_t>();
    q.b = j.at("b").get<std::int64_t>();
    q.genus = j.value("genus", 0);
    auto t = j.value("tangency", nlohmann::json::array());
    if (t.size() == 1) q.tangency = Tangency::single(t[0].get<std::int64_t>());
    if (t.size() == 2) q.tangency = Tangency::pair(t[0].get<std::int64_t>(), t[1].get<std::int64_t>());
    return q;
}

inline nlohmann::json to_json(const CountRecord& r) {
    nlohmann::json j = {{"query", to_json(r.query)},
                        {"value", r.value.get_str()},
                        {"method", to_string(r.method)},
                        {"seed", r.seed}};
    if (!r.witnesses.empty()) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& x : r.witnesses) w.push_back({{"curve", to_json(x.curve)}, {"multiplicity", x.multiplicity.get_str()}});
        j["witnesses"] = w;
    }
    return j;
}

inline CountRecord record_from_json(const nlohmann::json& j) {
    CountRecord r;
    r.query = query_from_json(j.at("query"));
    r.value = Int(j.at("value").get<std::string>());
    r.method = method_from_string(j.at("method").get<std::string>());
    r.seed = j.value("seed", std::uint64_t{0});
    return r;
}

// WDVV -----------------------------------------------------------------------------------------

/// Rational plane curves of degree d through 3d-1 points.
inline Int wdvv_p2(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    std::vector<Int> N(d + 1, 0);
    N[1] = 1;
    for (std::int64_t e = 2; e <= d; ++e) {
        Int s = 0;
        for (std::int64_t d1 = 1; d1 < e; ++d1) {
            const std::int64_t d2 = e - d1;
            const unsigned long top = static_cast<unsigned long>(3 * e - 4);
            Int t = Int(d1 * d1 * d2 * d2) * binomial(top, static_cast<unsigned long>(3 * d1 - 2));
            t -= Int(d1 * d1 * d1 * d2) * binomial(top, static_cast<unsigned long>(3 * d1 - 1));
            s += N[d1] * N[d2] * t;
        }
        N[e] = s;
    }
    return N[d];
}

// Floor diagrams -------------------------------------------------------------------------------

namespace detail {

/// Sweep over points ordered by x. Every point carries one object: a floor, a left end, a
/// bounded elevator, or a right end. Floors satisfy (left weight) = (right weight) + n.
class FloorSearch {
public:
    FloorSearch(std::int64_t n, std::int64_t a, std::int64_t left_ends, std::vector<std::int64_t> right)
        : n_(n), a_(a), left_total_(left_ends), right_(std::move(right)) {
        std::sort(right_.begin(), right_.end());
        points_ = a_ + left_total_ + static_cast<std::int64_t>(right_.size()) + (a_ - 1);
    }

    std::int64_t points() const { return points_; }

    Int run() {
        State s;
        s.right = right_;
        return go(s);
    }

private:
    struct Floor { std::int64_t cap; int comp; };
    struct Elevator {
        std::int64_t weight;
        int comp;
        auto operator<=>(const Elevator&) const = default;
    };
    struct State {
        std::int64_t idx = 0;
        std::int64_t floors_placed = 0;
        std::int64_t left_used = 0;
        std::int64_t bounded_used = 0;
        std::int64_t open_left = 0;
        std::vector<Floor> floors;
        std::vector<Elevator> open;
        std::vector<std::int64_t> right;  // remaining right-end weights (sorted)
    };

    static void merge(State& s, int from, int to) {
        for (auto& f : s.floors)
            if (f.comp == from) f.comp = to;
        for (auto& e : s.open)
            if (e.comp == from) e.comp = to;
    }

    std::string key(const State& s) const {
        // components relabelled by first appearance among floors
        std::map<int, int> relabel;
        for (const auto& f : s.floors)
            if (!relabel.count(f.comp)) relabel.emplace(f.comp, static_cast<int>(relabel.size()));
        std::string k = std::to_string(s.idx) + '|' + std::to_string(s.floors_placed) + '|' + std::to_string(s.left_used) +
                        '|' + std::to_string(s.bounded_used) + '|' + std::to_string(s.open_left) + '|';
        for (const auto& f : s.floors) k += std::to_string(f.cap) + ':' + std::to_string(relabel[f.comp]) + ',';
        k += '|';
        std::vector<Elevator> open = s.open;
        for (auto& e : open) e.comp = relabel[e.comp];
        std::sort(open.begin(), open.end());
        for (const auto& e : open) k += std::to_string(e.weight) + ':' + std::to_string(e.comp) + ',';
        k += '|';
        for (auto w : s.right) k += std::to_string(w) + ',';
        return k;
    }

    bool dead(const State& s) const {
        // a component that can never grow again must be everything
        std::map<int, bool> alive;
        for (const auto& f : s.floors) alive[f.comp] = alive[f.comp] || f.cap > 0;
        for (const auto& e : s.open) alive[e.comp] = true;
        if (alive.size() <= 1 && s.floors_placed == a_) return false;
        for (auto [c, ok] : alive)
            if (!ok) return true;
        return false;
    }

    Int go(const State& s) {
        if (s.idx == points_) {
            bool done = s.floors_placed == a_ && s.open_left == 0 && s.open.empty() && s.right.empty();
            for (const auto& f : s.floors) done = done && f.cap == 0;
            return done ? Int(1) : Int(0);
        }
        if (dead(s)) return 0;
        const std::string k = key(s);
        if (auto it = memo_.find(k); it != memo_.end()) return it->second;
        Int total = 0;

        // floor
        if (s.floors_placed < a_) {
            const std::size_t m = s.open.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                std::int64_t lw = 0;
                std::vector<int> comps;
                bool ok = true;
                for (std::size_t i = 0; i < m && ok; ++i) {
                    if (!(mask >> i & 1)) continue;
                    lw += s.open[i].weight;
                    if (std::find(comps.begin(), comps.end(), s.open[i].comp) != comps.end()) ok = false;
                    comps.push_back(s.open[i].comp);
                }
                if (!ok) continue;
                for (std::int64_t j = 0; j <= s.open_left; ++j) {
                    const std::int64_t L = lw + j;
                    if (L < n_) continue;
                    State t = s;
                    t.idx++;
                    t.floors_placed++;
                    t.open_left -= j;
                    const int comp = static_cast<int>(t.floors.size());
                    t.floors.push_back({L - n_, comp});
                    std::vector<Elevator> rest;
                    for (std::size_t i = 0; i < m; ++i)
                        if (!(mask >> i & 1)) rest.push_back(t.open[i]);
                    t.open = rest;
                    for (int c : comps) merge(t, c, comp);
                    total += binomial(static_cast<unsigned long>(s.open_left), static_cast<unsigned long>(j)) * go(t);
                }
            }
        }
        // left end, absorbed later by a floor on its right
        if (s.left_used < left_total_) {
            State t = s;
            t.idx++;
            t.left_used++;
            t.open_left++;
            total += go(t);
        }
        // bounded elevator leaving an existing floor to the right
        if (s.bounded_used < a_ - 1) {
            for (std::size_t f = 0; f < s.floors.size(); ++f)
                for (std::int64_t w = 1; w <= s.floors[f].cap; ++w) {
                    State t = s;
                    t.idx++;
                    t.bounded_used++;
                    t.floors[f].cap -= w;
                    t.open.push_back({w, t.floors[f].comp});
                    total += Int(w * w) * go(t);
                }
        }
        // right end of a given weight
        for (std::size_t i = 0; i < s.right.size(); ++i) {
            if (i > 0 && s.right[i] == s.right[i - 1]) continue;
            const std::int64_t w = s.right[i];
            for (std::size_t f = 0; f < s.floors.size(); ++f) {
                if (s.floors[f].cap < w) continue;
                State t = s;
                t.idx++;
                t.floors[f].cap -= w;
                t.right.erase(t.right.begin() + static_cast<std::ptrdiff_t>(i));
                total += Int(w) * go(t);
            }
        }
        memo_.emplace(k, total);
        return total;
    }

    std::int64_t n_, a_, left_total_;
    std::vector<std::int64_t> right_;
    std::int64_t points_ = 0;
    std::map<std::string, Int> memo_;
};

} // namespace detail

/// Rational curves of the query's degree through generic points, via marked floor diagrams.
inline Int floor_diagram_count(const CountQuery& q) {
    const auto deg = q.degree();
    std::vector<std::int64_t> right;
    std::int64_t left = 0;
    for (const auto& e : deg.ends()) {
        if (e.direction == Vec2(1, 0)) right.push_back(e.weight);
        if (e.direction == Vec2(-1, 0)) left += e.weight;
    }
    if (q.a == 0) {
        // a single horizontal line is the only connected curve in a fiber-free class
        return (q.b == 1 && right.size() == 1 && right[0] == 1) ? Int(1) : Int(0);
    }
    detail::FloorSearch s(q.n, q.a, left, right);
    if (s.points() != q.num_points()) throw std::logic_error("floor diagram point count mismatch");
    return s.run();
}

// Brute-force oracle ---------------------------------------------------------------------------

struct PointConfiguration {
    std::vector<Point> points;
};

/// Integer points drawn uniformly from a large box; reproducible from the seed.
inline PointConfiguration random_configuration(std::size_t count, std::uint64_t seed, std::int64_t range = 1000003) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(-range, range);
    PointConfiguration c;
    for (std::size_t i = 0; i < count; ++i) c.points.push_back({Rational(dist(rng)), Rational(dist(rng))});
    return c;
}

namespace detail {

/// Rooted binary trees over a set of leaves (bitmask), memoized per subset.
class TreeBank {
public:
    struct Node {
        int left = -1, right = -1;  // node ids; negative leaf ids encoded as -(leaf+1)
        std::uint32_t mask = 0;
    };

    TreeBank(std::vector<Vec2> leaf_vecs, std::vector<char> is_mark)
        : vecs_(std::move(leaf_vecs)), is_mark_(std::move(is_mark)) {}

    const std::vector<int>& trees(std::uint32_t mask) {
        if (auto it = cache_.find(mask); it != cache_.end()) return it->second;
        std::vector<int> out;
        if (std::popcount(mask) == 1) {
            out.push_back(-(std::countr_zero(mask) + 1));
            return cache_.emplace(mask, out).first->second;
        }
        if (!admissible(mask)) return cache_.emplace(mask, out).first->second;
        const std::uint32_t low = mask & (~mask + 1);
        const std::uint32_t rest = mask ^ low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint32_t A = low | sub;
            const std::uint32_t B = mask ^ A;
            if (B != 0) {
                const auto& ta = trees(A);
                if (!ta.empty()) {
                    const auto& tb = trees(B);
                    for (int x : ta)
                        for (int y : tb) {
                            nodes_.push_back({x, y, mask});
                            out.push_back(static_cast<int>(nodes_.size()) - 1);
                        }
                }
            }
            if (sub == 0) break;
        }
        return cache_.emplace(mask, out).first->second;
    }

    const Node& node(int id) const { return nodes_[id]; }

    Vec2 sigma(std::uint32_t mask) const {
        Vec2 s;
        for (std::size_t i = 0; i < vecs_.size(); ++i)
            if (mask >> i & 1) s += vecs_[i];
        return s;
    }

    /// Subtree behind an edge: nonzero direction, and marks within one of the ends count.
    bool admissible(std::uint32_t mask) const {
        if (sigma(mask).is_zero()) return false;
        std::int64_t e = 0, m = 0;
        for (std::size_t i = 0; i < vecs_.size(); ++i)
            if (mask >> i & 1) (is_mark_[i] ? m : e)++;
        return m <= e && m >= e - 1;
    }

private:
    std::vector<Vec2> vecs_;
    std::vector<char> is_mark_;
    std::vector<Node> nodes_;
    std::map<std::uint32_t, std::vector<int>> cache_;
};

} // namespace detail

/// Exhaustive search over trivalent types with exact solving at a seeded generic configuration.
/// Leaves are the ends and the marked points. Curves differing only by a permutation of equal
/// ends are counted once.
inline CountRecord brute_force_enumerate(const CountQuery& q, int leaf_cap = 11, std::uint64_t seed = 1,
                                         bool keep_witnesses = false) {
    const auto deg = q.degree();
    const std::size_t M = static_cast<std::size_t>(q.num_points());
    const std::size_t L = deg.num_ends() + M;
    if (static_cast<int>(L) > leaf_cap) throw std::invalid_argument("instance too large for oracle");
    if (M + 1 != deg.num_ends()) throw std::logic_error("point count does not match degree");
    CountRecord rec;
    rec.query = q;
    rec.method = CountMethod::brute_force;
    rec.seed = seed;
    if (M == 0) return rec;

    std::vector<Vec2> vecs(L);
    std::vector<char> is_mark(L, 0);
    for (std::size_t i = 0; i < M; ++i) is_mark[i] = 1;
    for (std::size_t i = 0; i < deg.num_ends(); ++i) vecs[M + i] = deg.ends()[i].vector();
    Int symmetry = 1;
    {
        std::map<WeightedEnd, unsigned long> groups;
        for (const auto& e : deg.ends()) groups[e]++;
        for (auto [e, k] : groups) symmetry *= factorial(k);
    }

    const auto pts = random_configuration(M, seed).points;
    detail::TreeBank bank(vecs, is_mark);
    const std::uint32_t rest = ((std::uint32_t{1} << L) - 1) ^ 1u;

    // Flatten a rooted tree (top vertex carries leaf 0) into vertices and parent edges.
    struct Flat {
        std::vector<int> parent;       // per vertex
        std::vector<Vec2> vec;         // edge parent -> vertex
        std::vector<int> mark_vertex;  // per mark
        std::vector<std::pair<int, Vec2>> ends;
    };
    Int total = 0;
    auto evaluate = [&](int left, int right) {
        Flat f;
        f.mark_vertex.assign(M, -1);
        f.parent.push_back(-1);
        f.vec.push_back({});
        f.mark_vertex[0] = 0;
        std::vector<std::pair<int, int>> stack{{left, 0}, {right, 0}};
        while (!stack.empty()) {
            auto [id, par] = stack.back();
            stack.pop_back();
            if (id < 0) {
                const int leaf = -id - 1;
                if (is_mark[leaf]) f.mark_vertex[leaf] = par;
                else f.ends.push_back({par, vecs[leaf]});
                continue;
            }
            const auto& nd = bank.node(id);
            const int v = static_cast<int>(f.parent.size());
            f.parent.push_back(par);
            f.vec.push_back(bank.sigma(nd.mask));
            stack.push_back({nd.left, v});
            stack.push_back({nd.right, v});
        }
        const std::size_t V = f.parent.size();
        const std::size_t cols = 2 + (V - 1);  // edge of vertex v is column 1 + v
        Matrix A(2 * M, cols);
        std::vector<Rational> rhs(2 * M);
        for (std::size_t m = 0; m < M; ++m) {
            A(2 * m, 0) = 1;
            A(2 * m + 1, 1) = 1;
            for (int v = f.mark_vertex[m]; v > 0; v = f.parent[v]) {
                A(2 * m, 1 + v) = f.vec[v].x;
                A(2 * m + 1, 1 + v) = f.vec[v].y;
            }
            rhs[2 * m] = pts[m].x;
            rhs[2 * m + 1] = pts[m].y;
        }
        std::vector<double> approx;
        if (!solve_approx(A, rhs, approx)) return;
        double scale = 1;
        for (double x : approx) scale = std::max(scale, std::fabs(x));
        for (std::size_t k = 2; k < cols; ++k)
            if (approx[k] < -1e-7 * scale) return;
        auto sol = solve(A, rhs);
        if (!sol.regular) return;
        for (std::size_t k = 2; k < cols; ++k)
            if (sol.x[k] <= 0) return;
        Int mult = abs(Int(sol.det.get_num()));
        total += mult;
        if (keep_witnesses) {
            TropicalCurve c;
            for (std::size_t v = 0; v < V; ++v) c.add_vertex();
            for (std::size_t v = 1; v < V; ++v) {
                int e = c.add_edge(f.parent[v], static_cast<int>(v), f.vec[v]);
                c.edges[e].length = sol.x[1 + v];
            }
            for (auto [v, vec] : f.ends) c.add_end(v, vec);
            for (std::size_t m = 0; m < M; ++m) c.add_mark(f.mark_vertex[m], static_cast<int>(m));
            place_vertices(c, Point{sol.x[0], sol.x[1]});
            rec.witnesses.push_back({std::move(c), mult});
        }
    };

    const std::uint32_t low = rest & (~rest + 1);
    const std::uint32_t others = rest ^ low;
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
        const std::uint32_t A = low | sub, B = rest ^ A;
        if (B != 0) {
            const auto ta = bank.trees(A);
            if (!ta.empty()) {
                const auto tb = bank.trees(B);
                for (int x : ta)
                    for (int y : tb) evaluate(x, y);
            }
        }
        if (sub == 0) break;
    }
    if (total % symmetry != 0) throw std::logic_error("brute-force total not divisible by end symmetry");
    rec.value = total / symmetry;
    if (keep_witnesses) {
        // permutations of equal ends produce the same curve; keep one representative per curve
        std::map<std::string, Witness> uniq;
        for (auto& w : rec.witnesses) {
            std::vector<std::string> pos;
            for (const auto& p : w.curve.positions) pos.push_back(to_string(p->x) + "," + to_string(p->y));
            std::sort(pos.begin(), pos.end());
            std::string k;
            for (const auto& s : pos) k += s + ";";
            uniq.emplace(k, std::move(w));
        }
        rec.witnesses.clear();
        for (auto& [k, w] : uniq) rec.witnesses.push_back(std::move(w));
    }
    return rec;
}

/// Total number of leaves (ends plus marked points) of a query.
inline std::int64_t leaf_count(const CountQuery& q) {
    return static_cast<std::int64_t>(q.degree().num_ends()) + q.num_points();
}

// Main entry -----------------------------------------------------------------------------------

inline CountRecord count_rational(const CountQuery& q, std::uint64_t seed = 1) {
    if (q.genus != 0) throw std::invalid_argument("count_rational handles genus 0 only");
    CountRecord r;
    r.query = q;
    r.seed = seed;
    r.method = CountMethod::tropical_enum;
    r.value = floor_diagram_count(q);
    return r;
}

} // namespace tropicount

#endif // TROPICOUNT_RATIONAL_COUNT_HPP
