#ifndef TROPICOUNT_ELLIPTIC_DIRECT_HPP
#define TROPICOUNT_ELLIPTIC_DIRECT_HPP

// Direct count of genus-one tropical curves of degree Delta(a,b) through N = 2b+(n+2)a-1
// generic points with prescribed cycle length.
//
// A genus-one type is a cycle v_1 ... v_c with a rooted tree hanging from every v_i (a single
// marked point may sit on the cycle), or a contracted loop at a vertex with two or three hanging
// trees. Cycle edge vectors are x_i = x_0 - (s_1 + ... + s_i), s_i the outgoing vector of the tree
// at v_i. Each type is solved exactly; well-spacedness picks which departure distances tie.

#include "multiplicity.hpp"
#include "rational_count.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <unordered_map>
#include <stdexcept>
#include <vector>

namespace tropicount {

struct EllipticDirectRecord {
    std::int64_t n = 0, a = 0, b = 0;
    Rational j_length;
    std::uint64_t seed = 0;
    Int value = 0;
    Rational by_deficiency[3] = {0, 0, 0};
    std::size_t curves = 0;
    std::size_t types_solved = 0;
    std::vector<Witness> witnesses;
};

namespace detail {

class EllipticSearch {
public:
    EllipticSearch(const TropicalDegree& deg, std::size_t marks, const Rational& j, std::vector<Point> pts, bool keep)
        : deg_(deg), M_(marks), j_(j), pts_(std::move(pts)), keep_(keep) {
        L_ = deg.num_ends() + M_;
        vecs_.assign(L_, Vec2{});
        is_mark_.assign(L_, 0);
        for (std::size_t i = 0; i < M_; ++i) is_mark_[i] = 1;
        for (std::size_t i = 0; i < deg.num_ends(); ++i) vecs_[M_ + i] = deg.ends()[i].vector();
        bank_ = std::make_unique<TreeBank>(vecs_, is_mark_);
        for (const auto& p : pts_) pts_d_.push_back({p.x.get_d(), p.y.get_d()});
        j_d_ = j_.get_d();
        // a cycle edge of vector (p,q) is dual to a segment of the Newton polygon
        max_px_ = deg.b() + deg.a() * deg.surface_n();
        max_py_ = deg.a();
    }

    void run(EllipticDirectRecord& rec) {
        rec_ = &rec;
        const std::uint32_t all = (L_ == 32) ? ~0u : ((std::uint32_t{1} << L_) - 1);
        cycles(all);
        loops(all);
    }

private:
    using Mask = std::uint32_t;

    Vec2 sigma(Mask m) const { return bank_->sigma(m); }
    static Mask lowest(Mask m) { return m & (~m + 1); }

    bool hangable(Mask m) { return !hanging(m).empty(); }

    /// Trees (or the single leaf) hanging from a vertex, without those that cannot be realized.
    const std::vector<int>& hanging(Mask m) {
        if (auto it = hanging_.find(m); it != hanging_.end()) return it->second;
        std::vector<int> out;
        if (std::popcount(m) == 1) out.push_back(-(std::countr_zero(m) + 1));
        else
            for (int t : bank_->trees(m))
                if (tree_ok(t)) out.push_back(t);
        return hanging_.emplace(m, std::move(out)).first->second;
    }

    std::pair<std::int64_t, std::int64_t> leaf_counts(Mask m) const {
        std::int64_t e = 0, k = 0;
        for (std::size_t i = 0; i < L_; ++i)
            if (m >> i & 1) (is_mark_[i] ? k : e)++;
        return {e, k};
    }

    /// Every subtree with as many marks as ends is pinned by its points; it must have positive lengths.
    bool tree_ok(int id) {
        if (id < 0) return true;
        if (auto it = tree_ok_.find(id); it != tree_ok_.end()) return it->second;
        const auto& nd = bank_->node(id);
        bool ok = tree_ok(nd.left) && tree_ok(nd.right);
        if (ok) {
            auto [e, k] = leaf_counts(nd.mask);
            if (e == k) ok = pinned_tree_ok(id);
        }
        tree_ok_.emplace(id, ok);
        return ok;
    }

    bool pinned_tree_ok(int root) {
        // unknowns: root position, then the length of each edge below the root
        std::vector<Vec2> edge_vec;
        std::vector<std::pair<std::size_t, std::vector<int>>> marks;  // leaf, edges from the root
        std::vector<std::vector<int>> node_path{{}};
        std::vector<int> ids{root};
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto& nd = bank_->node(ids[i]);
            for (int ch : {nd.left, nd.right}) {
                if (ch < 0) {
                    const int leaf = -ch - 1;
                    if (is_mark_[leaf]) marks.push_back({static_cast<std::size_t>(leaf), node_path[i]});
                    continue;
                }
                edge_vec.push_back(sigma(bank_->node(ch).mask));
                auto p = node_path[i];
                p.push_back(static_cast<int>(edge_vec.size() - 1));
                node_path.push_back(std::move(p));
                ids.push_back(ch);
            }
        }
        const std::size_t n = 2 + edge_vec.size();
        if (2 * marks.size() != n) return true;
        Matrix A;
        std::vector<Rational> rhs;
        for (const auto& [leaf, p] : marks)
            for (int axis = 0; axis < 2; ++axis) {
                std::vector<Rational> row(n, Rational(0));
                row[static_cast<std::size_t>(axis)] = 1;
                for (int e : p) row[2 + static_cast<std::size_t>(e)] = axis == 0 ? edge_vec[e].x : edge_vec[e].y;
                A.append_row(row);
                rhs.push_back(axis == 0 ? pts_[leaf].x : pts_[leaf].y);
            }
        auto sol = solve(A, rhs);
        if (!sol.regular) return false;
        for (std::size_t k = 2; k < n; ++k)
            if (sol.x[k] <= 0) return false;
        return true;
    }

    void add_subtree(TropicalCurve& c, int parent, int id) {
        if (id < 0) {
            const int leaf = -id - 1;
            if (is_mark_[leaf]) c.add_mark(parent, leaf);
            else c.add_end(parent, vecs_[leaf]);
            return;
        }
        const auto& nd = bank_->node(id);
        const int v = c.add_vertex();
        c.add_edge(parent, v, sigma(nd.mask));
        add_subtree(c, v, nd.left);
        add_subtree(c, v, nd.right);
    }

    // Cycles with at least two vertices ----------------------------------------------------------

    void cycles(Mask all) {
        // S_1 contains leaf 0
        const Mask rest = all ^ 1u;
        for (Mask sub = rest;; sub = (sub - 1) & rest) {
            const Mask s1 = sub | 1u;
            if (s1 != all && hangable(s1)) {
                seq_.assign(1, s1);
                extend(all ^ s1);
            }
            if (sub == 0) break;
        }
    }

    void extend(Mask remaining) {
        if (remaining == 0) {
            if (seq_.size() >= 3 && std::countr_zero(seq_[1]) > std::countr_zero(seq_.back())) return;
            if (!balanced_counts()) return;
            solve_sequence();
            return;
        }
        for (Mask sub = remaining;; sub = (sub - 1) & remaining) {
            if (sub != 0 && hangable(sub)) {
                seq_.push_back(sub);
                extend(remaining ^ sub);
                seq_.pop_back();
            }
            if (sub == 0) break;
        }
    }

    /// Every hanging tree has marks in {ends-1, ends}; marks on the cycle raise the total by one each.
    bool balanced_counts() const {
        std::int64_t s = 0;
        for (Mask m : seq_) {
            std::int64_t e = 0, k = 0;
            for (std::size_t i = 0; i < L_; ++i)
                if (m >> i & 1) (is_mark_[i] ? k : e)++;
            s += k - e;
        }
        return s == -1;
    }

    void solve_sequence() {
        const std::size_t c = seq_.size();
        std::vector<Vec2> prefix(c + 1);
        for (std::size_t i = 0; i < c; ++i) prefix[i + 1] = prefix[i] + sigma(seq_[i]);
        // x_i = x_0 - prefix[i+1] for the edge v_{i+1} -> v_{i+2}; bounds give a box for x_0
        std::int64_t lox = -max_px_, hix = max_px_, loy = -max_py_, hiy = max_py_;
        for (std::size_t i = 1; i <= c; ++i) {
            lox = std::max(lox, prefix[i].x - max_px_);
            hix = std::min(hix, prefix[i].x + max_px_);
            loy = std::max(loy, prefix[i].y - max_py_);
            hiy = std::min(hiy, prefix[i].y + max_py_);
        }
        std::vector<std::vector<int>> choices;
        for (Mask m : seq_) choices.push_back(hanging(m));

        for (auto x = lox; x <= hix; ++x)
            for (auto y = loy; y <= hiy; ++y) {
                std::vector<Vec2> xs(c);
                bool all_zero = true;
                for (std::size_t i = 0; i < c; ++i) {
                    xs[i] = Vec2{x, y} - prefix[i + 1];
                    if (!xs[i].is_zero()) all_zero = false;
                }
                if (all_zero) continue;
                // a bigon is an unordered pair of edges v_1 -> v_2
                if (c == 2 && -xs[1] < xs[0]) continue;
                std::vector<int> pick(c);
                pick_trees(choices, pick, 0, xs);
            }
    }

    void pick_trees(const std::vector<std::vector<int>>& choices, std::vector<int>& pick, std::size_t i,
                    const std::vector<Vec2>& xs) {
        if (i == choices.size()) {
            if (quick_reject(pick, xs)) return;
            TropicalCurve cv;
            const std::size_t c = seq_.size();
            for (std::size_t k = 0; k < c; ++k) cv.add_vertex();
            for (std::size_t k = 0; k < c; ++k) cv.add_edge(static_cast<int>(k), static_cast<int>((k + 1) % c), xs[k]);
            for (std::size_t k = 0; k < c; ++k) add_subtree(cv, static_cast<int>(k), pick[k]);
            solve_type(cv);
            return;
        }
        for (int t : choices[i]) {
            pick[i] = t;
            pick_trees(choices, pick, i + 1, xs);
        }
    }

    /// Floating-point look at a non-flat cycle type: true if its position system has a clearly
    /// negative length. Types the shortcut cannot judge go to the exact solver.
    bool quick_reject(const std::vector<int>& pick, const std::vector<Vec2>& xs) {
        const std::size_t c = xs.size();
        Vec2 lead;
        for (const auto& x : xs)
            if (!x.is_zero()) lead = x;
        bool flat = true;
        for (const auto& x : xs)
            if (x.x * lead.y - x.y * lead.x != 0) flat = false;
        if (flat) {
            // the lengths must close the cycle along its line
            bool back = false;
            for (const auto& x : xs)
                if (x.x * lead.x + x.y * lead.y < 0) back = true;
            return !back;
        }
        std::vector<Vec2> evec(xs);
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> marks;  // leaf, path from v_1
        std::vector<std::size_t> path;
        std::function<void(int)> walk = [&](int id) {
            if (id < 0) {
                const auto leaf = static_cast<std::size_t>(-id - 1);
                if (is_mark_[leaf]) marks.push_back({leaf, path});
                return;
            }
            const auto& nd = bank_->node(id);
            evec.push_back(sigma(nd.mask));
            path.push_back(evec.size() - 1);
            walk(nd.left);
            walk(nd.right);
            path.pop_back();
        };
        for (std::size_t k = 0; k < c; ++k) {
            walk(pick[k]);
            path.push_back(k);
        }
        const std::size_t n = 2 + evec.size();
        if (2 * marks.size() + 3 != n) return false;
        std::vector<double> a(n * n, 0.0), b(n, 0.0);
        std::size_t r = 0;
        for (const auto& [leaf, p] : marks) {
            for (int axis = 0; axis < 2; ++axis, ++r) {
                a[r * n + static_cast<std::size_t>(axis)] = 1;
                for (auto e : p) a[r * n + 2 + e] = static_cast<double>(axis == 0 ? evec[e].x : evec[e].y);
                b[r] = axis == 0 ? pts_d_[leaf].first : pts_d_[leaf].second;
            }
        }
        for (std::size_t k = 0; k < c; ++k) {
            a[r * n + 2 + k] = static_cast<double>(xs[k].x);
            a[(r + 1) * n + 2 + k] = static_cast<double>(xs[k].y);
            a[(r + 2) * n + 2 + k] = 1;
        }
        b[r + 2] = j_d_;
        std::vector<double> x;
        // non-flat: the exact system is the same and would be singular too
        if (!solve_dense(std::move(a), std::move(b), n, x)) return true;
        double scale = 1;
        for (double v : x) scale = std::max(scale, std::fabs(v));
        for (std::size_t k = 2; k < n; ++k)
            if (x[k] < -1e-7 * scale) return true;
        return false;
    }

    // Contracted loops ---------------------------------------------------------------------------

    void loops(Mask all) {
        const Mask rest = all ^ 1u;
        for (Mask sub = rest;; sub = (sub - 1) & rest) {
            const Mask A = sub | 1u;
            const Mask others = all ^ A;
            if (others != 0 && std::popcount(A) > 1 && hangable(A)) {
                // two hanging trees
                if (loop_branch_ok(others) && hangable(others) && (sigma(A) + sigma(others)).is_zero())
                    loop_type({A, others});
                // three hanging trees, B holds the smallest remaining leaf
                const Mask low = lowest(others);
                const Mask o2 = others ^ low;
                for (Mask s2 = o2;; s2 = (s2 - 1) & o2) {
                    const Mask B = s2 | low, C = others ^ B;
                    if (C != 0 && loop_branch_ok(B) && loop_branch_ok(C) && hangable(B) && hangable(C))
                        loop_type({A, B, C});
                    if (s2 == 0) break;
                }
            }
            if (sub == 0) break;
        }
    }

    /// A loop vertex carries no marked point.
    bool loop_branch_ok(Mask m) const { return !(std::popcount(m) == 1 && is_mark_[std::countr_zero(m)]); }

    void loop_type(const std::vector<Mask>& parts) {
        std::vector<std::vector<int>> choices;
        for (Mask m : parts) choices.push_back(hanging(m));
        std::vector<int> pick(parts.size());
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == parts.size()) {
                TropicalCurve cv;
                cv.add_vertex();
                cv.add_edge(0, 0, {0, 0});
                for (std::size_t k = 0; k < parts.size(); ++k) add_subtree(cv, 0, pick[k]);
                solve_type(cv);
                return;
            }
            for (int t : choices[i]) {
                pick[i] = t;
                rec(i + 1);
            }
        };
        rec(0);
    }

    // Solving ------------------------------------------------------------------------------------

    void solve_type(TropicalCurve& cv) {
        if (cell_weight(cv) == 0) return;
        auto conds = well_spacedness_conditions(cv);
        std::vector<std::size_t> runs;
        for (std::size_t i = 0; i < conds.size(); ++i) {
            if (conds[i].kind == LineCondition::Kind::never) return;
            if (conds[i].kind == LineCondition::Kind::runs) runs.push_back(i);
        }
        if (runs.size() > 1) throw std::logic_error("more than one superabundant line");
        if (runs.empty()) {
            solve_with(cv, std::nullopt);
            return;
        }
        const std::size_t k = conds[runs[0]].departures.size();
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = p + 1; q < k; ++q) solve_with(cv, WellSpacedTie{p, q});
    }

    void solve_with(TropicalCurve& cv, std::optional<WellSpacedTie> tie) {
        auto sys = cell_system(cv, tie);
        if (sys.rows.size() != sys.rows.front().size()) return;
        Matrix A = stack(sys.rows);
        std::vector<Rational> rhs(sys.rows.size(), Rational(0));
        for (std::size_t m = 0; m < M_; ++m) {
            rhs[2 * m] = pts_[m].x;
            rhs[2 * m + 1] = pts_[m].y;
        }
        rhs[2 * M_] = j_;
        std::vector<double> approx;
        if (!solve_approx(A, rhs, approx)) return;
        double scale = 1;
        for (double v : approx) scale = std::max(scale, std::fabs(v));
        for (std::size_t k = 2; k < approx.size(); ++k)
            if (approx[k] < -1e-7 * scale) return;
        ++rec_->types_solved;
        auto sol = solve(A, rhs);
        if (!sol.regular) return;
        for (std::size_t k = 2; k < sol.x.size(); ++k)
            if (sol.x[k] <= 0) return;
        TropicalCurve c = cv;
        for (std::size_t e = 0; e < c.edges.size(); ++e) c.edges[e].length = sol.x[2 + e];
        place_vertices(c, Point{sol.x[0], sol.x[1]});
        c.j_length = j_;
        if (!is_well_spaced(c)) return;
        Rational m = multiplicity_raw(c);
        if (m == 0) return;
        rec_->by_deficiency[deficiency(c)] += m;
        ++rec_->curves;
        if (keep_) rec_->witnesses.push_back({c, Int(m.get_num())});
    }

    const TropicalDegree& deg_;
    std::size_t M_, L_ = 0;
    Rational j_;
    std::vector<Point> pts_;
    std::vector<std::pair<double, double>> pts_d_;
    double j_d_ = 0;
    bool keep_;
    std::vector<Vec2> vecs_;
    std::vector<char> is_mark_;
    std::unique_ptr<TreeBank> bank_;
    std::int64_t max_px_ = 0, max_py_ = 0;
    std::vector<Mask> seq_;
    std::unordered_map<Mask, std::vector<int>> hanging_;
    std::unordered_map<int, bool> tree_ok_;
    EllipticDirectRecord* rec_ = nullptr;
};

} // namespace detail

/// Leaves of the genus-one search: ends plus 2b+(n+2)a-1 marked points.
inline std::int64_t elliptic_leaf_count(std::int64_t n, std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(degree_standard(n, a, b).num_ends()) + 2 * b + (n + 2) * a - 1;
}

inline EllipticDirectRecord count_elliptic_direct(std::int64_t n, std::int64_t a, std::int64_t b, const Rational& j_length,
                                                  std::uint64_t seed, int leaf_cap = 11, bool keep_witnesses = false) {
    if (j_length <= 0) throw std::invalid_argument("j_length must be positive");
    const auto deg = degree_standard(n, a, b);
    const std::size_t M = static_cast<std::size_t>(2 * b + (n + 2) * a - 1);
    if (static_cast<int>(deg.num_ends() + M) > leaf_cap) throw std::invalid_argument("instance too large for direct engine");
    EllipticDirectRecord rec;
    rec.n = n;
    rec.a = a;
    rec.b = b;
    rec.j_length = j_length;
    rec.seed = seed;
    detail::EllipticSearch s(deg, M, j_length, random_configuration(M, seed).points, keep_witnesses);
    s.run(rec);
    Rational total = rec.by_deficiency[0] + rec.by_deficiency[1] + rec.by_deficiency[2];
    Int symmetry = 1;
    {
        std::map<WeightedEnd, unsigned long> groups;
        for (const auto& e : deg.ends()) groups[e]++;
        for (auto [e, k] : groups) symmetry *= factorial(k);
    }
    total /= Rational(symmetry);
    for (auto& d : rec.by_deficiency) d /= Rational(symmetry);
    if (total.get_den() != 1) throw std::logic_error("non-integral elliptic total");
    rec.value = Int(total.get_num());
    return rec;
}

} // namespace tropicount

#endif // TROPICOUNT_ELLIPTIC_DIRECT_HPP
