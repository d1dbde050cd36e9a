#ifndef TROPICOUNT_FORMULA_HPP
#define TROPICOUNT_FORMULA_HPP

// Elliptic curves with fixed j-invariant on F_n from rational (relative) counts.
//
//   N(a,b) = #int(Delta) N^0(a,b)
//          + 2 sum multinomial * w0' w0'' N^{w0',w0''}(a0,b0) * prod_{j>=1} w_j N^{w_j}(a_j,b_j)
//          +   sum multinomial * prod_{j>=0} w_j N^{w_j}(a_j,b_j)          (w0 = w0' + w0'' >= 2)

#include "polygon.hpp"
#include "rational_count.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropicount {

using CountProvider = std::function<Int(const CountQuery&)>;

/// Memoized floor-diagram provider.
inline CountProvider default_provider() {
    auto memo = std::make_shared<std::map<std::string, Int>>();
    return [memo](const CountQuery& q) {
        auto k = q.key();
        if (auto it = memo->find(k); it != memo->end()) return it->second;
        Int v = count_rational(q).value;
        memo->emplace(k, v);
        return v;
    };
}

/// Plane counts from the WDVV recursion; every other query goes to the floor-diagram engine.
inline CountProvider wdvv_provider() {
    auto rest = default_provider();
    return [rest](const CountQuery& q) {
        if (q.n == 1 && q.b == 0 && q.tangency.weights.empty() && q.a >= 1) return wdvv_p2(q.a);
        return rest(q);
    };
}

inline Int multinomial(std::int64_t N, const std::vector<std::int64_t>& parts) {
    std::int64_t s = 0;
    for (auto p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        s += p;
    }
    if (s != N) throw std::invalid_argument("multinomial: parts do not sum to N");
    Int r = 1;
    std::int64_t left = N;
    for (auto p : parts) {
        r *= binomial(static_cast<unsigned long>(left), static_cast<unsigned long>(p));
        left -= p;
    }
    return r;
}

struct PartitionTerm {
    int row = 2;
    std::int64_t k = 0;
    std::int64_t w0_upper = 0;  // w0'
    std::int64_t w0_lower = 0;  // w0''
    std::vector<std::int64_t> side_weights;                         // w_1 >= ... >= w_k
    std::vector<std::pair<std::int64_t, std::int64_t>> splits;     // (a_j, b_j), j = 0..k
    std::vector<std::int64_t> point_splits;                         // N_j
    Int coefficient;                                                // multinomial

    /// Component j as a rational count query.
    CountQuery component(std::int64_t n, std::size_t j) const {
        CountQuery q{n, splits[j].first, splits[j].second, Tangency::none(), 0};
        if (j == 0) {
            q.tangency = row == 2 ? Tangency::pair(w0_upper, w0_lower) : Tangency::single(w0_upper + w0_lower);
        } else {
            q.tangency = Tangency::single(side_weights[j - 1]);
        }
        return q;
    }

    /// Constant factor in front of the product of counts: 2 for the second row; for the third row
    /// 2 when w0' != w0'' (both ordered splittings of w0) and 1 otherwise.
    std::int64_t prefactor() const {
        if (row == 2) return 2;
        return w0_upper != w0_lower ? 2 : 1;
    }
};

namespace detail {

/// Partitions of m into parts w_1 >= ... >= w_k >= 1 (k may be 0 when m == 0).
inline void partitions(std::int64_t m, std::int64_t max_part, std::vector<std::int64_t>& cur,
                       std::vector<std::vector<std::int64_t>>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (std::int64_t p = std::min(m, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(m - p, p, cur, out);
        cur.pop_back();
    }
}

/// Weak compositions of total into `parts` nonnegative summands.
inline void compositions(std::int64_t total, std::size_t parts, std::vector<std::int64_t>& cur,
                         std::vector<std::vector<std::int64_t>>& out) {
    if (cur.size() + 1 == parts) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::int64_t x = 0; x <= total; ++x) {
        cur.push_back(x);
        compositions(total - x, parts, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::int64_t>> compositions(std::int64_t total, std::size_t parts) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    if (parts == 0) return out;
    compositions(total, parts, cur, out);
    return out;
}

} // namespace detail

/// All feasible terms of the second and third rows.
inline std::vector<PartitionTerm> enumerate_terms(std::int64_t n, std::int64_t a, std::int64_t b) {
    if (n < 0 || a < 1 || b < 0) throw std::invalid_argument("enumerate_terms requires n >= 0, a >= 1, b >= 0");
    std::vector<PartitionTerm> out;
    const std::int64_t N = 2 * b + (n + 2) * a - 1;
    for (int row : {2, 3}) {
        for (std::int64_t w0 = 2; w0 <= n; ++w0) {
            std::vector<std::vector<std::int64_t>> sides;
            std::vector<std::int64_t> cur;
            detail::partitions(n - w0, n - w0, cur, sides);
            for (std::int64_t lower = 1; 2 * lower <= w0; ++lower) {
                const std::int64_t upper = w0 - lower;
                for (const auto& side : sides) {
                    const std::size_t parts = side.size() + 1;
                    auto as = detail::compositions(a - 1, parts);
                    auto bs = detail::compositions(b + n, parts);
                    for (const auto& av : as)
                        for (const auto& bv : bs) {
                            PartitionTerm t;
                            t.row = row;
                            t.k = static_cast<std::int64_t>(side.size());
                            t.w0_upper = upper;
                            t.w0_lower = lower;
                            t.side_weights = side;
                            bool feasible = true;
                            for (std::size_t j = 0; j < parts; ++j) {
                                t.splits.push_back({av[j], bv[j]});
                                std::int64_t Nj = 2 * bv[j] + (n + 2) * av[j];
                                std::int64_t tang;
                                // first component: one point past its weighted end count
                                if (j == 0) {
                                    tang = w0;
                                    Nj -= w0 - 1;
                                } else {
                                    tang = side[j - 1];
                                    Nj -= tang;
                                }
                                const std::int64_t rigid = (j == 0 && row == 3) ? Nj - 1 : Nj;
                                if (rigid < 0 || tang > bv[j]) feasible = false;
                                t.point_splits.push_back(Nj);
                            }
                            if (!feasible) continue;
                            std::int64_t s = 0;
                            for (auto x : t.point_splits) s += x;
                            if (s != N) throw std::logic_error("point splits do not sum to N");
                            t.coefficient = multinomial(N, t.point_splits);
                            out.push_back(std::move(t));
                        }
                }
            }
        }
    }
    return out;
}

struct TermValue {
    PartitionTerm term;
    std::vector<Int> counts;  // N^{...}(a_j,b_j), j = 0..k
    Int value;
};

struct EllipticResult {
    std::int64_t n = 0, a = 0, b = 0;
    std::int64_t interior_points = 0;
    Int rational_count;  // N^0(a,b)
    Int summand1, summand2, summand3, total;
    std::vector<TermValue> terms;
};

inline Int term_value(const PartitionTerm& t, std::int64_t n, const CountProvider& counts, std::vector<Int>* parts = nullptr) {
    Int v = Int(t.prefactor()) * t.coefficient;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(t.k); ++j) {
        Int c = counts(t.component(n, j));
        if (parts) parts->push_back(c);
        if (j == 0 && t.row == 2) v *= Int(t.w0_upper * t.w0_lower) * c;
        else if (j == 0) v *= Int(t.w0_upper + t.w0_lower) * c;
        else v *= Int(t.side_weights[j - 1]) * c;
    }
    return v;
}

inline EllipticResult elliptic_count(std::int64_t n, std::int64_t a, std::int64_t b, const CountProvider& counts) {
    EllipticResult r;
    r.n = n;
    r.a = a;
    r.b = b;
    r.interior_points = interior_lattice_points(polygon_of_degree(n, a, b));
    r.rational_count = counts(CountQuery{n, a, b, Tangency::none(), 0});
    r.summand1 = Int(r.interior_points) * r.rational_count;
    for (auto& t : enumerate_terms(n, a, b)) {
        TermValue tv;
        tv.value = term_value(t, n, counts, &tv.counts);
        (t.row == 2 ? r.summand2 : r.summand3) += tv.value;
        tv.term = std::move(t);
        r.terms.push_back(std::move(tv));
    }
    r.total = r.summand1 + r.summand2 + r.summand3;
    return r;
}

/// Plane elliptic curves of degree d: binom(d-1,2) N_0(d).
inline Int p2_elliptic(std::int64_t d, const CountProvider& counts) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    return binomial(static_cast<unsigned long>(d - 1), 2) * counts(plane_query(d));
}

/// Elliptic curves on F_1: ((a^2+2ab-3a-2b+2)/2) N^0(a,b).
inline Int f1_elliptic(std::int64_t a, std::int64_t b, const CountProvider& counts) {
    if (a < 1) throw std::invalid_argument("f1_elliptic requires a >= 1");
    const std::int64_t num = a * a + 2 * a * b - 3 * a - 2 * b + 2;
    if (num % 2 != 0) throw std::logic_error("odd interior-point numerator");
    return Int(num / 2) * counts(CountQuery{1, a, b, Tangency::none(), 0});
}

// Output ---------------------------------------------------------------------------------------

inline nlohmann::json to_json(const PartitionTerm& t) {
    nlohmann::json splits = nlohmann::json::array();
    for (auto [x, y] : t.splits) splits.push_back({x, y});
    return {{"row", t.row},
            {"k", t.k},
            {"cycle_weights", {t.w0_upper, t.w0_lower}},
            {"side_weights", t.side_weights},
            {"splits", splits},
            {"point_splits", t.point_splits},
            {"coefficient", t.coefficient.get_str()},
            {"prefactor", t.prefactor()}};
}

inline nlohmann::json to_json(const EllipticResult& r, bool breakdown) {
    nlohmann::json j = {{"n", r.n},
                        {"a", r.a},
                        {"b", r.b},
                        {"interior_points", r.interior_points},
                        {"rational_count", r.rational_count.get_str()},
                        {"summand1", r.summand1.get_str()},
                        {"summand2", r.summand2.get_str()},
                        {"summand3", r.summand3.get_str()},
                        {"total", r.total.get_str()}};
    if (breakdown) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& tv : r.terms) {
            auto jt = to_json(tv.term);
            nlohmann::json cs = nlohmann::json::array();
            for (const auto& c : tv.counts) cs.push_back(c.get_str());
            jt["counts"] = cs;
            jt["value"] = tv.value.get_str();
            terms.push_back(jt);
        }
        j["terms"] = terms;
    }
    return j;
}

inline std::string csv_header() { return "n,a,b,summand1,summand2,summand3,total\n"; }

inline std::string to_csv_row(const EllipticResult& r) {
    std::ostringstream os;
    os << r.n << ',' << r.a << ',' << r.b << ',' << r.summand1 << ',' << r.summand2 << ',' << r.summand3 << ','
       << r.total << '\n';
    return os.str();
}

} // namespace tropicount

#endif // TROPICOUNT_FORMULA_HPP
