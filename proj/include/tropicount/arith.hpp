#ifndef TROPICOUNT_ARITH_HPP
#define TROPICOUNT_ARITH_HPP

// Exact integer / rational arithmetic and small lattice-vector helpers.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropicount {

using Int = mpz_class;
using Rational = mpq_class;

/// Integer lattice vector. Components stay small (bounded by polygon size).
struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr Vec2() = default;
    constexpr Vec2(std::int64_t x_, std::int64_t y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(std::int64_t k) const { return {x * k, y * k}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
    constexpr auto operator<=>(const Vec2&) const = default;
    constexpr bool is_zero() const { return x == 0 && y == 0; }
};

inline std::ostream& operator<<(std::ostream& os, Vec2 v) {
    return os << '(' << v.x << ',' << v.y << ')';
}

constexpr std::int64_t cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr std::int64_t dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

constexpr std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

/// Lattice length of a vector, i.e. gcd of its components (0 for the zero vector).
inline std::int64_t lattice_length(Vec2 v) { return std::gcd(iabs(v.x), iabs(v.y)); }

inline Vec2 primitive(Vec2 v) {
    const auto g = lattice_length(v);
    if (g == 0) return v;
    return {v.x / g, v.y / g};
}

inline bool parallel(Vec2 a, Vec2 b) { return cross(a, b) == 0; }

/// Rational point in the plane.
struct Point {
    Rational x;
    Rational y;
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

inline Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
inline Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
inline Point scaled(Vec2 v, const Rational& t) { return {t * Rational(v.x), t * Rational(v.y)}; }

/// Canonical num/den.
inline Rational fraction(std::int64_t num, std::int64_t den) {
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Dense matrix over Q, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Rational>& row) {
        if (rows_ == 0 && cols_ == 0) cols_ = row.size();
        if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

    std::vector<Rational> row(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Determinant by Gaussian elimination over Q (exact).
inline Rational determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

struct SolveResult {
    bool regular = false;
    Rational det;
    std::vector<Rational> x;
};

/// Solves m * x = rhs exactly. `regular` is false when m is singular.
inline SolveResult solve(Matrix m, std::vector<Rational> rhs) {
    if (m.rows() != m.cols() || rhs.size() != m.rows())
        throw std::invalid_argument("solve: non-square system");
    const std::size_t n = m.rows();
    SolveResult out;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) {
            out.det = 0;
            return out;
        }
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            std::swap(rhs[piv], rhs[c]);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
            rhs[r] -= f * rhs[c];
        }
    }
    out.x.assign(n, Rational(0));
    for (std::size_t i = n; i-- > 0;) {
        Rational s = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= m(i, k) * out.x[k];
        out.x[i] = s / m(i, i);
    }
    out.regular = true;
    out.det = det;
    return out;
}

/// Floating-point screen of a linear system; returns false when singular.
/// Dense double solve of an n x n row-major system; false when a pivot is tiny.
inline bool solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n, std::vector<double>& x) {
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        double best = 0;
        for (std::size_t r = c; r < n; ++r) {
            double v = a[r * n + c] < 0 ? -a[r * n + c] : a[r * n + c];
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-9) return false;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
            std::swap(b[piv], b[c]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = a[r * n + c] / a[c * n + c];
            if (f == 0) continue;
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            b[r] -= f * b[c];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * x[k];
        x[i] = s / a[i * n + i];
    }
    return true;
}

inline bool solve_approx(const Matrix& m, const std::vector<Rational>& rhs, std::vector<double>& x) {
    const std::size_t n = m.rows();
    std::vector<double> a(n * n), b(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m(r, c).get_d();
        b[r] = rhs[r].get_d();
    }
    return solve_dense(std::move(a), std::move(b), n, x);
}

/// Index of the image of an integer matrix with full row rank r <= 2 (gcd of maximal minors).
/// Returns 0 when the rows are dependent.
inline Int image_index(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 1;
    for (const auto& r : rows)
        for (const auto& v : r)
            if (v.get_den() != 1) throw std::invalid_argument("image_index: non-integer entry");
    Int g = 0;
    if (rows.size() == 1) {
        for (const auto& v : rows[0]) g = gcd(g, Int(v.get_num()));
        return abs(g);
    }
    if (rows.size() == 2) {
        const auto& r0 = rows[0];
        const auto& r1 = rows[1];
        for (std::size_t i = 0; i < r0.size(); ++i)
            for (std::size_t j = i + 1; j < r0.size(); ++j) {
                Rational m = r0[i] * r1[j] - r0[j] * r1[i];
                g = gcd(g, Int(m.get_num()));
            }
        return abs(g);
    }
    throw std::invalid_argument("image_index: more than two constraint rows");
}

} // namespace tropicount

#endif // TROPICOUNT_ARITH_HPP
