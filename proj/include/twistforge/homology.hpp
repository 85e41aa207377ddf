#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistforge {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Rational = mpq_class;

namespace detail {

inline Int add_ck(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in homology arithmetic");
    return r;
}
inline Int mul_ck(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in homology arithmetic");
    return r;
}

}  // namespace detail

// Dense integer matrix, row major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, 0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<Int>& data() const { return a_; }

    bool operator==(const Matrix& o) const = default;

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix size mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t t = 0; t < cols_; ++t) {
                Int x = (*this)(i, t);
                if (!x) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    if (o(t, j)) r(i, j) = detail::add_ck(r(i, j), detail::mul_ck(x, o(t, j)));
            }
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Vec apply(const Vec& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector size mismatch");
        Vec r(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) && v[j]) r[i] = detail::add_ck(r[i], detail::mul_ck((*this)(i, j), v[j]));
        return r;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

inline void check_rank(const Vec& v) {
    if (v.size() % 2) throw std::invalid_argument("homology class has odd length");
}

// omega(u,v) = u^T J v with <e_{2m-1}, e_{2m}> = +1
inline Int symplectic_form(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("symplectic_form: length mismatch");
    check_rank(u);
    Int s = 0;
    for (std::size_t m = 0; m < u.size(); m += 2)
        s = detail::add_ck(s, detail::add_ck(detail::mul_ck(u[m], v[m + 1]), -detail::mul_ck(u[m + 1], v[m])));
    return s;
}

inline Vec J_apply(const Vec& v) {
    Vec r(v.size());
    for (std::size_t m = 0; m < v.size(); m += 2) {
        r[m] = v[m + 1];
        r[m + 1] = -v[m];
    }
    return r;
}

inline Matrix J_matrix(std::size_t n) {
    Matrix j(n, n);
    for (std::size_t m = 0; m + 1 < n; m += 2) {
        j(m, m + 1) = 1;
        j(m + 1, m) = -1;
    }
    return j;
}

inline bool is_zero(const Vec& v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

// x -> x + e * omega(x, v) v; matrix I + e * v (Jv)^T
inline Matrix transvection_matrix(const Vec& v, int exponent = 1) {
    check_rank(v);
    if (is_zero(v)) throw std::invalid_argument("transvection along the zero class");
    std::size_t n = v.size();
    Matrix m = Matrix::identity(n);
    Vec jv = J_apply(v);
    for (std::size_t i = 0; i < n; ++i)
        if (v[i])
            for (std::size_t j = 0; j < n; ++j)
                if (jv[j]) m(i, j) = detail::add_ck(m(i, j), detail::mul_ck(exponent, detail::mul_ck(v[i], jv[j])));
    return m;
}

// M * T_v^e in O(n^2): M + e (M v)(Jv)^T
inline void right_multiply_transvection(Matrix& m, const Vec& v, int exponent = 1) {
    Vec mv = m.apply(v);
    Vec jv = J_apply(v);
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (mv[i])
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (jv[j]) m(i, j) = detail::add_ck(m(i, j), detail::mul_ck(exponent, detail::mul_ck(mv[i], jv[j])));
}

inline bool is_symplectic(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() % 2) return false;
    Matrix j = J_matrix(m.rows());
    return m.transpose() * j * m == j;
}

// A^{-1} = -J A^T J for symplectic A
inline Matrix symplectic_inverse(const Matrix& a) {
    Matrix j = J_matrix(a.rows());
    return -(j * a.transpose() * j);
}

// ---------------------------------------------------------------- rationals

using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix to_rational(const Matrix& m) {
    QMatrix q(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q[i][j] = Rational(static_cast<long>(m(i, j)));
    return q;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0, rows = m.size();
    for (std::size_t c = 0; c < ncols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (std::size_t t = c; t < m[r].size(); ++t)
            if (m[r][t] != 0) m[r][t] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t t = c; t < m[i].size(); ++t)
                if (m[r][t] != 0) m[i][t] -= f * m[r][t];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

// Basis of {x : M x = 0}.
inline std::vector<std::vector<Rational>> nullspace(QMatrix m) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    auto piv = rref(m, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x = b, if any.
inline std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
    std::size_t cols = a.empty() ? 0 : a[0].size();
    QMatrix m = a;
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
    auto piv = rref(m, cols);
    for (std::size_t i = piv.size(); i < m.size(); ++i)
        if (m[i][cols] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][cols];
    return x;
}

inline std::size_t rank(QMatrix m) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    return rref(m, cols).size();
}

// Signature of a symmetric form by congruence diagonalization.
// A zero diagonal with a nonzero off-diagonal entry splits off a hyperbolic block.
inline int symmetric_signature(QMatrix f) {
    std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i].size() != n) throw std::invalid_argument("symmetric_signature: matrix not square");
        for (std::size_t j = 0; j < i; ++j)
            if (f[i][j] != f[j][i]) throw std::invalid_argument("symmetric_signature: matrix not symmetric");
    }
    std::vector<bool> alive(n, true);
    int sig = 0;
    for (;;) {
        std::size_t k = n;
        for (std::size_t i = 0; i < n && k == n; ++i)
            if (alive[i] && f[i][i] != 0) k = i;
        if (k != n) {
            Rational d = f[k][k];
            sig += d > 0 ? 1 : -1;
            alive[k] = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!alive[i] || f[i][k] == 0) continue;
                Rational c = f[i][k] / d;
                for (std::size_t j = 0; j < n; ++j)
                    if (alive[j] && f[k][j] != 0) f[i][j] -= c * f[k][j];
            }
            continue;
        }
        std::size_t a = n, b = n;
        for (std::size_t i = 0; i < n && a == n; ++i)
            if (alive[i])
                for (std::size_t j = i + 1; j < n; ++j)
                    if (alive[j] && f[i][j] != 0) {
                        a = i;
                        b = j;
                        break;
                    }
        if (a == n) break;  // what is left is the zero form
        // hyperbolic block [[0,x],[x,0]]: contributes +1 and -1
        Rational x = f[a][b];
        alive[a] = alive[b] = false;
        std::vector<Rational> ca(n), cb(n);
        for (std::size_t i = 0; i < n; ++i) {
            ca[i] = f[i][a];
            cb[i] = f[i][b];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!alive[j]) continue;
                if ((ca[i] == 0 || cb[j] == 0) && (cb[i] == 0 || ca[j] == 0)) continue;
                f[i][j] -= (ca[i] * cb[j] + cb[i] * ca[j]) / x;
            }
        }
    }
    return sig;
}

}  // namespace twistforge
