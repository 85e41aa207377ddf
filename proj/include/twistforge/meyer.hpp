#pragma once

#include <array>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "homology.hpp"
#include "word.hpp"

namespace twistforge {

// Conventions for the Meyer cocycle
//   V = {(x,y) : (A' - I)x + s (B - I)y = 0},  <(x1,y1),(x2,y2)> = omega(L(x1,y1), F y2)
// use_inverse: A' = A^{-1} (else A); plus_v: s = +1 (else -1);
// negate_form: F = B - I (else I - B); left_sum: L = x1 + y1 (else x1).
struct ConventionFlags {
    bool use_inverse = true;
    bool negate_form = true;
    bool left_sum = true;
    bool plus_v = true;

    bool operator==(const ConventionFlags&) const = default;
    int code() const { return (use_inverse << 3) | (negate_form << 2) | (left_sum << 1) | int(plus_v); }
    static ConventionFlags from_code(int c) { return {bool(c & 8), bool(c & 4), bool(c & 2), bool(c & 1)}; }
};

inline std::string to_string(const ConventionFlags& f) {
    return std::string("inverse=") + (f.use_inverse ? "1" : "0") + ",negate_form=" + (f.negate_form ? "1" : "0") +
           ",left_sum=" + (f.left_sum ? "1" : "0") + ",plus_v=" + (f.plus_v ? "1" : "0");
}

inline ConventionFlags parse_flags(const std::string& s) {
    ConventionFlags f;
    auto get = [&](const std::string& key) {
        auto p = s.find(key + "=");
        if (p == std::string::npos) throw std::invalid_argument("flags: missing " + key);
        char c = s.at(p + key.size() + 1);
        if (c != '0' && c != '1') throw std::invalid_argument("flags: bad value for " + key);
        return c == '1';
    };
    f.use_inverse = get("inverse");
    f.negate_form = get("negate_form");
    f.left_sum = get("left_sum");
    f.plus_v = get("plus_v");
    return f;
}

// The combination singled out by calibrate().
inline constexpr ConventionFlags calibrated_flags() { return {true, true, true, true}; }

struct NonSymmetricForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int meyer_tau(const Matrix& A, const Matrix& B, const ConventionFlags& f = calibrated_flags()) {
    std::size_t n = A.rows();
    if (A.cols() != n || B.rows() != n || B.cols() != n) throw std::invalid_argument("meyer_tau: size mismatch");
    if (!is_symplectic(A) || !is_symplectic(B)) throw std::invalid_argument("meyer_tau: non-symplectic input");
    Matrix Ap = f.use_inverse ? symplectic_inverse(A) : A;
    QMatrix M(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            M[i][j] = Rational(static_cast<long>(Ap(i, j) - (i == j)));
            Int b = B(i, j) - (i == j);
            M[i][n + j] = Rational(static_cast<long>(f.plus_v ? b : -b));
        }
    auto V = nullspace(M);
    if (V.empty()) return 0;
    // F y for every basis vector
    std::vector<std::vector<Rational>> Fy(V.size(), std::vector<Rational>(n)), Lx(V.size(), std::vector<Rational>(n));
    for (std::size_t a = 0; a < V.size(); ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < n; ++j) {
                Int b = B(i, j) - (i == j);
                if (b) s += Rational(static_cast<long>(f.negate_form ? b : -b)) * V[a][n + j];
            }
            Fy[a][i] = s;
            Lx[a][i] = f.left_sum ? V[a][i] + V[a][n + i] : V[a][i];
        }
    }
    QMatrix G(V.size(), std::vector<Rational>(V.size()));
    for (std::size_t a = 0; a < V.size(); ++a)
        for (std::size_t b = 0; b < V.size(); ++b) {
            Rational s = 0;
            for (std::size_t m = 0; m < n; m += 2) s += Lx[a][m] * Fy[b][m + 1] - Lx[a][m + 1] * Fy[b][m];
            G[a][b] = s;
        }
    for (std::size_t a = 0; a < G.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (G[a][b] != G[b][a]) throw NonSymmetricForm("Meyer form is not symmetric under these conventions");
    return symmetric_signature(G);
}

// Calibrated tau(A, T_v): the form on V is s1 s2 (1 - omega(x0, v)) where
// (A^{-1} - I) x0 = v, and vanishes when v is not in the image of A^{-1} - I.
inline int meyer_tau_transvection(const Matrix& A, const Vec& v) {
    std::size_t n = A.rows();
    Matrix Ai = symplectic_inverse(A);
    QMatrix M(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = Rational(static_cast<long>(Ai(i, j) - (i == j)));
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = Rational(static_cast<long>(v[i]));
    auto x0 = solve(M, rhs);
    if (!x0) return 0;
    Rational w = 0;
    for (std::size_t m = 0; m < n; m += 2)
        w += (*x0)[m] * Rational(static_cast<long>(v[m + 1])) - (*x0)[m + 1] * Rational(static_cast<long>(v[m]));
    Rational c = 1 - w;
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
}

struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sigma = - sum_{j>=2} tau(Psi(w_1..w_{j-1}), Psi(w_j)) over classes given directly.
inline int fibration_signature_classes(const std::vector<Vec>& cls, std::size_t rank,
                                       const ConventionFlags& f = calibrated_flags(), bool allow_fast = true) {
    Matrix P = Matrix::identity(rank);
    long s = 0;
    bool fast = allow_fast && f == calibrated_flags();
    for (std::size_t a = 0; a < cls.size(); ++a) {
        if (a > 0) s += fast ? meyer_tau_transvection(P, cls[a]) : meyer_tau(P, transvection_matrix(cls[a]), f);
        right_multiply_transvection(P, cls[a]);
    }
    if (!P.is_identity()) throw SignatureError("not a factorization of the identity");
    return int(-s);
}

inline int fibration_signature(const TwistWord& w, const CurveCatalog& cat,
                               const ConventionFlags& f = calibrated_flags()) {
    std::vector<Vec> cls;
    for (auto& l : w) {
        if (l.exp != 1) throw SignatureError("negative twists are not supported");
        cls.push_back(cat.at(l.id));
    }
    return fibration_signature_classes(cls, cat.rank, f);
}

// ------------------------------------------------------------ calibration

struct GateResult {
    ConventionFlags flags;
    bool symmetric = false;
    bool trivial = false;
    bool cocycle = false;
    int elliptic = 0;  // sigma((c1 c2)^6), 0 when not computable
    bool elliptic_ok = false;
    bool passed() const { return symmetric && trivial && cocycle && elliptic_ok; }
};

struct Calibration {
    ConventionFlags flags;
    std::vector<GateResult> gates;  // all 16 combinations
    int passing = 0;
};

namespace detail {

inline Vec random_class(std::mt19937_64& rng, std::size_t rank) {
    std::uniform_int_distribution<int> d(-1, 1);
    for (;;) {
        Vec v(rank);
        for (auto& x : v) x = d(rng);
        if (!is_zero(v)) return v;
    }
}

inline Matrix random_symplectic(std::mt19937_64& rng, std::size_t rank, int max_len = 5) {
    std::uniform_int_distribution<int> len(1, max_len), sg(0, 1);
    Matrix m = Matrix::identity(rank);
    int L = len(rng);
    for (int a = 0; a < L; ++a) right_multiply_transvection(m, random_class(rng, rank), sg(rng) ? 1 : -1);
    return m;
}

}  // namespace detail

inline std::vector<Vec> elliptic_classes() {
    std::vector<Vec> cls;
    for (int r = 0; r < 6; ++r) {
        cls.push_back({1, 0});
        cls.push_back({0, 1});
    }
    return cls;
}

inline Calibration calibrate(std::uint64_t seed = 20240611, int trials = 100) {
    Calibration cal;
    const std::size_t rank = 4;
    for (int code = 0; code < 16; ++code) {
        GateResult g;
        g.flags = ConventionFlags::from_code(code);
        std::mt19937_64 rng(seed);
        try {
            g.symmetric = true;
            for (int t = 0; t < trials && g.symmetric; ++t) {
                Matrix A = detail::random_symplectic(rng, rank), B = detail::random_symplectic(rng, rank);
                meyer_tau(A, B, g.flags);
            }
        } catch (const NonSymmetricForm&) {
            g.symmetric = false;
        }
        if (g.symmetric) {
            try {
                g.trivial = true;
                Matrix I = Matrix::identity(rank);
                for (int t = 0; t < trials && g.trivial; ++t) {
                    Matrix A = detail::random_symplectic(rng, rank);
                    if (meyer_tau(I, A, g.flags) != 0 || meyer_tau(A, I, g.flags) != 0) g.trivial = false;
                }
                g.cocycle = true;
                for (int t = 0; t < trials && g.cocycle; ++t) {
                    Matrix A = detail::random_symplectic(rng, rank), B = detail::random_symplectic(rng, rank),
                           C = detail::random_symplectic(rng, rank);
                    int lhs = meyer_tau(A, B, g.flags) + meyer_tau(A * B, C, g.flags);
                    int rhs = meyer_tau(A, B * C, g.flags) + meyer_tau(B, C, g.flags);
                    if (lhs != rhs) g.cocycle = false;
                }
                g.elliptic = fibration_signature_classes(elliptic_classes(), 2, g.flags, false);
                g.elliptic_ok = g.elliptic == -8;
            } catch (const NonSymmetricForm&) {
                g.symmetric = false;
            }
        }
        if (g.passed()) {
            ++cal.passing;
            cal.flags = g.flags;
        }
        cal.gates.push_back(g);
    }
    if (cal.passing != 1)
        throw std::logic_error("calibration: " + std::to_string(cal.passing) + " convention combinations passed, expected 1");
    return cal;
}

}  // namespace twistforge
