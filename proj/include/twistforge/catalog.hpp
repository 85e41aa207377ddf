#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "homology.hpp"
#include "word.hpp"

namespace twistforge {

// Main: copies glued along four-holed spheres, t_j is the chain curve between the
// neighbouring holes. Alternate: one extra handle per junction carries t_j and x_j.
enum class Variant { Main, Alternate };

inline std::string to_string(Variant v) { return v == Variant::Main ? "main" : "alternate"; }

struct SignChoice {
    int bs = 1;  // sign of the horizontal part of b^j_0
    int be = 1;  // sign of the vertical part of b^j_0
    int ka = 1;  // sign of the horizontal part of b^j_p, p >= 1
    bool operator==(const SignChoice&) const = default;
};

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveCatalog {
    SurfaceSpec spec;
    Variant variant = Variant::Main;
    std::size_t rank = 0;  // ambient rank 2G
    std::map<CycleId, Vec> classes;
    std::vector<SignChoice> signs;  // one per copy; ignored for k_j = 0
    std::string status = "unvalidated";

    bool contains(const CycleId& c) const { return classes.count(c) != 0; }
    const Vec& at(const CycleId& c) const {
        auto it = classes.find(c);
        if (it == classes.end()) throw CatalogError("unresolvable cycle " + to_string(c));
        return it->second;
    }
    bool operator==(const CurveCatalog& o) const {
        return spec == o.spec && variant == o.variant && rank == o.rank && classes == o.classes && signs == o.signs;
    }
};

inline Matrix word_matrix(const TwistWord& w, const CurveCatalog& cat) {
    Matrix m = Matrix::identity(cat.rank);
    for (auto& l : w) right_multiply_transvection(m, cat.at(l.id), l.exp);
    return m;
}

inline std::string convention_string() { return "J=+1 on (e_{2m-1},e_{2m}); T_v(x)=x+w(x,v)v; words act right to left"; }

// ------------------------------------------------------------------ layout

// Row holes are numbered 1..H. In the alternate variant a junction hole follows
// every copy but the last. Vertical coordinates follow the row: per copy k_j
// coordinates for the upper half of the column, then k_j for the lower half.
struct Layout {
    int H = 0;
    std::vector<int> hole_offset;    // holes before copy j (index j-1)
    std::vector<int> junction_hole;  // alternate only
    std::vector<int> column_offset;  // coordinate offset of copy j's column
    std::size_t rank = 0;

    Layout(const SurfaceSpec& s, Variant v) {
        int o = 0;
        for (std::size_t j = 1; j <= s.n(); ++j) {
            hole_offset.push_back(o);
            o += s.copy(j).h();
            if (v == Variant::Alternate && j < s.n()) {
                ++o;
                junction_hole.push_back(o);
            }
        }
        H = o;
        int col = 2 * H;
        for (auto& c : s.copies) {
            column_offset.push_back(col);
            col += 2 * c.k;
        }
        rank = std::size_t(col);
    }

    Vec zero() const { return Vec(rank, 0); }
    Vec u(int m) const {
        Vec x = zero();
        if (m >= 1 && m <= H) x[2 * (m - 1)] = 1;
        return x;
    }
    Vec v(int m) const {
        Vec x = zero();
        if (m >= 1 && m <= H) x[2 * (m - 1) + 1] = 1;
        return x;
    }
    // global chain position P: even -> v_{P/2}; odd -> u_{(P-1)/2} + u_{(P+1)/2}
    Vec chain(int P) const {
        if (P % 2 == 0) return v(P / 2);
        Vec a = u((P - 1) / 2), b = u((P + 1) / 2);
        for (std::size_t t = 0; t < rank; ++t) a[t] += b[t];
        return a;
    }
};

namespace detail {

inline Vec add(Vec a, const Vec& b, Int s = 1) {
    for (std::size_t t = 0; t < a.size(); ++t) a[t] += s * b[t];
    return a;
}

inline Vec scale(Vec a, Int s) {
    for (auto& x : a) x *= s;
    return a;
}

// Classes delta_1..delta_k in a genus k/2 lattice with omega(delta_p, delta_q) = 1 for p < q.
// s_a = -sum_{t<a} (w_t + z_t); delta_{k-2a} = s_a - z_{a+1}; delta_{k-2a+1} = s_a + w_{a+1};
// delta_1 = s_{k/2}.
inline std::vector<Vec> fan(int k) {
    int r = k / 2;
    std::vector<Vec> d(std::size_t(k + 1), Vec(std::size_t(k), 0));
    auto s = [&](int a) {
        Vec x(std::size_t(k), 0);
        for (int t = 0; t < a; ++t) x[2 * t] = x[2 * t + 1] = -1;
        return x;
    };
    for (int a = 0; a < r; ++a) {
        Vec x = s(a);
        x[2 * a + 1] -= 1;
        d[2 * r - 2 * a] = x;
    }
    for (int a = 1; a <= r; ++a) {
        Vec x = s(a);
        if (a < r) x[2 * a] += 1;
        d[2 * r - 2 * a + 1] = x;
    }
    return {d.begin() + 1, d.end()};
}

// beta with omega(beta, delta_p) = 1 for every p
inline Vec fan_dual(const std::vector<Vec>& d) {
    std::size_t k = d.size();
    QMatrix a(k, std::vector<Rational>(k));
    std::vector<Rational> rhs(k, Rational(1));
    // omega(x, d_p) = sum_m x_{2m} d_p[2m+1] - x_{2m+1} d_p[2m]
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t m = 0; m < k; m += 2) {
            a[p][m] = Rational(static_cast<long>(d[p][m + 1]));
            a[p][m + 1] = Rational(static_cast<long>(-d[p][m]));
        }
    auto x = solve(a, rhs);
    if (!x) throw CatalogError("vertical fan has no dual class");
    Vec out(k);
    for (std::size_t t = 0; t < k; ++t) {
        if ((*x)[t].get_den() != 1) throw CatalogError("vertical fan dual is not integral");
        out[t] = (*x)[t].get_num().get_si();
    }
    return out;
}

}  // namespace detail

// T_{c_1} ... T_{c_{2h}} applied to c_{2h+1}, rightmost twist first.
inline Vec conjugation_image(const std::vector<Vec>& chain) {
    if (chain.size() < 3 || chain.size() % 2 == 0)
        throw CatalogError("conjugation_image needs an odd chain of length >= 3");
    Vec b = chain.back();
    for (std::size_t m = chain.size() - 1; m-- > 0;) b = transvection_matrix(chain[m]).apply(b);
    return b;
}

// The copy's own chain with its ends closed up (no neighbouring holes).
inline std::vector<Vec> closed_chain(const Layout& L, const SurfaceSpec& s, std::size_t j) {
    int o = L.hole_offset[j - 1], h = s.copy(j).h();
    std::vector<Vec> ch;
    for (int m = 1; m <= 2 * h + 1; ++m) {
        if (m % 2 == 0) ch.push_back(L.v(o + m / 2));
        else {
            Vec x = L.zero();
            if (m > 1) x = detail::add(x, L.u(o + (m - 1) / 2));
            if (m < 2 * h + 1) x = detail::add(x, L.u(o + (m + 1) / 2));
            ch.push_back(x);
        }
    }
    return ch;
}

inline Vec derive_b0(const Layout& L, const SurfaceSpec& s, std::size_t j) {
    return conjugation_image(closed_chain(L, s, j));
}

// Horizontal class of b^j_0: the conjugation image plus a correction at each junction.
// Main: + (-1)^{h_j-1} u_first (j > 1) + u_last (j < n).
// Alternate: - (-1)^{h_j-1} u_{J_{j-1}} (j > 1) - u_{J_j} (j < n).
inline Vec b0_horizontal(const Layout& L, const SurfaceSpec& s, std::size_t j, Variant v) {
    Vec b = derive_b0(L, s, j);
    int o = L.hole_offset[j - 1], h = s.copy(j).h();
    Int sf = (h % 2 == 1) ? 1 : -1;
    if (v == Variant::Main) {
        if (j > 1) b = detail::add(b, L.u(o + 1), sf);
        if (j < s.n()) b = detail::add(b, L.u(o + h));
    } else {
        if (j > 1) b = detail::add(b, L.u(L.junction_hole[j - 2]), -sf);
        if (j < s.n()) b = detail::add(b, L.u(L.junction_hole[j - 1]), -1);
    }
    return b;
}

namespace detail {

inline void assign_classes(CurveCatalog& cat, const Layout& L) {
    const SurfaceSpec& s = cat.spec;
    cat.classes.clear();
    for (std::size_t j = 1; j <= s.n(); ++j) {
        const auto& c = s.copy(j);
        int o = L.hole_offset[j - 1], h = c.h(), i = c.i();
        for (int m = 1; m <= 2 * h + 1; ++m) cat.classes[CycleId::C(int(j), m)] = L.chain(2 * o + m);
        if (j < s.n()) {
            Vec t, x;
            if (cat.variant == Variant::Main) {
                t = add(L.u(o + h), L.u(o + h + 1));
                x = add(L.u(o + h), L.u(o + h + 1), -1);
            } else {
                int J = L.junction_hole[j - 1];
                t = add(L.u(J), L.v(J), -1);
                x = add(L.u(J), L.v(J));
            }
            cat.classes[CycleId::T(int(j))] = t;
            cat.classes[CycleId::X(int(j))] = x;
        }
        Vec rho = b0_horizontal(L, s, j, cat.variant);
        SignChoice sg = cat.signs.at(j - 1);
        if (c.k == 0) {
            cat.classes[CycleId::B(int(j), 0)] = rho;
            continue;
        }
        int col = L.column_offset[j - 1];
        auto dbl = [&](const Vec& d) {
            Vec x = L.zero();
            for (int t = 0; t < c.k; ++t) x[std::size_t(col + t)] = x[std::size_t(col + c.k + t)] = d[std::size_t(t)];
            return x;
        };
        auto d = fan(c.k);
        Vec beta = dbl(fan_dual(d));
        Vec kappa = add(L.u(o + i), L.u(o + i + 1), -1);
        cat.classes[CycleId::B(int(j), 0)] = add(scale(rho, sg.bs), beta, sg.be);
        for (int p = 1; p <= c.k; ++p)
            cat.classes[CycleId::B(int(j), p)] = add(scale(kappa, sg.ka), dbl(d[std::size_t(p - 1)]));
    }
}

inline TwistWord theta_for(const CurveCatalog& cat) {
    return cat.variant == Variant::Main ? theta_word(cat.spec) : theta_word_alternate(cat.spec);
}

inline bool involution_ok(const CurveCatalog& cat, const TwistWord& w) {
    Matrix m = word_matrix(w, cat);
    if (m.is_identity()) return false;
    return (m * m).is_identity();
}

}  // namespace detail

inline TwistWord theta_for(const CurveCatalog& cat) { return detail::theta_for(cat); }

struct BuildOptions {
    Variant variant = Variant::Main;
};

// Closed-form classes plus a deterministic search over the per-copy signs
// (bs, be, ka) in {+1,-1}^3, accepted by the oracle Psi(theta)^2 = I, Psi(theta) != I.
inline CurveCatalog build_catalog(const SurfaceSpec& spec, const BuildOptions& opt = {}) {
    auto rep = validate_spec(spec);
    if (!rep.ok()) throw ValidationError(rep.violations.front());
    CurveCatalog cat;
    cat.spec = spec;
    cat.variant = opt.variant;
    Layout L(spec, opt.variant);
    cat.rank = L.rank;
    cat.signs.assign(spec.n(), SignChoice{});
    std::vector<std::size_t> vert;
    for (std::size_t j = 1; j <= spec.n(); ++j)
        if (spec.copy(j).k > 0) vert.push_back(j);
    TwistWord w = opt.variant == Variant::Main ? theta_word(spec) : theta_word_alternate(spec);
    std::size_t total = std::size_t(1) << (3 * vert.size());
    for (std::size_t code = 0; code < total; ++code) {
        for (std::size_t a = 0; a < vert.size(); ++a) {
            std::size_t bits = (code >> (3 * a)) & 7u;
            cat.signs[vert[a] - 1] = {bits & 4u ? -1 : 1, bits & 2u ? -1 : 1, bits & 1u ? -1 : 1};
        }
        detail::assign_classes(cat, L);
        if (detail::involution_ok(cat, w)) return cat;
    }
    throw CatalogError("catalog underdetermined: no sign assignment gives Psi(theta)^2 = I with Psi(theta) != I");
}

// Catalog for hyperelliptic_word(h, i): the single copy (i 0 h-i).
inline CurveCatalog hyperelliptic_catalog(int h, int i) {
    return build_catalog(SurfaceSpec{{CopySpec{i, 0, h - i}}});
}

// ------------------------------------------------------------- validation

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CatalogReport {
    std::vector<CheckResult> checks;
    bool ok() const {
        for (auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Chain of copy j with junction aliases substituted (main) or the copy's own ends (alternate).
inline std::vector<CycleId> chain_ids(const SurfaceSpec& s, std::size_t j) {
    std::vector<CycleId> ids;
    for (int m = 1; m <= 2 * s.copy(j).h() + 1; ++m) ids.push_back(CycleId::C(int(j), m));
    return ids;
}

inline CheckResult check_gram(const CurveCatalog& cat) {
    const SurfaceSpec& s = cat.spec;
    auto w = [&](const CycleId& a, const CycleId& b) { return symplectic_form(cat.at(a), cat.at(b)); };
    for (std::size_t j = 1; j <= s.n(); ++j) {
        auto ch = chain_ids(s, j);
        for (std::size_t a = 0; a < ch.size(); ++a)
            for (std::size_t b = a + 1; b < ch.size(); ++b) {
                Int x = w(ch[a], ch[b]);
                bool good = (b == a + 1) ? (x == 1 || x == -1) : x == 0;
                if (!good)
                    return {"gram", false, "chain pattern broken at " + to_string(ch[a]) + "," + to_string(ch[b])};
            }
        const auto& c = s.copy(j);
        if (cat.variant == Variant::Main && j < s.n()) {
            if (cat.at(CycleId::C(int(j), 2 * c.h() + 1)) != cat.at(CycleId::T(int(j))))
                return {"gram", false, "alias C(j,2h+1) = T(j) broken for copy " + std::to_string(j)};
            if (cat.at(CycleId::C(int(j) + 1, 1)) != cat.at(CycleId::T(int(j))))
                return {"gram", false, "alias C(j+1,1) = T(j) broken for copy " + std::to_string(j)};
            if (w(CycleId::X(int(j)), CycleId::T(int(j))) != 0)
                return {"gram", false, "junction pair X,T not disjoint in homology at " + std::to_string(j)};
        }
        // vertical fan: every pair of b_p (p >= 1) meets algebraically twice,
        // and no b_p meets the middle chain curve
        for (int p = 1; p <= c.k; ++p) {
            if (w(CycleId::B(int(j), p), CycleId::C(int(j), 2 * c.i() + 1)) != 0)
                return {"gram", false, "b_p meets c_{2i+1} in copy " + std::to_string(j)};
            for (int q = p + 1; q <= c.k; ++q) {
                Int x = w(CycleId::B(int(j), p), CycleId::B(int(j), q));
                if (x != 2 && x != -2)
                    return {"gram", false, "vertical fan pattern broken in copy " + std::to_string(j)};
            }
        }
    }
    return {"gram", true, "chain and fan patterns hold"};
}

inline CheckResult check_nonzero(const CurveCatalog& cat) {
    for (auto& [id, v] : cat.classes) {
        if (v.size() != cat.rank) return {"nonzero", false, to_string(id) + " has wrong length"};
        if (is_zero(v)) return {"nonzero", false, to_string(id) + " is the zero class"};
    }
    return {"nonzero", true, "all classes nonzero"};
}

inline CheckResult check_involution(const CurveCatalog& cat) {
    TwistWord w = theta_for(cat);
    for (auto& l : w)
        if (!cat.contains(l.id)) return {"involution", false, "word letter " + to_string(l.id) + " missing"};
    Matrix m = word_matrix(w, cat);
    if (m.is_identity()) return {"involution", false, "Psi(theta) is the identity"};
    if (!(m * m).is_identity()) return {"involution", false, "Psi(theta)^2 != I"};
    if (cat.spec.k() == 0 && !(m == -Matrix::identity(cat.rank)))
        return {"involution", false, "k=0 but Psi(theta) != -I"};
    return {"involution", true, cat.spec.k() == 0 ? "Psi(theta) = -I" : "Psi(theta)^2 = I, Psi(theta) != I"};
}

// Checks (1)-(3); the signature check lives with the Meyer machinery.
inline CatalogReport validate_structure(const CurveCatalog& cat) {
    CatalogReport r;
    r.checks.push_back(check_gram(cat));
    r.checks.push_back(check_nonzero(cat));
    if (r.checks.back().passed) {
        try {
            r.checks.push_back(check_involution(cat));
        } catch (const std::exception& e) {
            r.checks.push_back({"involution", false, e.what()});
        }
    } else {
        r.checks.push_back({"involution", false, "skipped: zero class present"});
    }
    return r;
}

}  // namespace twistforge
