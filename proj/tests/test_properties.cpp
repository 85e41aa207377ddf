#include <doctest.h>

#include <algorithm>
#include <random>

#include "twistforge/invariants.hpp"
#include "twistforge/meyer.hpp"
#include "twistforge/rewrite.hpp"

using namespace twistforge;

namespace {

std::vector<Vec> classes_of(const TwistWord& w, const CurveCatalog& cat) {
    std::vector<Vec> out;
    for (auto& l : w) out.push_back(cat.at(l.id));
    return out;
}

// small configurations, so that 100 signature evaluations stay cheap
std::vector<SurfaceSpec> small_specs() { return enumerate_specs({4, 4, 2, 5}); }

}  // namespace

TEST_CASE("transvections are symplectic") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> g(1, 5), d(-3, 3);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 2 * std::size_t(g(rng));
        Vec v(n);
        do
            for (auto& x : v) x = d(rng);
        while (is_zero(v));
        Matrix m = transvection_matrix(v);
        CHECK(m.transpose() * J_matrix(n) * m == J_matrix(n));
        CHECK(is_symplectic(transvection_matrix(v, -1)));
    }
}

TEST_CASE("braid and commutation laws on matrices") {
    std::mt19937_64 rng(102);
    const std::size_t n = 6;
    for (int t = 0; t < 100; ++t) {
        Matrix g = detail::random_symplectic(rng, n);
        Vec e1(n, 0), e2(n, 0), e3(n, 0);
        e1[0] = e2[1] = e3[2] = 1;
        Vec a = g.apply(e1), b = g.apply(e2), c = g.apply(e3);
        REQUIRE(symplectic_form(a, b) == 1);
        REQUIRE(symplectic_form(a, c) == 0);
        Matrix A = transvection_matrix(a), B = transvection_matrix(b), C = transvection_matrix(c);
        CHECK(A * B * A == B * A * B);
        CHECK(A * C == C * A);
        CHECK(A * B * transvection_matrix(a, -1) == transvection_matrix(A.apply(b)));
    }
}

TEST_CASE("signature is invariant under cyclic rotation") {
    std::mt19937_64 rng(103);
    auto specs = small_specs();
    std::uniform_int_distribution<std::size_t> pick(0, specs.size() - 1);
    for (int t = 0; t < 100; ++t) {
        auto& s = specs[pick(rng)];
        auto cat = build_catalog(s);
        auto cls = classes_of(square(theta_word(s)), cat);
        int ref = fibration_signature_classes(cls, cat.rank);
        std::uniform_int_distribution<std::size_t> r(1, cls.size() - 1);
        std::rotate(cls.begin(), cls.begin() + long(r(rng)), cls.end());
        CHECK(fibration_signature_classes(cls, cat.rank) == ref);
    }
}

TEST_CASE("signature is invariant under Hurwitz moves") {
    std::mt19937_64 rng(104);
    auto specs = small_specs();
    std::uniform_int_distribution<std::size_t> pick(0, specs.size() - 1);
    for (int t = 0; t < 100; ++t) {
        auto& s = specs[pick(rng)];
        auto cat = build_catalog(s);
        auto cls = classes_of(square(theta_word(s)), cat);
        int ref = fibration_signature_classes(cls, cat.rank);
        std::uniform_int_distribution<std::size_t> pos(0, cls.size() - 2);
        for (int m = 0; m < 3; ++m) {
            std::size_t a = pos(rng);
            // (a, b) -> (T_a(b), a)
            Vec tb = transvection_matrix(cls[a]).apply(cls[a + 1]);
            cls[a + 1] = cls[a];
            cls[a] = tb;
        }
        CHECK(fibration_signature_classes(cls, cat.rank) == ref);
    }
}

TEST_CASE("Meyer cocycle identity") {
    std::mt19937_64 rng(105);
    for (int t = 0; t < 100; ++t) {
        Matrix a = detail::random_symplectic(rng, 4), b = detail::random_symplectic(rng, 4),
               c = detail::random_symplectic(rng, 4);
        CHECK(meyer_tau(a, b) + meyer_tau(a * b, c) == meyer_tau(a, b * c) + meyer_tau(b, c));
    }
}

TEST_CASE("Meyer cocycle conjugation invariance") {
    std::mt19937_64 rng(106);
    for (int t = 0; t < 100; ++t) {
        Matrix a = detail::random_symplectic(rng, 4), b = detail::random_symplectic(rng, 4),
               g = detail::random_symplectic(rng, 4);
        Matrix gi = symplectic_inverse(g);
        CHECK(meyer_tau(g * a * gi, g * b * gi) == meyer_tau(a, b));
    }
}

TEST_CASE("rewrite moves preserve Psi") {
    std::mt19937_64 rng(107);
    const int h = 3;
    auto cat = hyperelliptic_catalog(h, 1);
    std::uniform_int_distribution<int> idx(1, 2 * h + 1), sgn(0, 1), len(2, 12), coin(0, 9);
    int applied = 0;
    for (int t = 0; t < 1000; ++t) {
        TwistWord w;
        int L = len(rng);
        for (int a = 0; a < L; ++a) {
            if (coin(rng) == 0) w.push_back({CycleId::B(1, 0), sgn(rng) ? 1 : -1});
            else w.push_back({CycleId::C(1, idx(rng)), sgn(rng) ? 1 : -1});
        }
        // plant a braid triple now and then so braids get exercised
        if (coin(rng) < 3) {
            int m = std::uniform_int_distribution<int>(1, 2 * h)(rng);
            int e = sgn(rng) ? 1 : -1;
            std::size_t p = std::uniform_int_distribution<std::size_t>(0, w.size())(rng);
            w.insert(w.begin() + long(p), {{CycleId::C(1, m), e}, {CycleId::C(1, m + 1), e}, {CycleId::C(1, m), e}});
        }
        std::vector<RewriteMove> ok;
        for (std::size_t p = 0; p <= w.size(); ++p) {
            std::vector<RewriteMove> cands{{MoveKind::Braid, p, std::nullopt},
                                           {MoveKind::Commute, p, std::nullopt},
                                           {MoveKind::Cancel, p, std::nullopt},
                                           {MoveKind::ConjExpand, p, std::nullopt},
                                           {MoveKind::ConjCollapse, p, std::nullopt},
                                           {MoveKind::Introduce, p, Letter{CycleId::C(1, idx(rng)), 1}}};
            for (auto& c : cands) {
                try {
                    detail::rewrite_once(w, c, &cat);
                    ok.push_back(c);
                } catch (const RewriteError&) {
                }
            }
        }
        REQUIRE(!ok.empty());
        auto m = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
        TwistWord r;
        CHECK_NOTHROW(r = apply_move(w, m, cat));
        CHECK(sp_equivalent(w, r, cat));
        ++applied;
        // inverse pairs
        if (m.kind == MoveKind::ConjExpand)
            CHECK(apply_move(r, {MoveKind::ConjCollapse, m.pos, std::nullopt}, cat) == w);
        if (m.kind == MoveKind::Introduce) CHECK(apply_move(r, {MoveKind::Cancel, m.pos, std::nullopt}, cat) == w);
    }
    CHECK(applied == 1000);
}
