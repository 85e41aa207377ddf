#include <doctest.h>

#include <random>

#include "twistforge/catalog_io.hpp"
#include "twistforge/golden.hpp"
#include "twistforge/meyer.hpp"

using namespace twistforge;

TEST_CASE("trivial arguments") {
    std::mt19937_64 rng(1);
    Matrix I = Matrix::identity(4);
    for (int t = 0; t < 30; ++t) {
        Matrix a = detail::random_symplectic(rng, 4);
        CHECK(meyer_tau(I, a) == 0);
        CHECK(meyer_tau(a, I) == 0);
    }
}

TEST_CASE("elliptic fibration") {
    CHECK(fibration_signature_classes(elliptic_classes(), 2) == -8);
    CHECK(fibration_signature_classes(elliptic_classes(), 2, calibrated_flags(), false) == -8);
    CHECK(fibration_signature_classes({}, 4) == 0);
}

TEST_CASE("calibration selects one combination") {
    auto cal = calibrate();
    CHECK(cal.passing == 1);
    CHECK(cal.flags == calibrated_flags());
    CHECK(cal.gates.size() == 16);
    // flipping only the sign of the form gives +8 and is rejected
    ConventionFlags f = calibrated_flags();
    f.negate_form = false;
    const GateResult& g = cal.gates[std::size_t(f.code())];
    CHECK(g.flags == f);
    CHECK(g.elliptic == 8);
    CHECK_FALSE(g.passed());
}

TEST_CASE("flag strings") {
    auto f = ConventionFlags::from_code(5);
    CHECK(parse_flags(to_string(f)) == f);
    CHECK(to_string(calibrated_flags()) == "inverse=1,negate_form=1,left_sum=1,plus_v=1");
    CHECK_THROWS(parse_flags("inverse=1"));
}

TEST_CASE("fast transvection path agrees with the general cocycle") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Matrix a = detail::random_symplectic(rng, 4);
        Vec v = detail::random_class(rng, 4);
        CHECK(meyer_tau_transvection(a, v) == meyer_tau(a, transvection_matrix(v)));
    }
}

TEST_CASE("cocycle value bounded by the dimension of V") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        Matrix a = detail::random_symplectic(rng, 4), b = detail::random_symplectic(rng, 4);
        int s = meyer_tau(a, b);
        CHECK(s <= 8);
        CHECK(s >= -8);
    }
}

TEST_CASE("tabulated signature totals") {
    for (auto& g : golden_table) {
        auto s = parse_spec(std::string(g.spec));
        auto cat = build_catalog(s);
        INFO(g.spec);
        CHECK(fibration_signature(square(theta_word(s)), cat) == g.sigma);
    }
}

TEST_CASE("single copy totals") {
    for (auto t : {"(0 0 1)", "(0 2 1)", "(0 4 1)", "(1 2 0)"}) {
        auto s = parse_spec(t);
        CHECK(fibration_signature(square(theta_word(s)), build_catalog(s)) == -8);
    }
}

TEST_CASE("signature input errors") {
    auto cat = build_catalog(parse_spec("(0 0 1)"));
    CHECK_THROWS_AS(fibration_signature(theta_word(cat.spec), cat), SignatureError);  // Psi = -I
    CHECK_THROWS_AS(fibration_signature(parse_word("c1^-1 c1"), cat), SignatureError);
}

TEST_CASE("golden validation hook") {
    auto cat = build_catalog(parse_spec("(0 2 1,1 2 0)"));
    auto rep = validate_catalog(cat);
    CHECK(rep.ok());
    CHECK(rep.checks.back().name == "golden");
}
