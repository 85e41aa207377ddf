#include <doctest.h>

#include <map>

#include "twistforge/invariants.hpp"
#include "twistforge/word.hpp"

using namespace twistforge;

TEST_CASE("parse bare and bracketed letters") {
    auto w = parse_word("c2 c3 b0 c3 c2 c1");
    REQUIRE(w.size() == 6);
    for (auto& l : w) CHECK(l.exp == 1);
    CHECK(w[2].id == CycleId::B(1, 0));

    w = parse_word("c1^-1 c1");
    REQUIRE(w.size() == 2);
    CHECK(w[0].exp == -1);
    CHECK(w[1].exp == 1);

    w = parse_word("C[2,3] B[1,4]^-1 X[1] T[2]");
    REQUIRE(w.size() == 4);
    CHECK(w[0].id == CycleId::C(2, 3));
    CHECK(w[1] == Letter{CycleId::B(1, 4), -1});
    CHECK(w[2].id == CycleId::X(1));
    CHECK(w[3].id == CycleId::T(2));
    CHECK(to_string(w) == "C[2,3] B[1,4]^-1 X[1] T[2]");
}

TEST_CASE("malformed letters") {
    CHECK_THROWS_AS(parse_word("c0"), WordParseError);
    CHECK_THROWS_AS(parse_word("d1"), WordParseError);
    CHECK_THROWS_AS(parse_word("c1^2"), WordParseError);
    CHECK_THROWS_AS(parse_word("C[1]"), WordParseError);
    CHECK_THROWS_AS(parse_word("C[0,1]"), WordParseError);
    CHECK(parse_word("   ").empty());
}

TEST_CASE("single copy words") {
    CHECK(to_string(theta_word(parse_spec("(0 2 1)"))) ==
          "C[1,2] C[1,3] B[1,0] C[1,3] C[1,2] B[1,1] B[1,2] C[1,1]");
    CHECK(theta_word(parse_spec("(0 0 1)")) == parse_word("c2 c3 b0 c3 c2 c1"));
    CHECK(theta_word(parse_spec("(0 2 1,1 2 0)")).size() == 14);
}

TEST_CASE("hyperelliptic words") {
    CHECK(hyperelliptic_word(1, 0) == parse_word("c2 c3 b0 c3 c2 c1"));
    CHECK(hyperelliptic_word(3, 1).size() == 14);
    // c_{2i+2}..c_{2h+1} c_{2i}..c_1 b_0 c_{2h+1}..c_{2i+2} c_1..c_{2i} c_{2i+1}
    CHECK(hyperelliptic_word(2, 1) == parse_word("c4 c5 c2 c1 b0 c5 c4 c1 c2 c3"));
    CHECK(hyperelliptic_word(1, 1) == parse_word("c2 c1 b0 c1 c2 c3"));
    CHECK(standard_hyperelliptic_word(1) == parse_word("c1 c2 c3 c3 c2 c1"));
    CHECK_THROWS(hyperelliptic_word(2, 3));
    CHECK_THROWS(hyperelliptic_word(0, 0));
}

TEST_CASE("squares and counts") {
    CHECK(square(theta_word(parse_spec("(0 2 1,1 2 0)"))).size() == 28);
    CHECK(square(theta_word(parse_spec("(1 4 1,1 2 1,1 6 2)"))).size() == 84);
    CHECK(square(theta_word(parse_spec("(0 0 1)"))).size() == 12);
    auto c = count_report(parse_spec("(3 4 2,1 4 2)"));
    CHECK(c.consistent());
    CHECK(c.theta_length == 4 * 8 + 8 + 2);
}

TEST_CASE("word length law over the sweep") {
    auto specs = enumerate_specs({10, 10, 3, 10});
    REQUIRE(specs.size() > 1000);
    for (auto& s : specs) {
        auto c = count_report(s);
        CHECK(c.consistent());
    }
}

TEST_CASE("letter multiplicities") {
    for (auto t : {"(0 2 1,1 2 0)", "(2 2 1,1 2 2,1 4 1)", "(3 4 2,1 4 2)", "(1 0 2)"}) {
        auto s = parse_spec(t);
        std::map<CycleId, int> count;
        for (auto& l : theta_word(s)) ++count[l.id];
        for (std::size_t j = 1; j <= s.n(); ++j) {
            const auto& c = s.copy(j);
            CHECK(count[CycleId::B(int(j), 0)] == 1);
            CHECK(count[CycleId::C(int(j), 2 * c.i() + 1)] == 1);
            for (int p = 1; p <= c.k; ++p) CHECK(count[CycleId::B(int(j), p)] == 1);
        }
    }
}

TEST_CASE("alternate form") {
    auto s = parse_spec("(1 2 1)");
    CHECK(theta_word_alternate(s) == theta_word(s));
    auto two = parse_spec("(0 2 1,1 2 0)");
    CHECK(theta_word_alternate(two).size() == theta_word(two).size() + 4);
}
