#include <doctest.h>

#include "../oracles/family_oracle.hpp"
#include "mts/error.hpp"
#include "mts/family.hpp"
#include "mts/generators.hpp"

using namespace mts;

namespace {
Family f(const char* s) { return parse_family(s); }
FinSet set(const char* s) { return parse_finset(s); }
}  // namespace

TEST_CASE("membership examples") {
    CHECK(member(f("S(1)"), {2, 3}));
    CHECK_FALSE(member(f("S(1)"), {1, 2}));
    CHECK(member(f("S(1)[S(1)]"), {2, 3, 4, 5}));
    CHECK(member(f("S(1)[S0]"), {3, 4, 5}));
    CHECK(member(f("S0"), {}));
    CHECK_FALSE(member(f("A(2)"), {1, 2, 3}));
}

TEST_CASE("greedy decomposition") {
    CHECK(greedy_decompose(f("S(1)"), {2, 3, 4, 5, 6}) == std::vector<FinSet>{{2, 3}, {4, 5, 6}});
    CHECK(greedy_decompose(f("S(1)"), {1, 5}) == std::vector<FinSet>{{1}, {5}});
    CHECK(greedy_decompose(f("A(2)"), {3, 4, 5}) == std::vector<FinSet>{{3, 4}, {5}});
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(f("S(1)"), {{2}, {4, 5}}));
    CHECK_FALSE(is_admissible(f("S(1)"), {{1}, {2}}));
    CHECK(is_admissible(f("A(3)"), {{1}, {3}, {7, 9}}));
    CHECK_FALSE(is_admissible(f("A(3)"), {{1, 4}, {3}}));
}

TEST_CASE("tail restriction") {
    Family t = tail_restrict(f("S(1)"), 3);
    CHECK_FALSE(member(t, {2, 3}));
    CHECK(member(t, {2}));
    CHECK(member(t, {3, 4, 5}));
}

TEST_CASE("enumeration and inclusion") {
    CHECK(enumerate_restriction(f("A(1)"), 2) == std::vector<FinSet>{{}, {1}, {2}});
    CHECK(enumerate_restriction(f("S(1)"), 3) == std::vector<FinSet>{{}, {1}, {2}, {3}, {2, 3}});
    // Only {1,2}, {1,2,3}, {1,2,4}, {1,3,4}, {1,2,3,4}, {2,3,4} fall outside: {1} forces a lone block.
    auto b = enumerate_restriction(f("S(1)[S(1)]"), 4);
    CHECK(b.size() == 9);
    for (const auto& s : b) CHECK(oracle::in(oracle::Fam{oracle::Fam::S2}, s));
    CHECK(family_subset_upto(f("S(1)"), f("S(1)[S(1)]"), 10));
    CHECK_FALSE(family_subset_upto(f("A(3)"), f("A(2)"), 5));
    CHECK(family_subset_upto(f("S(2)"), f("S(1)[S(1)]"), 12));
    CHECK(family_subset_upto(f("S(1)[S(1)]"), f("S(2)"), 12));
}

TEST_CASE("spreading") {
    CHECK(spreading_of({1, 3}, {2, 5}));
    CHECK_FALSE(spreading_of({1, 3}, {2}));
    CHECK(spreading_of({2, 4, 6}, {2, 4, 6}));
    CHECK_FALSE(spreading_of({2, 4}, {1, 5}));
}

TEST_CASE("concatenation, R families and hulls") {
    Family c = f("(A(2),S(1))");
    CHECK(member(c, {1, 2, 3}));       // {1,2} then {3}
    CHECK(member(c, {5, 6, 7, 8, 9}));  // {5,6} then {7,8,9}
    CHECK(member(c, {1, 2, 3, 4}));
    CHECK_FALSE(member(c, {1, 2, 3, 4, 5, 6}));
    Family h = f("hull({3,7})");
    CHECK(member(h, {4, 9}));
    CHECK_FALSE(member(h, {1}));
    CHECK(member(h, {3}));
    CHECK(member(f("R(2)"), {4, 9}));
    CHECK_FALSE(member(f("R(2)"), {4, 5, 9}));
    CHECK(member(f("R(w)"), {3, 4, 5}));
}

TEST_CASE("Schreier limit stages") {
    // min variant: S(w) on F is S(min F)
    CHECK(member(f("S(w)"), {3, 4, 5, 6, 7, 8}));
    CHECK_FALSE(member(f("S(w)"), {2, 3, 4, 5, 6, 7, 8}));
    // card variant uses |F|
    CHECK(member(f("S(w;card)"), {2, 3}));
    // growth function shifts the index
    GrowthRegistry reg;
    reg.add("dbl", {2, 4, 6, 8, 10, 12});
    CHECK(member(parse_family("S(w;dbl)", reg), {2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST_CASE("greedy bracket membership matches exhaustive decomposition") {
    using oracle::Fam;
    Fam s1{Fam::S1}, s2{Fam::S2}, a3{Fam::A, 3};
    std::vector<std::pair<const char*, const Fam*>> fams{{"S(1)", &s1}, {"S(2)", &s2}, {"A(3)", &a3}};
    Rng rng(5);
    for (const auto& [gt, g] : fams)
        for (const auto& [ht, h] : fams) {
            Family lib = Family::bracket(f(gt), f(ht));
            Fam br{Fam::Bracket, 0, g, h};
            for (int i = 0; i < 60; ++i) {
                FinSet s = random_finset(rng, 1, 10, 0.5);
                REQUIRE(member(lib, s) == oracle::in(br, s));
            }
        }
}

TEST_CASE("parser round trip and errors") {
    for (const char* s : {"S0", "A(3)", "S(1)[S(1)]", "(A(2),S(1))", "S(w^2*3+w)", "S(w;card)",
                          "tail(S(2),3)", "hull({1,3},{2})", "R(w+1)", "(S(1)|A(2))[S0]"})
        CHECK(to_string(f(s)) == s);
    CHECK_THROWS_AS(f("S("), ParseError);
    CHECK_THROWS_AS(f("S(1)[S(1)"), ParseError);
    CHECK_THROWS_AS(f("S(w;nosuch)"), ParseError);
    CHECK_THROWS_AS(f("Q"), ParseError);
    CHECK_THROWS_AS(set("{2,1}"), ParseError);
    bool threw = false;
    try {
        f("S(1)[X]");
    } catch (const ParseError& e) {
        threw = true;
        CHECK(e.position == 5);
    }
    CHECK(threw);
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        Family g = random_family(rng);
        std::string text = to_string(g);
        Family back = parse_family(text);
        REQUIRE(to_string(back) == text);
        REQUIRE(same_family(g, back));
    }
}

TEST_CASE("heredity and spreading on a random corpus") {
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        Family g = random_family(rng, 2);
        if (!g.regular()) continue;
        for (const auto& s : enumerate_restriction(g, 7)) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                FinSet t = s;
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(drop));
                REQUIRE(member(g, t));
            }
            if (!s.empty()) {
                FinSet up = s;
                for (auto& e : up) e += 1;
                REQUIRE(member(g, up));
            }
        }
    }
}
