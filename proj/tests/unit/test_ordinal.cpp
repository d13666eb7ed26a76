#include <doctest.h>

#include <random>

#include "../oracles/ordinal_oracle.hpp"
#include "mts/error.hpp"
#include "mts/ordinal.hpp"

using namespace mts;

namespace {
Ordinal o(const char* s) { return parse_ordinal(s); }
}  // namespace

TEST_CASE("addition absorbs smaller heads") {
    CHECK(ord_add(Ordinal{}, Ordinal::omega()) == Ordinal::omega());
    CHECK(ord_add(o("w*3"), o("w^2")) == o("w^2"));
    CHECK(ord_add(o("w^2"), o("w^2*2+w")) == o("w^2*3+w"));
}

TEST_CASE("multiplication") {
    CHECK(ord_mul(Ordinal::omega(), Ordinal{}).is_zero());
    CHECK(ord_mul(o("w+1"), o("w")) == o("w^2"));
    CHECK(ord_mul(o("w^2"), o("3")) == o("w^2*3"));
    CHECK(ord_mul(o("w+1"), o("2")) == o("w*2+1"));
}

TEST_CASE("omega powers, logarithm, fundamental sequences") {
    CHECK(ord_omega_pow(Ordinal{}) == o("1"));
    CHECK(ord_omega_pow(o("2")) == o("w^2"));
    CHECK(ord_omega_pow(o("w")) == o("w^w"));
    CHECK(ord_log(o("w^2*3+w*5")) == o("2"));
    CHECK(ord_log(o("1")).is_zero());
    CHECK(ord_log(o("w^w*2+w^3")) == o("w"));
    CHECK_THROWS_AS(ord_log(Ordinal{}), DomainError);
    CHECK(fund_seq(o("w"), 4) == o("4"));
    CHECK(fund_seq(o("w^2"), 3) == o("w*3"));
    CHECK(fund_seq(o("w^w"), 2) == o("w^2"));
    CHECK_THROWS_AS(fund_seq(o("w+1"), 2), DomainError);
    CHECK_THROWS_AS(fund_seq(Ordinal{}, 2), DomainError);
}

TEST_CASE("comparison") {
    CHECK(ord_cmp(o("w"), o("w")) == std::strong_ordering::equal);
    CHECK(ord_cmp(o("w*2+1"), o("w^2")) == std::strong_ordering::less);
    CHECK(ord_cmp(o("w^w"), o("w^3*9")) == std::strong_ordering::greater);
}

TEST_CASE("text round trip and parse errors") {
    for (const char* s : {"0", "7", "w", "w^2*3+w+4", "w^(w^2)", "w^(w+1)*2+w^w+5", "w^(w^(w^w))"})
        CHECK(to_string(o(s)) == s);
    CHECK(to_string(o("w^2*3+w*1+4")) == "w^2*3+w+4");
    CHECK_THROWS_AS(o("w^"), ParseError);
    CHECK_THROWS_AS(o("w+w^2"), ParseError);
    CHECK_THROWS_AS(o("w*0"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("w^(w^(w^w))", 2), Error);
}

TEST_CASE("agrees with the digit-triple model below w^3") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> digit(0, 3);
    auto draw = [&] {
        oracle::Small s;
        for (auto& d : s.d) d = static_cast<std::uint64_t>(digit(rng));
        return s;
    };
    for (int i = 0; i < 2000; ++i) {
        auto a = draw(), b = draw();
        auto A = oracle::to_ordinal(a), B = oracle::to_ordinal(b);
        REQUIRE(ord_cmp(A, B) == (a <=> b));
        auto sum = oracle::add(a, b);
        if (sum.degree() <= 2) REQUIRE(ord_add(A, B) == oracle::to_ordinal(sum));
        if (auto p = oracle::mul(a, b)) REQUIRE(ord_mul(A, B) == oracle::to_ordinal(*p));
        // associativity and left distributivity inside the model's range
        auto c = draw();
        auto C = oracle::to_ordinal(c);
        REQUIRE(ord_add(ord_add(A, B), C) == ord_add(A, ord_add(B, C)));
        REQUIRE(ord_mul(A, ord_add(B, C)) == ord_add(ord_mul(A, B), ord_mul(A, C)));
    }
}

TEST_CASE("predecessor and fundamental sequences stay below") {
    for (const char* s : {"w", "w^2", "w^w", "w^(w+1)", "w^2*3+w", "w^(w^2)"})
        for (std::uint64_t n = 1; n <= 5; ++n) {
            CHECK(fund_seq(o(s), n) < o(s));
            CHECK(fund_seq(o(s), n) < fund_seq(o(s), n + 1));
        }
    CHECK(predecessor(o("w^2+3")) == o("w^2+2"));
}
