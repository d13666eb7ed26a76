#pragma once

// Ordinals below epsilon_0 in Cantor normal form.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mts {

struct Term;

struct Ordinal {
    std::vector<Term> terms;  // strictly decreasing exponents, empty = 0

    Ordinal() = default;
    static Ordinal nat(std::uint64_t n);
    static Ordinal omega();

    bool is_zero() const { return terms.empty(); }
    bool is_successor() const;
    bool is_limit() const { return !is_zero() && !is_successor(); }
    bool is_finite() const;
    std::uint64_t to_nat() const;  // requires is_finite()
    int depth() const;
};

struct Term {
    Ordinal exp;
    std::uint64_t coef = 1;
};

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b);
inline bool operator==(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) == 0; }
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b); }

Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
Ordinal ord_omega_pow(const Ordinal& a);
Ordinal ord_log(const Ordinal& a);
Ordinal fund_seq(const Ordinal& a, std::uint64_t n);
Ordinal predecessor(const Ordinal& a);

std::string to_string(const Ordinal& a);

constexpr int kDefaultDepthCap = 16;

// Grammar: ord := term {"+" term}; term := primary ["*" nat];
// primary := nat | "w" ["^" (nat | "w" | "(" ord ")")].
Ordinal parse_ordinal(std::string_view text, int depth_cap = kDefaultDepthCap);
// Parses a prefix starting at pos and advances pos past it.
Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos,
                             int depth_cap = kDefaultDepthCap);

}  // namespace mts
