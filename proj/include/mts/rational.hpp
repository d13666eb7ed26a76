#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace mts {

using Rational = mpq_class;

// "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);
Rational pow(const Rational& q, unsigned k);

// Finitely supported vector on {1,2,...}. Zero entries are never stored.
class SparseVector {
public:
    using Map = std::map<std::uint32_t, Rational>;

    SparseVector() = default;
    static SparseVector unit(std::uint32_t k);

    void set(std::uint32_t k, const Rational& v);
    Rational get(std::uint32_t k) const;
    const Map& entries() const { return m_; }
    bool empty() const { return m_.empty(); }
    std::size_t size() const { return m_.size(); }
    std::uint32_t min_support() const;
    std::uint32_t max_support() const;
    Rational l1() const;

    SparseVector restrict_to(std::uint32_t lo, std::uint32_t hi) const;
    SparseVector scaled(const Rational& c) const;
    SparseVector& operator+=(const SparseVector& o);

    friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.m_ == b.m_; }

private:
    Map m_;
};

// Blocks x < y: max supp x < min supp y (empty vectors never qualify).
bool successive(const SparseVector& x, const SparseVector& y);
// "3/4 e2 + e5"; "0" for the zero vector.
std::string to_string(const SparseVector& x);

}  // namespace mts
