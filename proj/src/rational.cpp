#include "mts/rational.hpp"

#include <cctype>

#include "mts/error.hpp"

namespace mts {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&](std::size_t pos) { return ParseError("malformed rational '" + s + "'", pos); };
    std::size_t slash = s.find('/');
    auto check_int = [&](std::size_t from, std::size_t to, bool sign_ok) {
        if (from < to && sign_ok && (s[from] == '-' || s[from] == '+')) ++from;
        if (from >= to) throw bad(from);
        for (std::size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad(i);
    };
    if (slash == std::string::npos) {
        check_int(0, s.size(), true);
        return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
    }
    check_int(0, slash, true);
    check_int(slash + 1, s.size(), false);
    mpz_class num(s[0] == '+' ? s.substr(1, slash - 1) : s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational pow(const Rational& q, unsigned k) {
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r *= q;
    return r;
}

SparseVector SparseVector::unit(std::uint32_t k) {
    SparseVector v;
    v.set(k, 1);
    return v;
}

void SparseVector::set(std::uint32_t k, const Rational& v) {
    if (k == 0) throw DomainError("vector indices start at 1");
    if (v == 0) {
        m_.erase(k);
        return;
    }
    Rational& slot = m_[k];
    slot = v;
    slot.canonicalize();
}

Rational SparseVector::get(std::uint32_t k) const {
    auto it = m_.find(k);
    return it == m_.end() ? Rational(0) : it->second;
}

std::uint32_t SparseVector::min_support() const {
    if (m_.empty()) throw DomainError("empty vector has no support");
    return m_.begin()->first;
}

std::uint32_t SparseVector::max_support() const {
    if (m_.empty()) throw DomainError("empty vector has no support");
    return m_.rbegin()->first;
}

Rational SparseVector::l1() const {
    Rational s = 0;
    for (const auto& [k, v] : m_) s += abs(v);
    return s;
}

SparseVector SparseVector::restrict_to(std::uint32_t lo, std::uint32_t hi) const {
    SparseVector r;
    for (auto it = m_.lower_bound(lo); it != m_.end() && it->first <= hi; ++it)
        r.m_.emplace(it->first, it->second);
    return r;
}

SparseVector SparseVector::scaled(const Rational& c) const {
    SparseVector r;
    if (c == 0) return r;
    for (const auto& [k, v] : m_) r.m_.emplace(k, v * c);
    return r;
}

SparseVector& SparseVector::operator+=(const SparseVector& o) {
    for (const auto& [k, v] : o.m_) set(k, get(k) + v);
    return *this;
}

bool successive(const SparseVector& x, const SparseVector& y) {
    return !x.empty() && !y.empty() && x.max_support() < y.min_support();
}

}  // namespace mts

namespace mts {

std::string to_string(const SparseVector& x) {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [i, v] : x.entries()) {
        if (!out.empty()) out += v < 0 ? " - " : " + ";
        else if (v < 0) out += "-";
        Rational a = abs(v);
        if (a != 1) out += to_string(a) + " ";
        out += "e" + std::to_string(i);
    }
    return out;
}

}  // namespace mts
