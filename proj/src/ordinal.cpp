#include "mts/ordinal.hpp"

#include <cctype>
#include <limits>

#include "mts/error.hpp"

namespace mts {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw DomainError("ordinal coefficient overflow");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw DomainError("ordinal coefficient overflow");
    return a * b;
}

Ordinal single(Ordinal exp, std::uint64_t coef) {
    Ordinal r;
    r.terms.push_back(Term{std::move(exp), coef});
    return r;
}

}  // namespace

Ordinal Ordinal::nat(std::uint64_t n) {
    return n == 0 ? Ordinal{} : single(Ordinal{}, n);
}

Ordinal Ordinal::omega() { return single(nat(1), 1); }

bool Ordinal::is_successor() const {
    return !terms.empty() && terms.back().exp.is_zero();
}

bool Ordinal::is_finite() const {
    return terms.empty() || (terms.size() == 1 && terms[0].exp.is_zero());
}

std::uint64_t Ordinal::to_nat() const {
    if (!is_finite()) throw DomainError("ordinal " + to_string(*this) + " is not finite");
    return terms.empty() ? 0 : terms[0].coef;
}

int Ordinal::depth() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, 1 + t.exp.depth());
    return d;
}

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) {
    std::size_t n = std::min(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = ord_cmp(a.terms[i].exp, b.terms[i].exp); c != 0) return c;
        if (auto c = a.terms[i].coef <=> b.terms[i].coef; c != 0) return c;
    }
    return a.terms.size() <=> b.terms.size();
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& lead = b.terms[0].exp;
    Ordinal r;
    for (const auto& t : a.terms) {
        auto c = ord_cmp(t.exp, lead);
        if (c > 0) {
            r.terms.push_back(t);
        } else {
            if (c == 0) {
                r.terms.push_back(Term{lead, checked_add(t.coef, b.terms[0].coef)});
                r.terms.insert(r.terms.end(), b.terms.begin() + 1, b.terms.end());
                return r;
            }
            break;
        }
    }
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}

Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Ordinal r;
    for (const auto& t : b.terms) {
        Ordinal piece;
        if (t.exp.is_zero()) {
            piece.terms = a.terms;
            piece.terms[0].coef = checked_mul(a.terms[0].coef, t.coef);
        } else {
            piece = single(ord_add(a.terms[0].exp, t.exp), t.coef);
        }
        r = ord_add(r, piece);
    }
    return r;
}

Ordinal ord_omega_pow(const Ordinal& a) { return single(a, 1); }

Ordinal ord_log(const Ordinal& a) {
    if (a.is_zero()) throw DomainError("log of 0 is undefined");
    return a.terms[0].exp;
}

Ordinal predecessor(const Ordinal& a) {
    if (!a.is_successor()) throw DomainError(to_string(a) + " is not a successor");
    Ordinal r = a;
    if (--r.terms.back().coef == 0) r.terms.pop_back();
    return r;
}

Ordinal fund_seq(const Ordinal& a, std::uint64_t n) {
    if (!a.is_limit())
        throw DomainError("fundamental sequence needs a limit ordinal, got " + to_string(a));
    if (n == 0) throw DomainError("fundamental sequence index starts at 1");
    Ordinal r = a;
    Term last = r.terms.back();
    r.terms.pop_back();
    if (last.coef > 1) r.terms.push_back(Term{last.exp, last.coef - 1});
    Ordinal tail = last.exp.is_successor() ? single(predecessor(last.exp), n)
                                           : single(fund_seq(last.exp, n), 1);
    return ord_add(r, tail);
}

namespace {

std::string exp_string(const Ordinal& e) {
    if (e.is_finite()) return std::to_string(e.to_nat());
    if (e == Ordinal::omega()) return "w";
    return "(" + to_string(e) + ")";
}

}  // namespace

std::string to_string(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& t : a.terms) {
        if (!s.empty()) s += "+";
        if (t.exp.is_zero()) {
            s += std::to_string(t.coef);
            continue;
        }
        s += "w";
        if (!(t.exp == Ordinal::nat(1))) s += "^" + exp_string(t.exp);
        if (t.coef != 1) s += "*" + std::to_string(t.coef);
    }
    return s;
}

namespace {

struct OrdParser {
    std::string_view s;
    std::size_t& pos;
    int cap;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::uint64_t nat() {
        skip();
        std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(s[pos] - '0'));
            ++pos;
        }
        if (pos == start) throw ParseError("expected a natural number", start);
        return v;
    }
    bool at_digit() {
        skip();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }

    Ordinal primary(int level) {
        if (at_digit()) return Ordinal::nat(nat());
        std::size_t at = pos;
        if (!eat('w')) throw ParseError("expected 'w' or a natural number", at);
        if (level + 1 > cap) throw ParseError("ordinal nesting exceeds depth cap", at);
        if (!eat('^')) return Ordinal::omega();
        if (at_digit()) return ord_omega_pow(Ordinal::nat(nat()));
        if (eat('w')) return ord_omega_pow(Ordinal::omega());
        at = pos;
        if (!eat('(')) throw ParseError("expected exponent", at);
        Ordinal e = ord(level + 1);
        at = pos;
        if (!eat(')')) throw ParseError("expected ')'", at);
        return ord_omega_pow(e);
    }

    Ordinal term(int level) {
        Ordinal p = primary(level);
        if (eat('*')) {
            std::size_t at = pos;
            std::uint64_t k = nat();
            if (k == 0) throw ParseError("coefficient must be positive", at);
            p = ord_mul(p, Ordinal::nat(k));
        }
        return p;
    }

    // Normal form only: every later term has a strictly smaller exponent.
    Ordinal ord(int level) {
        Ordinal r = term(level);
        while (eat('+')) {
            skip();
            std::size_t at = pos;
            Ordinal t = term(level);
            if (t.is_zero() || r.is_zero() || !(t.terms[0].exp < r.terms.back().exp))
                throw ParseError("terms must have strictly decreasing exponents", at);
            r.terms.push_back(t.terms[0]);
        }
        return r;
    }
};

}  // namespace

Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos, int depth_cap) {
    OrdParser p{text, pos, depth_cap};
    Ordinal r = p.ord(0);
    p.skip();
    return r;
}

Ordinal parse_ordinal(std::string_view text, int depth_cap) {
    std::size_t pos = 0;
    Ordinal r = parse_ordinal_prefix(text, pos, depth_cap);
    if (pos != text.size()) throw ParseError("trailing input after ordinal", pos);
    return r;
}

}  // namespace mts
