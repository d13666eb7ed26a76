#include <cctype>

#include "mts/error.hpp"
#include "mts/family.hpp"

namespace mts {

std::string to_string(const Family& f) {
    switch (f.kind()) {
        case Kind::S0:
            return "S0";
        case Kind::A:
            return "A(" + std::to_string(f.param()) + ")";
        case Kind::Schreier: {
            std::string s = "S(" + to_string(f.ordinal());
            if (!f.growth().is_identity()) s += ";" + f.growth().name();
            if (f.variant() == LimitVariant::Card) s += ";card";
            return s + ")";
        }
        case Kind::Bracket: {
            const Family& outer = f.children()[0];
            std::string o = to_string(outer);
            if (outer.kind() == Kind::Union) o = "(" + o + ")";
            return o + "[" + to_string(f.children()[1]) + "]";
        }
        case Kind::Concat: {
            std::string s = "(";
            for (std::size_t i = 0; i < f.children().size(); ++i)
                s += (i ? "," : "") + to_string(f.children()[i]);
            return s + ")";
        }
        case Kind::Union: {
            std::string s;
            for (std::size_t i = 0; i < f.children().size(); ++i)
                s += (i ? "|" : "") + to_string(f.children()[i]);
            return s;
        }
        case Kind::Tail:
            return "tail(" + to_string(f.children()[0]) + "," + std::to_string(f.param()) + ")";
        case Kind::R:
            return "R(" + to_string(f.ordinal()) + ")";
        case Kind::Hull: {
            std::string s = "hull(";
            for (std::size_t i = 0; i < f.generators().size(); ++i)
                s += (i ? "," : "") + to_string(f.generators()[i]);
            return s + ")";
        }
    }
    return "?";
}

bool same_family(const Family& a, const Family& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Kind::S0:
            return true;
        case Kind::A:
            return a.param() == b.param();
        case Kind::Schreier:
            return a.ordinal() == b.ordinal() && a.growth().name() == b.growth().name() &&
                   a.variant() == b.variant();
        case Kind::R:
            return a.ordinal() == b.ordinal();
        case Kind::Hull:
            return a.generators() == b.generators();
        case Kind::Tail:
            if (a.param() != b.param()) return false;
            break;
        default:
            break;
    }
    if (a.children().size() != b.children().size()) return false;
    for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!same_family(a.children()[i], b.children()[i])) return false;
    return true;
}

namespace {

struct FamilyParser {
    std::string_view s;
    const GrowthRegistry& reg;
    LimitVariant variant;
    int depth_cap;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool keyword(std::string_view kw) {
        skip();
        if (s.substr(pos, kw.size()) != kw) return false;
        pos += kw.size();
        return true;
    }
    std::uint32_t nat() {
        skip();
        std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > 0xffffffffu) throw ParseError("number too large", start);
            ++pos;
        }
        if (pos == start) throw ParseError("expected a natural number", start);
        return static_cast<std::uint32_t>(v);
    }
    std::string ident() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) throw ParseError("expected an identifier", start);
        return std::string(s.substr(start, pos - start));
    }
    Ordinal ordinal() {
        skip();
        return parse_ordinal_prefix(s, pos, depth_cap);
    }
    FinSet finset() {
        skip();
        std::size_t start = pos;
        std::size_t close = s.find('}', pos);
        if (close == std::string_view::npos) throw ParseError("unterminated set", start);
        try {
            FinSet r = parse_finset(s.substr(start, close + 1 - start));
            pos = close + 1;
            return r;
        } catch (const ParseError& e) {
            throw ParseError("malformed set", start + e.position);
        }
    }

    Family atom() {
        skip();
        std::size_t at = pos;
        if (keyword("S0")) return Family::s0();
        if (keyword("S(")) {
            Ordinal a = ordinal();
            auto g = GrowthFn::identity();
            LimitVariant v = variant;
            while (eat(';')) {
                std::size_t name_at = pos;
                std::string name = ident();
                if (name == "card")
                    v = LimitVariant::Card;
                else if (name == "min")
                    v = LimitVariant::Min;
                else if (auto fn = reg.get(name))
                    g = fn;
                else
                    throw ParseError("unknown growth function '" + name + "'", name_at);
            }
            expect(')');
            return Family::schreier(a, g, v);
        }
        if (keyword("A(")) {
            std::size_t n_at = pos;
            std::uint32_t n = nat();
            if (n == 0) throw ParseError("A(n) needs n >= 1", n_at);
            expect(')');
            return Family::a(n);
        }
        if (keyword("R(")) {
            std::size_t o_at = pos;
            Ordinal b = ordinal();
            if (b.is_zero()) throw ParseError("R(0) is not defined", o_at);
            expect(')');
            return Family::r(b);
        }
        if (keyword("tail(")) {
            Family f = expr();
            expect(',');
            std::size_t k_at = pos;
            std::uint32_t k = nat();
            if (k == 0) throw ParseError("tail index starts at 1", k_at);
            expect(')');
            return Family::tail(f, k);
        }
        if (keyword("hull(")) {
            std::vector<FinSet> gens;
            if (!peek(')')) {
                do gens.push_back(finset());
                while (eat(','));
            }
            expect(')');
            return Family::hull(std::move(gens));
        }
        if (eat('(')) {
            std::vector<Family> parts{expr()};
            while (eat(',')) parts.push_back(expr());
            expect(')');
            return Family::concat(std::move(parts));
        }
        throw ParseError("expected a family", at);
    }

    Family postfix() {
        Family f = atom();
        while (eat('[')) {
            Family inner = expr();
            expect(']');
            f = Family::bracket(f, inner);
        }
        return f;
    }

    Family expr() {
        std::vector<Family> parts{postfix()};
        while (eat('|')) parts.push_back(postfix());
        return Family::union_of(std::move(parts));
    }
};

}  // namespace

Family parse_family(std::string_view text, const GrowthRegistry& reg, LimitVariant default_variant,
                    int depth_cap) {
    FamilyParser p{text, reg, default_variant, depth_cap};
    Family f = p.expr();
    p.skip();
    if (p.pos != text.size()) throw ParseError("trailing input after family", p.pos);
    return f;
}

}  // namespace mts
