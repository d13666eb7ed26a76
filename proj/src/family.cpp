#include "mts/family.hpp"

#include <algorithm>
#include <cctype>

#include "mts/error.hpp"

namespace mts {

bool is_finset(const FinSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) return false;
        if (i > 0 && s[i - 1] >= s[i]) return false;
    }
    return true;
}

std::string to_string(const FinSet& s) {
    std::string r = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) r += ",";
        r += std::to_string(s[i]);
    }
    return r + "}";
}

FinSet parse_finset(std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '{') throw ParseError("expected '{'", pos);
    ++pos;
    FinSet s;
    skip();
    if (pos < text.size() && text[pos] == '}') {
        ++pos;
    } else {
        for (;;) {
            skip();
            std::size_t start = pos;
            std::uint64_t v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
                if (v > 0xffffffffu) throw ParseError("set element too large", start);
                ++pos;
            }
            if (pos == start) throw ParseError("expected a positive integer", start);
            if (v == 0) throw ParseError("set elements start at 1", start);
            if (!s.empty() && s.back() >= v)
                throw ParseError("set elements must be strictly increasing", start);
            s.push_back(static_cast<std::uint32_t>(v));
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == '}') {
                ++pos;
                break;
            }
            throw ParseError("expected ',' or '}'", pos);
        }
    }
    skip();
    if (pos != text.size()) throw ParseError("trailing input after set", pos);
    return s;
}

std::uint64_t to_mask(const FinSet& s) {
    std::uint64_t m = 0;
    for (auto e : s) {
        if (e > 64) throw HorizonError("element " + std::to_string(e) + " does not fit a mask");
        m |= std::uint64_t{1} << (e - 1);
    }
    return m;
}

FinSet from_mask(std::uint64_t mask) {
    FinSet s;
    for (std::uint32_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) s.push_back(i + 1);
    return s;
}

bool spreading_of(const FinSet& s, const FinSet& t) {
    if (s.size() != t.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (t[i] < s[i]) return false;
    return true;
}

GrowthFn::GrowthFn(std::string name, std::vector<std::uint64_t> table)
    : name_(std::move(name)), table_(std::move(table)) {
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] == 0) throw DomainError("growth function " + name_ + " must be positive");
        if (i > 0 && table_[i] < table_[i - 1])
            throw DomainError("growth function " + name_ + " must be nondecreasing");
    }
}

std::shared_ptr<const GrowthFn> GrowthFn::identity() {
    static const auto id = std::make_shared<const GrowthFn>("id", std::vector<std::uint64_t>{});
    return id;
}

std::uint64_t GrowthFn::operator()(std::uint64_t n) const {
    if (table_.empty()) return n;
    if (n == 0) return table_.front();
    if (n <= table_.size()) return table_[n - 1];
    return table_.back() + (n - table_.size());
}

GrowthRegistry::GrowthRegistry() { fns_["id"] = GrowthFn::identity(); }

void GrowthRegistry::add(const std::string& name, std::vector<std::uint64_t> table) {
    if (name == "id" || name == "min" || name == "card")
        throw DomainError("growth function name '" + name + "' is reserved");
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        throw DomainError("growth function names start with a letter");
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw DomainError("bad growth function name '" + name + "'");
    fns_[name] = std::make_shared<const GrowthFn>(name, std::move(table));
}

std::shared_ptr<const GrowthFn> GrowthRegistry::get(const std::string& name) const {
    auto it = fns_.find(name);
    return it == fns_.end() ? nullptr : it->second;
}

namespace {

std::shared_ptr<FamilyNode> make(Kind k) {
    auto n = std::make_shared<FamilyNode>();
    n->kind = k;
    return n;
}

bool all_regular(const std::vector<Family>& v) {
    return std::all_of(v.begin(), v.end(), [](const Family& f) { return f.regular(); });
}

}  // namespace

Family Family::s0() { return Family(make(Kind::S0)); }

Family Family::a(std::uint32_t n) {
    if (n == 0) throw DomainError("A(n) needs n >= 1");
    auto node = make(Kind::A);
    node->param = n;
    return Family(node);
}

Family Family::schreier(const Ordinal& alpha, std::shared_ptr<const GrowthFn> g,
                        LimitVariant variant) {
    auto node = make(Kind::Schreier);
    node->ord = alpha;
    node->g = g ? std::move(g) : GrowthFn::identity();
    node->variant = variant;
    node->regular = variant == LimitVariant::Min || alpha < Ordinal::omega();
    return Family(node);
}

Family Family::bracket(const Family& outer, const Family& inner) {
    auto node = make(Kind::Bracket);
    node->children = {outer, inner};
    node->regular = outer.regular() && inner.regular();
    return Family(node);
}

Family Family::concat(std::vector<Family> parts) {
    if (parts.empty()) throw DomainError("concatenation needs at least one family");
    if (parts.size() == 1) return parts[0];
    auto node = make(Kind::Concat);
    node->regular = all_regular(parts);
    node->children = std::move(parts);
    return Family(node);
}

Family Family::union_of(std::vector<Family> parts) {
    std::vector<Family> flat;
    for (auto& p : parts) {
        if (p.kind() == Kind::Union)
            flat.insert(flat.end(), p.children().begin(), p.children().end());
        else
            flat.push_back(p);
    }
    if (flat.empty()) throw DomainError("union needs at least one family");
    if (flat.size() == 1) return flat[0];
    auto node = make(Kind::Union);
    node->regular = all_regular(flat);
    node->children = std::move(flat);
    return Family(node);
}

Family Family::tail(const Family& f, std::uint32_t k) {
    if (k == 0) throw DomainError("tail index starts at 1");
    auto node = make(Kind::Tail);
    node->children = {f};
    node->param = k;
    node->regular = f.regular();
    return Family(node);
}

Family Family::r(const Ordinal& beta) {
    if (beta.is_zero()) throw DomainError("R(0) is not defined");
    std::vector<Family> parts;
    for (auto it = beta.terms.rbegin(); it != beta.terms.rend(); ++it) {
        if (it->coef > 64) throw HorizonError("R coefficient too large to expand");
        for (std::uint64_t i = 0; i < it->coef; ++i) parts.push_back(schreier(it->exp));
    }
    auto node = make(Kind::R);
    node->ord = beta;
    node->children = {concat(std::move(parts))};
    return Family(node);
}

Family Family::hull(std::vector<FinSet> generators) {
    for (const auto& g : generators)
        if (!is_finset(g)) throw DomainError("hull generator " + to_string(g) + " is not a set");
    auto node = make(Kind::Hull);
    node->gens = std::move(generators);
    return Family(node);
}

Kind Family::kind() const { return node_->kind; }
const std::vector<Family>& Family::children() const { return node_->children; }
std::uint32_t Family::param() const { return node_->param; }
const Ordinal& Family::ordinal() const { return node_->ord; }
const GrowthFn& Family::growth() const { return *node_->g; }
LimitVariant Family::variant() const { return node_->variant; }
const std::vector<FinSet>& Family::generators() const { return node_->gens; }
bool Family::regular() const { return node_->regular; }
Family Family::expand_r() const {
    if (kind() != Kind::R) throw DomainError("not an R family");
    return node_->children[0];
}

namespace {

// Largest k such that s[start..start+k) passes pred; stops at the first failure
// when pred is hereditary.
template <class Pred>
std::size_t largest_prefix(const FinSet& s, std::size_t start, bool hereditary, Pred pred) {
    std::size_t best = 0;
    FinSet block;
    for (std::size_t i = start; i < s.size(); ++i) {
        block.push_back(s[i]);
        if (pred(block))
            best = block.size();
        else if (hereditary)
            break;
    }
    return best;
}

}  // namespace

bool MemberCache::schreier(const FamilyNode* node, const Ordinal& alpha, const FinSet& s) {
    if (s.size() <= 1) return true;
    if (alpha.is_zero()) return false;
    auto key = std::make_tuple(node, alpha, s);
    if (auto it = smemo_.find(key); it != smemo_.end()) return it->second;
    const GrowthFn& g = *node->g;
    bool hereditary = node->regular;
    bool result = false;
    if (alpha.is_successor()) {
        Ordinal beta = predecessor(alpha);
        std::uint64_t blocks = 0, cap = g(s.front());
        std::size_t i = 0;
        result = true;
        while (i < s.size()) {
            std::size_t k = largest_prefix(s, i, hereditary,
                                           [&](const FinSet& b) { return schreier(node, beta, b); });
            if (++blocks > cap) {
                result = false;
                break;
            }
            i += k;
        }
    } else {
        std::uint64_t bound = node->variant == LimitVariant::Min ? g(s.front()) : g(s.size());
        for (std::uint64_t n = 1; n <= bound && !result; ++n)
            result = schreier(node, fund_seq(alpha, n), s);
    }
    smemo_.emplace(std::move(key), result);
    return result;
}

bool MemberCache::bracket(const Family& outer, const Family& inner, const FinSet& s) {
    FinSet minima;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t k = largest_prefix(s, i, inner.regular(),
                                       [&](const FinSet& b) { return member(inner, b); });
        if (k == 0) return false;
        minima.push_back(s[i]);
        i += k;
    }
    return member(outer, minima);
}

bool MemberCache::concat(const std::vector<Family>& parts, std::size_t from, const FinSet& s,
                         std::size_t start) {
    if (from + 1 == parts.size())
        return member(parts[from], FinSet(s.begin() + static_cast<std::ptrdiff_t>(start), s.end()));
    FinSet piece;
    for (std::size_t end = start;; ++end) {
        if (member(parts[from], piece) && concat(parts, from + 1, s, end)) return true;
        if (end == s.size()) return false;
        piece.push_back(s[end]);
    }
}

bool MemberCache::member(const Family& f, const FinSet& s) {
    if (s.empty()) return true;
    switch (f.kind()) {
        case Kind::S0:
            return s.size() <= 1;
        case Kind::A:
            return s.size() <= f.param();
        case Kind::Schreier:
            return schreier(f.id(), f.ordinal(), s);
        case Kind::Hull:
            for (const auto& g : f.generators()) {
                if (g.size() < s.size()) continue;
                bool ok = true;
                for (std::size_t i = 0; i < s.size() && ok; ++i) ok = s[i] >= g[i];
                if (ok) return true;
            }
            return false;
        case Kind::Tail:
            return s.size() <= 1 || (s.front() >= f.param() && member(f.children()[0], s));
        case Kind::R:
            return member(f.children()[0], s);
        default:
            break;
    }
    auto key = std::make_pair(f.id(), s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    switch (f.kind()) {
        case Kind::Bracket:
            result = bracket(f.children()[0], f.children()[1], s);
            break;
        case Kind::Concat:
            result = concat(f.children(), 0, s, 0);
            break;
        case Kind::Union:
            for (const auto& c : f.children())
                if ((result = member(c, s))) break;
            break;
        default:
            break;
    }
    memo_.emplace(std::move(key), result);
    return result;
}

bool member(const Family& f, const FinSet& s) {
    MemberCache cache;
    return cache.member(f, s);
}

std::vector<FinSet> greedy_decompose(const Family& h, const FinSet& s) {
    if (!is_finset(s)) throw DomainError(to_string(s) + " is not a strictly increasing set");
    MemberCache cache;
    std::vector<FinSet> blocks;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!cache.member(h, FinSet{s[i]}))
            throw ConstructionError("singleton {" + std::to_string(s[i]) + "} is not in " +
                                    to_string(h));
        std::size_t k = largest_prefix(s, i, h.regular(),
                                       [&](const FinSet& b) { return cache.member(h, b); });
        blocks.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(i),
                            s.begin() + static_cast<std::ptrdiff_t>(i + k));
        i += k;
    }
    return blocks;
}

bool is_admissible(const Family& f, const std::vector<FinSet>& blocks) {
    FinSet minima;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (b.empty() || !is_finset(b)) return false;
        if (i > 0 && blocks[i - 1].back() >= b.front()) return false;
        minima.push_back(b.front());
    }
    return member(f, minima);
}

Family tail_restrict(const Family& f, std::uint32_t k) { return Family::tail(f, k); }

std::vector<std::uint64_t> members_within(const Family& f, const FinSet& ground) {
    if (ground.size() > kMaxHorizon) throw HorizonError("ground set too large to enumerate");
    MemberCache cache;
    std::vector<std::uint64_t> out;
    const std::size_t n = ground.size();
    if (!f.regular()) {
        if (n > 22) throw HorizonError("brute-force enumeration of a non-regular family is capped at 22");
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            FinSet s;
            for (std::size_t i = 0; i < n; ++i)
                if (m >> i & 1) s.push_back(ground[i]);
            if (cache.member(f, s)) out.push_back(m);
        }
        return out;
    }
    FinSet cur;
    auto dfs = [&](auto&& self, std::size_t next, std::uint64_t mask) -> void {
        out.push_back(mask);
        for (std::size_t i = next; i < n; ++i) {
            cur.push_back(ground[i]);
            if (cache.member(f, cur)) self(self, i + 1, mask | (std::uint64_t{1} << i));
            cur.pop_back();
        }
    };
    dfs(dfs, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_horizon(std::uint32_t n, std::uint32_t horizon) {
    if (n > horizon || n > kMaxHorizon)
        throw HorizonError("range [1," + std::to_string(n) + "] exceeds horizon " +
                           std::to_string(std::min(horizon, kMaxHorizon)));
}

FinSet range_set(std::uint32_t n) {
    FinSet g(n);
    for (std::uint32_t i = 0; i < n; ++i) g[i] = i + 1;
    return g;
}

}  // namespace

std::vector<FinSet> enumerate_restriction(const Family& f, std::uint32_t n, std::uint32_t horizon) {
    check_horizon(n, horizon);
    std::vector<FinSet> out;
    for (auto m : members_within(f, range_set(n))) out.push_back(from_mask(m));
    return out;
}

bool family_subset_upto(const Family& a, const Family& b, std::uint32_t n, std::uint32_t horizon) {
    check_horizon(n, horizon);
    MemberCache cache;
    for (auto m : members_within(a, range_set(n)))
        if (!cache.member(b, from_mask(m))) return false;
    return true;
}

}  // namespace mts
