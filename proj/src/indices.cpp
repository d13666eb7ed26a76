#include "mts/indices.hpp"

#include <algorithm>
#include <bit>

#include "mts/error.hpp"
#include "mts/lp.hpp"

namespace mts {

namespace {

IotaResult exact(const Ordinal& o) { return IotaResult{o, o, true}; }

bool has_singletons(const Family& f) { return f.regular() && member(f, FinSet{1}); }

}  // namespace

IotaResult iota_symbolic(const Family& f) {
    switch (f.kind()) {
        case Kind::S0:
            return exact(Ordinal::nat(1));
        case Kind::A:
            return exact(Ordinal::nat(f.param()));
        case Kind::Schreier: {
            Ordinal o = ord_omega_pow(f.ordinal());
            if (f.regular()) return exact(o);
            return IotaResult{o, std::nullopt, false};
        }
        case Kind::R:
            return exact(f.ordinal());
        case Kind::Tail:
            return iota_symbolic(f.children()[0]);
        case Kind::Hull: {
            std::size_t m = 0;
            for (const auto& g : f.generators()) m = std::max(m, g.size());
            return exact(Ordinal::nat(m));
        }
        case Kind::Concat: {
            // Later parts are derived away first, so the sum runs right to left.
            IotaResult r{Ordinal{}, Ordinal{}, true};
            for (auto it = f.children().rbegin(); it != f.children().rend(); ++it) {
                IotaResult c = iota_symbolic(*it);
                r.lower = ord_add(r.lower, c.lower);
                if (r.upper && c.upper)
                    r.upper = ord_add(*r.upper, *c.upper);
                else
                    r.upper.reset();
                r.exact = r.exact && c.exact;
            }
            return r;
        }
        case Kind::Union: {
            IotaResult r{Ordinal{}, Ordinal{}, true};
            for (const auto& child : f.children()) {
                IotaResult c = iota_symbolic(child);
                r.lower = std::max(r.lower, c.lower);
                if (r.upper && c.upper)
                    r.upper = std::max(*r.upper, *c.upper);
                else
                    r.upper.reset();
                r.exact = r.exact && c.exact;
            }
            return r;
        }
        case Kind::Bracket: {
            const Family& outer = f.children()[0];
            const Family& inner = f.children()[1];
            IotaResult m = iota_symbolic(outer), n = iota_symbolic(inner);
            IotaResult r;
            if (m.upper && n.upper) r.upper = ord_mul(*n.upper, *m.upper);
            if (has_singletons(outer) && has_singletons(inner)) {
                r.lower = ord_mul(n.lower, m.lower);
                r.exact = m.exact && n.exact;
            }
            return r;
        }
    }
    return {};
}

bool cb_derivative(const Family& f, const FinSet& s, std::uint32_t horizon) {
    if (!f.regular()) throw DomainError("limit points are only decided for spreading families");
    if (!is_finset(s)) throw DomainError(to_string(s) + " is not a strictly increasing set");
    std::uint32_t from = s.empty() ? 1 : s.back() + 1;
    MemberCache cache;
    FinSet t = s;
    t.push_back(0);
    for (std::uint32_t m = from; m <= horizon; ++m) {
        t.back() = m;
        if (cache.member(f, t)) return true;
    }
    return false;
}

std::vector<char> family_bitmap(const Family& f, std::uint32_t horizon) {
    if (horizon > 22) throw HorizonError("explicit families are capped at horizon 22");
    std::vector<char> d(std::size_t{1} << horizon, 0);
    FinSet ground(horizon);
    for (std::uint32_t i = 0; i < horizon; ++i) ground[i] = i + 1;
    for (auto m : members_within(f, ground)) d[m] = 1;
    return d;
}

std::vector<char> derive_masks(const std::vector<char>& d, std::uint32_t horizon) {
    std::vector<char> next(d.size(), 0);
    for (std::uint64_t s = 0; s < d.size(); ++s) {
        if (!d[s]) continue;
        unsigned top = s ? 64 - static_cast<unsigned>(std::countl_zero(s)) : 0;
        for (unsigned m = top; m < horizon; ++m)
            if (d[s | (std::uint64_t{1} << m)]) {
                next[s] = 1;
                break;
            }
    }
    return next;
}

std::optional<std::uint32_t> truncated_rank(const Family& f, std::uint32_t horizon, std::uint32_t cap) {
    std::vector<char> d = family_bitmap(f, horizon);
    for (std::uint32_t k = 0; k <= cap; ++k) {
        if (!d[0]) return std::nullopt;
        if (std::find(d.begin() + 1, d.end(), 1) == d.end()) return k;
        d = derive_masks(d, horizon);
    }
    return std::nullopt;
}

IotaResult cb_rank_oracle(const Family& f, std::uint32_t cap, std::uint32_t horizon) {
    if (!f.regular()) throw DomainError("the derivative oracle needs a spreading family");
    if (horizon < 4) throw DomainError("oracle horizon must be at least 4");
    auto hi = truncated_rank(f, horizon, cap);
    auto lo = truncated_rank(f, horizon - 2, cap);
    if (hi && lo && *hi == *lo) return exact(Ordinal::nat(*hi));
    return IotaResult{Ordinal::nat(hi ? *hi : cap), std::nullopt, false};
}

namespace {

void collect_paths(const std::vector<BlockNode>& level, std::vector<SparseVector>& path,
                   std::vector<std::vector<SparseVector>>& out, bool maximal_only) {
    for (const auto& node : level) {
        path.push_back(node.v);
        if (!maximal_only || node.children.empty()) out.push_back(path);
        collect_paths(node.children, path, out, maximal_only);
        path.pop_back();
    }
}

std::vector<BlockNode> derive(const std::vector<BlockNode>& level) {
    std::vector<BlockNode> out;
    for (const auto& n : level)
        if (!n.children.empty()) out.push_back(BlockNode{n.v, derive(n.children)});
    return out;
}

std::uint64_t height(const std::vector<BlockNode>& level) {
    std::uint64_t h = 0;
    for (const auto& n : level) h = std::max(h, 1 + height(n.children));
    return h;
}

}  // namespace

std::vector<std::string> check_block_tree(const BlockTree& t) {
    std::vector<std::string> problems;
    std::vector<std::vector<SparseVector>> paths;
    std::vector<SparseVector> path;
    collect_paths(t.roots, path, paths, false);
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto& seq = paths[p];
        if (seq.back().empty()) {
            problems.push_back("sequence " + std::to_string(p) + " ends in a zero vector");
            continue;
        }
        if (seq.size() >= 2 && !successive(seq[seq.size() - 2], seq.back()))
            problems.push_back("sequence " + std::to_string(p) + " is not successively supported");
    }
    return problems;
}

BlockTree tree_derive(const BlockTree& t) { return BlockTree{derive(t.roots)}; }

Ordinal tree_order(const BlockTree& t) { return Ordinal::nat(height(t.roots)); }

std::vector<std::vector<SparseVector>> tree_branches(const BlockTree& t) {
    std::vector<std::vector<SparseVector>> out;
    std::vector<SparseVector> path;
    collect_paths(t.roots, path, out, true);
    return out;
}

TreeFamilies tree_families(const BlockTree& t) {
    std::vector<std::vector<SparseVector>> paths;
    std::vector<SparseVector> path;
    collect_paths(t.roots, path, paths, false);
    std::vector<FinSet> h;
    for (const auto& seq : paths) {
        FinSet s;
        for (const auto& v : seq) s.push_back(v.max_support());
        if (!is_finset(s)) throw DomainError("tree is not a block tree");
        h.push_back(std::move(s));
    }
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    Family g = Family::hull(h);
    return TreeFamilies{std::move(h), g};
}

namespace {

// Coefficients c_i with c.a <= ||sum a_i x_i|| for all a >= 0, read off a certificate.
std::vector<Rational> functional(const CertNode& root, const std::vector<SparseVector>& xs) {
    std::vector<Rational> c(xs.size(), 0);
    auto visit = [&](auto&& self, const CertNode& n) -> void {
        if (n.children.empty()) {
            for (auto k : n.witness)
                for (std::size_t i = 0; i < xs.size(); ++i) c[i] += n.tag * abs(xs[i].get(k));
            return;
        }
        for (const auto& ch : n.children) self(self, ch);
    };
    visit(visit, root);
    return c;
}

SparseVector combine(const std::vector<SparseVector>& xs, const std::vector<Rational>& a) {
    SparseVector y;
    for (std::size_t i = 0; i < xs.size(); ++i) y += xs[i].scaled(a[i]);
    return y;
}

}  // namespace

L1Constant l1_lower_constant(const SpaceSpec& spec, const std::vector<SparseVector>& xs,
                             std::optional<Rational> stop_at, std::uint32_t horizon) {
    const std::size_t p = xs.size();
    if (p == 0) throw DomainError("empty block sequence");
    for (std::size_t i = 0; i + 1 < p; ++i)
        if (!successive(xs[i], xs[i + 1])) throw DomainError("vectors must be successive blocks");

    std::vector<std::vector<Rational>> rows;
    L1Constant best;
    bool have_upper = false;
    auto probe = [&](const std::vector<Rational>& a) {
        NormCertificate cert = norm_certificate(spec, combine(xs, a), horizon);
        rows.push_back(functional(cert.root, xs));
        if (!have_upper || cert.value < best.value) {
            best.value = cert.value;
            best.minimizer = a;
            have_upper = true;
        }
        return cert.value;
    };
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Rational> e(p, 0);
        e[i] = 1;
        probe(e);
    }
    if (p > 1) probe(std::vector<Rational>(p, Rational(1, static_cast<long>(p))));

    const std::vector<Rational> ones(p, 1);
    for (std::size_t iter = 1;; ++iter) {
        best.iterations = iter;
        if (iter > 2000) throw HorizonError("l1 constant search did not settle in 2000 rounds");
        if (stop_at && best.value < *stop_at) return best;
        LpResult lp = maximize_leq(rows, std::vector<Rational>(rows.size(), 1), ones);
        if (lp.unbounded) throw VerificationError("a block vector has zero norm");
        Rational lower = 1 / lp.value;
        std::vector<Rational> a(p);
        for (std::size_t i = 0; i < p; ++i) a[i] = lp.x[i] * lower;
        if (stop_at && lower >= *stop_at) {
            best.value = lower;  // certified bound, enough for the caller
            best.minimizer = a;
            return best;
        }
        Rational v = probe(a);
        if (v == lower) {
            best.value = lower;
            best.minimizer = a;
            return best;
        }
    }
}

L1TreeCheck check_l1K_tree(const SpaceSpec& spec, const BlockTree& t, const Rational& K,
                           std::uint32_t horizon) {
    L1TreeCheck out;
    out.problems = check_block_tree(t);
    if (K <= 0) out.problems.push_back("K must be positive");
    std::vector<std::vector<SparseVector>> paths;
    std::vector<SparseVector> path;
    collect_paths(t.roots, path, paths, false);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].back().empty()) continue;
        Rational v = norm(spec, paths[i].back(), horizon).value;
        if (v != 1)
            out.problems.push_back("node " + std::to_string(i) + " (depth " +
                                   std::to_string(paths[i].size()) + ") has norm " + to_string(v));
    }
    if (!out.problems.empty()) return out;
    Rational target = 1 / K;
    auto branches = tree_branches(t);
    out.branches = branches.size();
    for (std::size_t b = 0; b < branches.size(); ++b) {
        L1Constant c = l1_lower_constant(spec, branches[b], target, horizon);
        if (c.value < target)
            out.problems.push_back("branch " + std::to_string(b) + ": constant at most " +
                                   to_string(c.value) + " < 1/K = " + to_string(target));
    }
    out.holds = out.problems.empty();
    return out;
}

bool is_l1K_tree(const SpaceSpec& spec, const BlockTree& t, const Rational& K, std::uint32_t horizon) {
    return check_l1K_tree(spec, t, K, horizon).holds;
}

namespace {

template <class Visit>
void gamma_tuples(const SpaceSpec& spec, const Rational& eps, std::size_t m, Visit visit) {
    if (m < 1 || m > spec.n_max()) throw DomainError("m must lie in [1, n_max]");
    const Rational& bar = spec.theta(m);
    std::vector<std::size_t> tuple;
    auto rec = [&](auto&& self, const Rational& prod) -> void {
        for (std::size_t n = 1; n <= spec.n_max(); ++n) {
            Rational p = prod * spec.theta(n);
            if (eps * p <= bar) continue;
            tuple.push_back(n);
            visit(tuple);
            self(self, p);
            tuple.pop_back();
        }
    };
    if (eps <= 0) throw DomainError("eps must be positive");
    rec(rec, Rational(1));
}

}  // namespace

Ordinal gamma(const SpaceSpec& spec, const std::vector<Ordinal>& iotas, const Rational& eps,
              std::size_t m) {
    if (iotas.size() < spec.n_max() + 1) throw DomainError("need indices for F_0..F_n_max");
    Ordinal best;
    gamma_tuples(spec, eps, m, [&](const std::vector<std::size_t>& t) {
        Ordinal prod = iotas[0];
        for (auto it = t.rbegin(); it != t.rend(); ++it) prod = ord_mul(prod, iotas[*it]);
        if (!prod.is_zero()) best = std::max(best, ord_log(prod));
    });
    return best;
}

std::size_t gamma_tuple_count(const SpaceSpec& spec, const Rational& eps, std::size_t m) {
    std::size_t c = 0;
    gamma_tuples(spec, eps, m, [&](const std::vector<std::size_t>&) { ++c; });
    return c;
}

std::vector<Ordinal> spec_iotas(const SpaceSpec& spec) {
    std::vector<Ordinal> out;
    for (std::size_t n = 0; n <= spec.n_max(); ++n) {
        IotaResult r = iota_symbolic(spec.family(n));
        out.push_back(r.upper ? *r.upper : r.lower);
    }
    return out;
}

}  // namespace mts
