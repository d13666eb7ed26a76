#include "mts/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "mts/error.hpp"

namespace mts {

Family b_mn_family(const Family& fn, const Family& f0, std::uint32_t m) {
    if (m == 0) return f0;
    Family b = fn;
    for (std::uint32_t i = 1; i < m; ++i) b = Family::bracket(b, fn);
    return Family::bracket(b, f0);
}

namespace {

void check_index(const SpaceSpec& spec, std::size_t n) {
    if (n < 1 || n > spec.n_max())
        throw DomainError("index " + std::to_string(n) + " outside [1," + std::to_string(spec.n_max()) + "]");
}

FinSet support_of(const SparseVector& x) {
    FinSet s;
    for (const auto& [k, v] : x.entries()) s.push_back(k);
    return s;
}

}  // namespace

P8Result p8_certificate(const SpaceSpec& spec, std::size_t n, std::uint32_t m, std::uint32_t N,
                        std::uint32_t horizon) {
    check_index(spec, n);
    if (m == 0) throw DomainError("m must be positive");
    if (N > horizon) throw HorizonError("N exceeds horizon " + std::to_string(horizon));
    Family fam = b_mn_family(spec.family(n), spec.f0, m);
    MemberCache cache;
    FinSet cur;
    bool deep = false;
    std::function<std::vector<BlockNode>(std::uint32_t)> grow = [&](std::uint32_t from) {
        std::vector<BlockNode> level;
        for (std::uint32_t k = from; k <= N; ++k) {
            cur.push_back(k);
            if (cache.member(fam, cur)) {
                deep = deep || cur.size() >= 2;
                level.push_back(BlockNode{SparseVector::unit(k), grow(k + 1)});
            }
            cur.pop_back();
        }
        return level;
    };
    BlockTree tree{grow(1)};
    if (!deep) throw HorizonError("[1," + std::to_string(N) + "] holds no member of size 2");
    Rational K = 1 / pow(spec.theta(n), m);
    L1TreeCheck check = check_l1K_tree(spec, tree, K, horizon);
    return P8Result{fam, std::move(tree), K, std::move(check)};
}

namespace {

struct Built {
    SparseVector v;
    std::uint64_t next;
};

Built average(const Ordinal& order, const Tail& M, std::uint64_t idx, std::uint32_t horizon) {
    std::uint64_t first = M.at(idx);
    if (first > horizon)
        throw HorizonError("repeated average needs index " + std::to_string(first) +
                           " beyond horizon " + std::to_string(horizon));
    if (order.is_zero()) return Built{SparseVector::unit(static_cast<std::uint32_t>(first)), idx + 1};
    if (order.is_limit()) return average(fund_seq(order, first), M, idx, horizon);
    Ordinal pred = predecessor(order);
    Rational w(1, static_cast<unsigned long>(first));
    SparseVector sum;
    std::uint64_t cur = idx;
    for (std::uint64_t t = 0; t < first; ++t) {
        Built b = average(pred, M, cur, horizon);
        sum += b.v.scaled(w);
        cur = b.next;
    }
    return Built{std::move(sum), cur};
}

}  // namespace

SparseVector repeated_average(const Ordinal& order, Tail M, const Rational& target_l1,
                              std::uint32_t horizon) {
    if (M.start == 0 || M.step == 0) throw DomainError("tail needs start >= 1 and step >= 1");
    if (target_l1 <= 0) throw DomainError("target l1 mass must be positive");
    SparseVector v = average(order, M, 0, horizon).v.scaled(target_l1);
    if (v.l1() != target_l1) throw ConstructionError("repeated average lost l1 mass");
    if (!member(Family::schreier(order), support_of(v)))
        throw ConstructionError("support of the order " + to_string(order) +
                                " average is not in S(" + to_string(order) + ")");
    return v;
}

namespace {

// Candidates in order of escalation: order first, then start along M.
template <class Accept>
bool scan_averages(Tail M, std::uint32_t horizon, std::uint32_t max_order, Accept accept) {
    for (std::uint32_t order = 0; order <= max_order; ++order) {
        for (std::uint64_t i = 0;; ++i) {
            std::uint64_t start = M.at(i);
            if (start > horizon) break;
            SparseVector y;
            try {
                y = repeated_average(Ordinal::nat(order),
                                     Tail{static_cast<std::uint32_t>(start), M.step}, 1, horizon);
            } catch (const HorizonError&) {
                break;
            }
            if (accept(y, order, static_cast<std::uint32_t>(start))) return true;
        }
    }
    return false;
}

}  // namespace

SearchResult small_vector_search(const Family& g, const Family& support_family, const Rational& eps,
                                 Tail M, std::uint32_t horizon, std::uint32_t max_order) {
    if (eps <= 0) throw DomainError("eps must be positive");
    SearchResult out;
    bool found = scan_averages(M, horizon, max_order, [&](const SparseVector& y, std::uint32_t o,
                                                          std::uint32_t start) {
        if (!member(support_family, support_of(y))) return false;
        Rational s = seminorm(g, y, horizon);
        if (s > eps) return false;
        out = SearchResult{y, Ordinal::nat(o), start, s};
        return true;
    });
    if (!found)
        throw HorizonError("no repeated average up to order " + std::to_string(max_order) +
                           " meets the seminorm bound within horizon " + std::to_string(horizon));
    return out;
}

LB1Result lb1_vector(const SpaceSpec& spec, std::size_t m, const Rational& eps, Tail M,
                     std::uint32_t horizon, std::uint32_t max_order) {
    check_index(spec, m);
    if (eps <= 0) throw DomainError("eps must be positive");
    LB1Result r;
    r.gamma = gamma(spec, spec_iotas(spec), eps, m);
    r.tuples = gamma_tuple_count(spec, eps, m);
    r.bound = 1 + 1 / eps;
    const Rational& theta = spec.theta(m);
    Family g = Family::schreier(ord_add(r.gamma, Ordinal::nat(1)));
    Family supp = Family::schreier(ord_add(r.gamma, Ordinal::nat(2)));

    auto attempt = [&](int strategy) {
        return scan_averages(M, horizon, max_order, [&](const SparseVector& y, std::uint32_t o,
                                                        std::uint32_t start) {
            if (!member(supp, support_of(y))) return false;
            if (strategy == 1 && r.tuples > 0 && seminorm(g, y, horizon) > theta / r.tuples) return false;
            SparseVector x = y.scaled(1 / theta);
            Rational v = norm(spec, x, horizon).value;
            if (v > r.bound) return false;
            r.x = std::move(x);
            r.strategy = strategy;
            r.order = Ordinal::nat(o);
            r.start = start;
            r.norm = v;
            return true;
        });
    };
    if (!attempt(1) && !attempt(2))
        throw HorizonError("no flat vector with norm <= " + to_string(r.bound) + " within horizon " +
                           std::to_string(horizon));
    if (r.x.l1() != 1 / theta) throw VerificationError("lb1 vector has the wrong l1 mass");
    return r;
}

LB3Result lb3_sequence(const SpaceSpec& spec, std::size_t n, const FinSet& F,
                       const std::vector<std::uint32_t>& q, const Rational& eps, std::uint32_t j,
                       std::uint32_t horizon) {
    check_index(spec, n);
    if (F.empty() || !is_finset(F)) throw DomainError("F must be a nonempty set");
    if (eps <= 0) throw DomainError("eps must be positive");
    Family stand_in = Family::schreier(Ordinal::nat(j));
    if (!member(Family::bracket(spec.family(n), stand_in), F))
        throw DomainError(to_string(F) + " is not in F_" + std::to_string(n) + "[S(" + std::to_string(j) + ")]");
    if (q.size() < F.back() + 1u) throw DomainError("cut sequence too short for F");
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        if (q[i] == 0 || q[i] >= q[i + 1]) throw DomainError("cuts must be positive and increasing");

    LB3Result r;
    r.parts = greedy_decompose(stand_in, F);
    r.target = eps * spec.theta(n) / (1 + eps);
    std::map<std::uint32_t, SparseVector> by_k;
    for (auto k : F) {
        std::uint32_t lo = q[k - 1], hi = q[k] - 1;
        if (hi > horizon) throw HorizonError("block for k = " + std::to_string(k) + " passes the horizon");
        SparseVector x;
        try {
            x = lb1_vector(spec, n, eps, Tail{lo, 1}, hi).x;
        } catch (const HorizonError&) {
            x = SparseVector::unit(lo);
        }
        x = x.scaled(1 / norm(spec, x, horizon).value);
        by_k[k] = x;
        r.xs.push_back(std::move(x));
    }
    r.constant = l1_lower_constant(spec, r.xs, std::nullopt, horizon).value;
    Rational least;
    for (std::size_t p = 0; p < r.parts.size(); ++p) {
        std::vector<SparseVector> part;
        for (auto k : r.parts[p]) part.push_back(by_k[k]);
        Rational c = l1_lower_constant(spec, part, std::nullopt, horizon).value;
        r.part_constants.push_back(c);
        if (p == 0 || c < least) least = c;
        r.report += "part " + to_string(r.parts[p]) + ": " + to_string(c) + "\n";
    }
    Rational split = spec.theta(n) * least;
    r.ok = r.constant >= r.target && r.constant >= split;
    r.report += "constant " + to_string(r.constant) + ", target " + to_string(r.target) +
                ", theta_n * min part " + to_string(split) + "\n";
    return r;
}

namespace {

using Bitmap = std::vector<char>;

std::uint64_t seq_mask(const CellSeq& s) {
    std::uint64_t m = 0;
    for (const auto& [k, i] : s) m |= std::uint64_t{1} << (k - 1);
    return m;
}

std::uint32_t order_of(const std::set<CellSeq>& t) {
    std::size_t o = 0;
    for (const auto& s : t) o = std::max(o, s.size());
    return static_cast<std::uint32_t>(o);
}

struct Condenser {
    std::uint32_t hz;

    std::set<CellSeq> run(const Bitmap& h, const std::set<CellSeq>& X, std::uint32_t alpha) {
        if (alpha == 1) {
            for (std::uint32_t n = 1; n <= hz; ++n) {
                if (!h[std::uint64_t{1} << (n - 1)]) continue;
                auto it = X.lower_bound(CellSeq{{n, 0}});
                if (it != X.end() && it->size() == 1 && (*it)[0].first == n) return {*it};
            }
            throw ConstructionError("no singleton sequence available at order 1");
        }
        Bitmap d = h;
        for (std::uint32_t i = 0; i + 1 < alpha; ++i) d = derive_masks(d, hz);
        std::uint32_t n0 = 0;
        for (std::uint32_t n = 1; n <= hz && !n0; ++n)
            if (d[std::uint64_t{1} << (n - 1)]) n0 = n;
        if (!n0)
            throw ConstructionError("no singleton of H survives " + std::to_string(alpha - 1) +
                                    " derivatives within horizon " + std::to_string(hz));
        const std::uint64_t bit0 = std::uint64_t{1} << (n0 - 1);
        Bitmap g(h.size(), 0);
        g[0] = 1;
        for (std::uint64_t s = 1; s < h.size(); ++s)
            if ((s & ((bit0 << 1) - 1)) == 0 && h[s | bit0]) g[s] = 1;
        std::set<CellSeq> Y;
        for (const auto& seq : X)
            if (seq.size() >= 2 && seq[0].first == n0) {
                CellSeq rest(seq.begin() + 1, seq.end());
                if (g[seq_mask(rest)]) Y.insert(std::move(rest));
            }
        std::set<CellSeq> t0 = run(g, Y, alpha - 1);
        // Maximal nodes, grouped by the first item of A_{n0} that extends them inside X.
        std::map<std::uint32_t, std::set<CellSeq>> parts;
        for (const auto& node : t0) {
            bool maximal = true;
            auto it = t0.upper_bound(node);
            if (it != t0.end() && it->size() > node.size() &&
                std::equal(node.begin(), node.end(), it->begin()))
                maximal = false;
            if (!maximal) continue;
            bool placed = false;
            for (auto it2 = X.lower_bound(CellSeq{{n0, 0}}); it2 != X.end() && (*it2)[0].first == n0; ++it2) {
                CellSeq want{(*it2)[0]};
                want.insert(want.end(), node.begin(), node.end());
                if (X.count(want)) {
                    auto& part = parts[(*it2)[0].second];
                    for (std::size_t len = 1; len <= node.size(); ++len)
                        part.insert(CellSeq(node.begin(), node.begin() + static_cast<std::ptrdiff_t>(len)));
                    placed = true;
                    break;
                }
            }
            if (!placed) throw ConstructionError("a maximal node has no extension by A_" + std::to_string(n0));
        }
        std::uint32_t best_item = 0, best_order = 0;
        bool any = false;
        for (const auto& [item, part] : parts) {
            std::uint32_t o = order_of(part);
            if (!any || o > best_order) {
                best_item = item;
                best_order = o;
                any = true;
            }
        }
        if (!any) throw ConstructionError("recursive tree came back empty");
        std::set<CellSeq> t{CellSeq{{n0, best_item}}};
        for (const auto& node : parts[best_item]) {
            CellSeq s{{n0, best_item}};
            s.insert(s.end(), node.begin(), node.end());
            t.insert(std::move(s));
        }
        return t;
    }
};

std::vector<BlockNode> to_forest(const Cells& cells, const std::set<CellSeq>& nodes, const CellSeq& prefix) {
    std::vector<BlockNode> out;
    for (auto it = nodes.lower_bound(prefix); it != nodes.end(); ++it) {
        if (it->size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), it->begin())) break;
        if (it->size() != prefix.size() + 1) continue;
        const auto& [k, i] = it->back();
        out.push_back(BlockNode{cells[k - 1][i], to_forest(cells, nodes, *it)});
    }
    return out;
}

}  // namespace

CondenseResult condense(const Cells& cells, const std::set<CellSeq>& X, const Family& H,
                        std::uint32_t target, std::uint32_t horizon) {
    if (target == 0) throw DomainError("target order must be at least 1");
    if (!H.regular()) throw DomainError("condensation needs a regular family");
    std::uint32_t hz = std::min<std::uint32_t>(horizon, static_cast<std::uint32_t>(cells.size()));
    if (hz == 0) throw DomainError("no cells");
    for (const auto& seq : X) {
        if (seq.empty()) throw DomainError("X holds an empty sequence");
        for (std::size_t p = 0; p < seq.size(); ++p) {
            const auto& [k, i] = seq[p];
            if (k < 1 || k > cells.size() || i >= cells[k - 1].size())
                throw DomainError("X refers to a missing cell item");
            if (p > 0 && seq[p - 1].first >= k) throw DomainError("X sequence indices must increase");
            if (seq.size() > 1) {
                CellSeq drop = seq;
                drop.erase(drop.begin() + static_cast<std::ptrdiff_t>(p));
                if (!X.count(drop)) throw DomainError("X is not hereditary");
            }
        }
    }
    Bitmap h = family_bitmap(H, hz);
    std::set<std::uint64_t> covered;
    for (const auto& seq : X) covered.insert(seq_mask(seq));
    for (std::uint64_t s = 1; s < h.size(); ++s)
        if (h[s] && !covered.count(s))
            throw ConstructionError("hypothesis fails: no sequence in X is indexed by " + to_string(from_mask(s)));

    Condenser c{hz};
    CondenseResult r;
    r.nodes = c.run(h, X, target);
    for (const auto& node : r.nodes)
        if (!X.count(node)) throw VerificationError("condensed tree leaves X");
    r.order = order_of(r.nodes);
    if (r.order < target) throw VerificationError("condensed tree order below target");
    r.tree = BlockTree{to_forest(cells, r.nodes, CellSeq{})};
    return r;
}

}  // namespace mts
