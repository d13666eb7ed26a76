#include "mts/norm.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "mts/error.hpp"

namespace mts {

SpaceSpec make_spec(Family f0, std::vector<SpacePair> pairs, std::optional<std::size_t> n_max,
                    bool infinite) {
    if (pairs.empty()) throw DomainError("a space spec needs at least one (theta, family) pair");
    if (n_max) {
        if (*n_max == 0 || *n_max > pairs.size())
            throw DomainError("n_max must lie in [1, number of pairs]");
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(*n_max), pairs.end());
    }
    if (!member(f0, FinSet{1})) throw DomainError("F0 must contain all singletons");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Rational& t = pairs[i].theta;
        if (t <= 0 || t >= 1) throw DomainError("theta_" + std::to_string(i + 1) + " must lie in (0,1)");
        if (i > 0 && t > pairs[i - 1].theta) throw DomainError("thetas must be nonincreasing");
        if (!member(pairs[i].family, FinSet{1}))
            pairs[i].family = Family::union_of({pairs[i].family, Family::s0()});
    }
    return SpaceSpec{std::move(f0), std::move(pairs), infinite};
}

SpaceSpec derived_spec(const SpaceSpec& spec, const Family& new_f0) {
    if (!member(new_f0, FinSet{1})) throw DomainError("F0 must contain all singletons");
    SpaceSpec r = spec;
    r.f0 = new_f0;
    return r;
}

namespace {

void check_support(const SparseVector& x, std::uint32_t horizon) {
    if (x.empty()) return;
    if (x.max_support() > horizon)
        throw HorizonError("support reaches " + std::to_string(x.max_support()) +
                           ", beyond horizon " + std::to_string(horizon));
    if (x.size() > kMaxHorizon) throw HorizonError("support too large");
}

FinSet support_of(const SparseVector& x) {
    FinSet s;
    for (const auto& [k, v] : x.entries()) s.push_back(k);
    return s;
}

}  // namespace

SeminormResult seminorm_witness(const Family& f, const SparseVector& x, std::uint32_t horizon) {
    check_support(x, horizon);
    FinSet supp = support_of(x);
    std::vector<Rational> w;
    for (const auto& [k, v] : x.entries()) w.push_back(abs(v));
    SeminormResult best{0, {}};
    if (!f.regular()) {
        for (auto m : members_within(f, supp)) {
            Rational s = 0;
            for (std::uint64_t b = m; b; b &= b - 1) s += w[static_cast<std::size_t>(std::countr_zero(b))];
            if (s > best.value) {
                best.value = s;
                best.witness.clear();
                for (std::uint64_t b = m; b; b &= b - 1)
                    best.witness.push_back(supp[static_cast<std::size_t>(std::countr_zero(b))]);
            }
        }
        return best;
    }
    // Branch and bound, taking each point before skipping it. Heredity prunes
    // every extension of a non-member.
    std::vector<Rational> rest(w.size() + 1, 0);
    for (std::size_t i = w.size(); i-- > 0;) rest[i] = rest[i + 1] + w[i];
    MemberCache cache;
    FinSet cur;
    Rational sum = 0;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (sum + rest[i] <= best.value) return;
        if (i == w.size()) {
            best.value = sum;
            best.witness = cur;
            return;
        }
        cur.push_back(supp[i]);
        if (cache.member(f, cur)) {
            sum += w[i];
            self(self, i + 1);
            sum -= w[i];
        }
        cur.pop_back();
        self(self, i + 1);
    };
    dfs(dfs, 0);
    return best;
}

Rational seminorm(const Family& f, const SparseVector& x, std::uint32_t horizon) {
    return seminorm_witness(f, x, horizon).value;
}

namespace {

// A way to attain a value on a run of support positions. cuts lists the first
// position of every block; an empty list means an F0 leaf.
struct Cand {
    Rational value;
    std::vector<std::size_t> cuts;
    std::size_t n = 0;
};

// Larger value, then fewer blocks, then leftmost cuts, then smaller index.
bool better(const Cand& a, const Cand& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.cuts.size() != b.cuts.size()) return a.cuts.size() < b.cuts.size();
    if (a.cuts != b.cuts) return a.cuts < b.cuts;
    return a.n < b.n;
}

void offer(std::optional<Cand>& slot, Cand c) {
    if (!slot || better(c, *slot)) slot = std::move(c);
}

std::vector<std::size_t> positions(std::uint64_t mask) {
    std::vector<std::size_t> r;
    for (; mask; mask &= mask - 1) r.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    return r;
}

class NormDP {
public:
    NormDP(const SpaceSpec& spec, const SparseVector& x) : spec_(spec) {
        for (const auto& [k, v] : x.entries()) {
            pos_.push_back(k);
            w_.push_back(abs(v));
        }
        k_ = pos_.size();
        if (k_ > 0) run();
    }

    Rational value() const { return k_ ? N_[0][k_ - 1].value : Rational(0); }

    CertNode certificate() const {
        if (k_ == 0) {
            CertNode root;
            root.lo = root.hi = 1;
            return root;
        }
        return build(0, k_ - 1, pos_.front(), pos_.back(), 0, 1, {0});
    }

private:
    void run() {
        const std::size_t nm = spec_.n_max();
        // F0 leaves: best member with given first and last position.
        std::vector<std::vector<std::optional<std::pair<Rational, std::uint64_t>>>> best(
            k_, std::vector<std::optional<std::pair<Rational, std::uint64_t>>>(k_));
        for (auto m : members_within(spec_.f0, pos_)) {
            if (!m) continue;
            auto p = positions(m);
            Rational s = 0;
            for (auto q : p) s += w_[q];
            auto& slot = best[p.front()][p.back()];
            if (!slot || s > slot->first) slot = std::make_pair(s, m);
        }
        leaf_.assign(k_, std::vector<std::pair<Rational, std::uint64_t>>(k_));
        for (std::size_t len = 1; len <= k_; ++len) {
            for (std::size_t i = 0; i + len <= k_; ++i) {
                std::size_t j = i + len - 1;
                std::pair<Rational, std::uint64_t> cur{0, 0};
                if (best[i][j]) cur = *best[i][j];
                if (len > 1) {
                    if (leaf_[i + 1][j].first > cur.first) cur = leaf_[i + 1][j];
                    if (leaf_[i][j - 1].first > cur.first) cur = leaf_[i][j - 1];
                }
                leaf_[i][j] = cur;
            }
        }
        // Members of each F_n with at least two elements, grouped by end positions.
        std::vector<std::vector<std::vector<std::vector<std::size_t>>>> groups(
            nm + 1, std::vector<std::vector<std::vector<std::size_t>>>(k_ * k_));
        for (std::size_t n = 1; n <= nm; ++n)
            for (auto m : members_within(spec_.family(n), pos_))
                if (std::popcount(m) >= 2) {
                    auto p = positions(m);
                    groups[n][p.front() * k_ + p.back()].push_back(std::move(p));
                }

        using Table = std::vector<std::vector<std::optional<Cand>>>;
        std::vector<Table> Q(nm + 1, Table(k_, std::vector<std::optional<Cand>>(k_)));
        std::vector<Table> R(nm + 1, Table(k_, std::vector<std::optional<Cand>>(k_)));
        N_.assign(k_, std::vector<Cand>(k_));

        for (std::size_t j = 0; j < k_; ++j) {
            for (std::size_t n = 1; n <= nm; ++n)
                for (std::size_t f = 0; f < j; ++f)
                    for (const auto& c : groups[n][f * k_ + j]) {
                        Cand cand{0, c, n};
                        for (std::size_t t = 0; t + 1 < c.size(); ++t)
                            cand.value += N_[c[t]][c[t + 1] - 1].value;
                        offer(Q[n][f][j], std::move(cand));
                    }
            for (std::size_t i = j + 1; i-- > 0;) {
                Cand top{leaf_[i][j].first, {}, 0};
                for (std::size_t n = 1; n <= nm; ++n) {
                    auto& slot = R[n][i][j];
                    if (i < j && R[n][i + 1][j]) slot = R[n][i + 1][j];
                    for (std::size_t l = i + 1; l <= j; ++l)
                        if (const auto& q = Q[n][i][l])
                            offer(slot, Cand{q->value + N_[l][j].value, q->cuts, n});
                    if (slot) {
                        Cand c{spec_.theta(n) * slot->value, slot->cuts, n};
                        if (better(c, top)) top = std::move(c);
                    }
                }
                N_[i][j] = std::move(top);
            }
        }
    }

    CertNode build(std::size_t i, std::size_t j, std::uint32_t lo, std::uint32_t hi, std::size_t n,
                   const Rational& tag, std::vector<std::size_t> history) const {
        CertNode node;
        node.lo = lo;
        node.hi = hi;
        node.n = n;
        node.tag = tag;
        node.history = std::move(history);
        const Cand& c = N_[i][j];
        if (c.cuts.empty()) {
            for (auto q : positions(leaf_[i][j].second)) node.witness.push_back(pos_[q]);
            return node;
        }
        Rational child_tag = tag * spec_.theta(c.n);
        auto child_history = node.history;
        child_history.push_back(c.n);
        for (std::size_t t = 0; t < c.cuts.size(); ++t) {
            bool last = t + 1 == c.cuts.size();
            std::size_t a = c.cuts[t], b = last ? j : c.cuts[t + 1] - 1;
            std::uint32_t clo = pos_[a], chi = last ? hi : pos_[c.cuts[t + 1]] - 1;
            node.children.push_back(build(a, b, clo, chi, c.n, child_tag, child_history));
        }
        return node;
    }

    const SpaceSpec& spec_;
    std::vector<std::uint32_t> pos_;
    std::vector<Rational> w_;
    std::size_t k_ = 0;
    std::vector<std::vector<std::pair<Rational, std::uint64_t>>> leaf_;
    std::vector<std::vector<Cand>> N_;
};

}  // namespace

NormValue norm(const SpaceSpec& spec, const SparseVector& x, std::uint32_t horizon) {
    check_support(x, horizon);
    NormDP dp(spec, x);
    Rational v = dp.value();
    Rational upper = spec.infinite ? v + spec.pairs.back().theta * x.l1() : v;
    return NormValue{v, v, upper};
}

NormCertificate norm_certificate(const SpaceSpec& spec, const SparseVector& x, std::uint32_t horizon) {
    check_support(x, horizon);
    NormDP dp(spec, x);
    return NormCertificate{dp.value(), dp.certificate()};
}

namespace {

struct Verifier {
    const SpaceSpec& spec;
    const SparseVector& x;
    std::uint32_t horizon;
    CertificateCheck out;

    std::string where(const CertNode& n) {
        return "node [" + std::to_string(n.lo) + "," + std::to_string(n.hi) + "]";
    }

    void visit(const CertNode& node) {
        if (node.lo == 0 || node.lo > node.hi) {
            out.violations.push_back(where(node) + ": empty or invalid interval");
            return;
        }
        if (node.children.empty()) {
            SparseVector ex = x.restrict_to(node.lo, node.hi);
            out.value += node.tag * seminorm(spec.f0, ex, horizon);
            if (!node.witness.empty()) {
                bool inside = is_finset(node.witness) && node.witness.front() >= node.lo &&
                              node.witness.back() <= node.hi;
                if (!inside || !member(spec.f0, node.witness))
                    out.violations.push_back(where(node) + ": witness " + to_string(node.witness) +
                                             " is not an F0 member inside the interval");
            }
            return;
        }
        std::size_t n = node.children.front().n;
        bool n_ok = n >= 1 && n <= spec.n_max();
        if (!n_ok)
            out.violations.push_back(where(node) + ": branching index " + std::to_string(n) +
                                     " outside [1," + std::to_string(spec.n_max()) + "]");
        FinSet minima;
        for (std::size_t t = 0; t < node.children.size(); ++t) {
            const CertNode& c = node.children[t];
            if (c.n != n) out.violations.push_back(where(c) + ": siblings use different indices");
            if (c.lo < node.lo || c.hi > node.hi)
                out.violations.push_back(where(c) + ": not contained in its parent");
            if (t > 0 && node.children[t - 1].hi >= c.lo)
                out.violations.push_back(where(c) + ": siblings are not successive");
            if (n_ok && c.tag != node.tag * spec.theta(n))
                out.violations.push_back(where(c) + ": tag " + to_string(c.tag) + " != theta_" +
                                         std::to_string(n) + " * parent tag");
            auto h = node.history;
            h.push_back(n);
            if (c.history != h) out.violations.push_back(where(c) + ": history does not extend parent");
            minima.push_back(c.lo);
        }
        if (n_ok && (!is_finset(minima) || !member(spec.family(n), minima)))
            out.violations.push_back(where(node) + ": children are not F_" + std::to_string(n) +
                                     "-admissible (minima " + to_string(minima) + ")");
        for (const auto& c : node.children) visit(c);
    }
};

}  // namespace

CertificateCheck verify_certificate(const SpaceSpec& spec, const SparseVector& x,
                                    const NormCertificate& c, std::uint32_t horizon) {
    check_support(x, horizon);
    Verifier v{spec, x, horizon, {}};
    const CertNode& root = c.root;
    if (root.n != 0) v.out.violations.push_back("root: branching index must be 0");
    if (root.tag != 1) v.out.violations.push_back("root: tag must be 1");
    if (root.history != std::vector<std::size_t>{0}) v.out.violations.push_back("root: history must be (0)");
    if (!x.empty() && (root.lo > x.min_support() || root.hi < x.max_support()))
        v.out.violations.push_back("root: interval does not cover the support");
    v.visit(root);
    return v.out;
}

Rational pi_n(const SpaceSpec& spec, std::uint32_t n) {
    const std::size_t nm = spec.n_max();
    const std::size_t top = n + nm;
    // best[t]: largest product over compositions of exactly t with parts <= n_max.
    std::vector<std::optional<Rational>> best(top + 1);
    best[0] = Rational(1);
    for (std::size_t t = 1; t <= top; ++t)
        for (std::size_t k = 1; k <= std::min(t, nm); ++k)
            if (best[t - k]) {
                Rational v = spec.theta(k) * *best[t - k];
                if (!best[t] || v > *best[t]) best[t] = v;
            }
    Rational r = 0;
    for (std::size_t t = n + 1; t <= top; ++t)
        if (best[t] && *best[t] > r) r = *best[t];
    return r;
}

std::vector<std::vector<std::uint32_t>> compositions_C(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur{0};
    auto rec = [&](auto&& self, std::uint32_t left) -> void {
        for (std::uint32_t k = 1; k <= left; ++k) {
            cur.push_back(k);
            out.push_back(cur);
            self(self, left - k);
            cur.pop_back();
        }
    };
    if (n > 24) throw HorizonError("C(n) enumeration is capped at n = 24");
    rec(rec, n);
    return out;
}

std::uint64_t p_n(std::uint32_t n) {
    if (n >= 64) throw HorizonError("p(n) overflows 64 bits");
    return (std::uint64_t{1} << n) - 1;
}

}  // namespace mts
