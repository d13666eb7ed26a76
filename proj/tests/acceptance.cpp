// Acceptance suite: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "mts/constructions.hpp"
#include "mts/generators.hpp"
#include "mts/json_io.hpp"
#include "oracles/family_oracle.hpp"
#include "oracles/norm_oracle.hpp"

using namespace mts;

namespace {

Family f(const char* s) { return parse_family(s); }
Ordinal o(const char* s) { return parse_ordinal(s); }
Rational q(long p, long d = 1) { return Rational(p, d); }

SpaceSpec spec(const char* f0, std::vector<std::pair<Rational, const char*>> pairs) {
    std::vector<SpacePair> ps;
    for (const auto& [t, fam] : pairs) ps.push_back(SpacePair{t, f(fam)});
    return make_spec(f(f0), ps);
}

SparseVector vec(std::initializer_list<std::uint32_t> ks) {
    SparseVector x;
    for (auto k : ks) x.set(k, 1);
    return x;
}

std::vector<mpq_class> dense(const SparseVector& x) {
    std::vector<mpq_class> d(x.max_support(), 0);
    for (const auto& [i, v] : x.entries()) d[i - 1] = v;
    return d;
}

struct Verdict {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

struct Criterion {
    int id;
    const char* title;
    double budget;
    std::function<void(Verdict&)> body;
};

// 1: DP norm against exhaustive admissible trees.
void norm_oracle(Verdict& v) {
    using oracle::Fam;
    struct Case {
        SpaceSpec lib;
        oracle::Space orc;
    };
    std::vector<Case> cases{
        {spec("S0", {{q(1, 2), "S(1)"}}), {Fam{Fam::S0}, {{mpq_class(1, 2), Fam{Fam::S1}}}}},
        {spec("S(1)", {{q(1, 2), "S(1)"}}), {Fam{Fam::S1}, {{mpq_class(1, 2), Fam{Fam::S1}}}}},
        {spec("S0", {{q(1, 2), "S(1)"}, {q(1, 4), "S(2)"}}),
         {Fam{Fam::S0}, {{mpq_class(1, 2), Fam{Fam::S1}}, {mpq_class(1, 4), Fam{Fam::S2}}}}},
        {spec("A(2)", {{q(1, 3), "A(3)"}}), {Fam{Fam::A, 2}, {{mpq_class(1, 3), Fam{Fam::A, 3}}}}},
    };
    Rng rng(1001);
    std::size_t n = 0;
    for (int i = 0; i < 200; ++i) {
        const Case& c = cases[static_cast<std::size_t>(i) % cases.size()];
        SparseVector x = random_vector(rng, 1, 10, 0.55);
        Rational dp = norm(c.lib, x).value;
        mpq_class ex = oracle::norm(c.orc, dense(x));
        v.require(dp == ex, "vector " + to_string(x) + ": dp " + to_string(dp) + " vs " + ex.get_str());
        ++n;
    }
    v.note << n << " vectors over 4 specs";
}

// 2: golden Tsirelson values and their certificates.
void golden(Verdict& v) {
    SpaceSpec t = spec("S0", {{q(1, 2), "S(1)"}});
    for (auto [x, want] : std::vector<std::pair<SparseVector, Rational>>{{vec({2, 3}), q(1)},
                                                                         {vec({3, 4, 5, 6}), q(3, 2)}}) {
        v.require(norm(t, x).value == want, "norm of " + to_string(x));
        NormCertificate c = norm_certificate(t, x);
        NormCertificate back = certificate_from_json(Json::parse(certificate_to_json(t, x, c).dump()));
        CertificateCheck chk = verify_certificate(t, x, back);
        v.require(chk.ok() && chk.value == want && back.value == want, "certificate of " + to_string(x));
    }
    v.note << "||e2+e3|| = 1, ||e3+...+e6|| = 3/2";
}

// 3: greedy bracket membership against exhaustive splits, and minima of
// unions of pieces that each fall outside H.
void bracket_minima(Verdict& v) {
    using oracle::Fam;
    Fam s1{Fam::S1}, s2{Fam::S2}, a3{Fam::A, 3};
    std::vector<std::pair<const char*, const Fam*>> fams{{"S(1)", &s1}, {"S(2)", &s2}, {"A(3)", &a3}};
    Rng rng(2002);
    std::uniform_int_distribution<std::uint32_t> start(1, 4), skip(0, 2);
    std::uniform_int_distribution<int> pieces(1, 4);
    std::size_t bad = 0, applied = 0;
    for (int i = 0; i < 500; ++i) {
        const auto& [gt, g] = fams[static_cast<std::size_t>(i) % 3];
        const auto& [ht, h] = fams[static_cast<std::size_t>(i / 3) % 3];
        Family lib = Family::bracket(f(gt), f(ht));
        Fam br{Fam::Bracket, 0, g, h};
        FinSet s = random_finset(rng, 1, 12, 0.55);
        if (member(lib, s) != oracle::in(br, s)) {
            ++bad;
            v.require(false, std::string(gt) + "[" + ht + "] on " + to_string(s));
        }

        std::vector<FinSet> parts;
        std::uint32_t next = start(rng);
        for (int k = pieces(rng); k > 0 && next <= 12; --k) {
            FinSet p;
            while (next <= 12 && oracle::in(*h, p)) {
                p.push_back(next);
                next += 1 + skip(rng);
            }
            if (oracle::in(*h, p)) break;
            parts.push_back(p);
        }
        if (parts.empty()) continue;
        FinSet all, mins;
        for (const auto& p : parts) {
            all.insert(all.end(), p.begin(), p.end());
            mins.push_back(p.front());
        }
        if (!oracle::in(br, all)) continue;
        ++applied;
        if (!oracle::in(*g, mins)) {
            ++bad;
            v.require(false, "minima of pieces on " + to_string(all));
        }
    }
    v.note << "500 instances, unions in G[H] of pieces outside H: " << applied << ", " << bad << " counterexamples";
}

// 4: tail-restricted families give an equivalent norm with constant 3.
void tail_equivalence(Verdict& v) {
    const char* fams[] = {"A(2)", "A(12)", "S(2)", "A(12)"};
    std::vector<SpacePair> full, tail;
    for (std::uint32_t n = 1; n <= 4; ++n) {
        Rational theta(1, 1u << n);
        full.push_back(SpacePair{theta, f(fams[n - 1])});
        tail.push_back(SpacePair{theta, tail_restrict(f(fams[n - 1]), n)});
    }
    SpaceSpec big = make_spec(Family::s0(), full), small = make_spec(Family::s0(), tail);
    Rational c = 2 * big.theta(1) / (1 - big.theta(1)) + 1;
    v.require(c == 3, "constant is " + to_string(c));
    Rng rng(4004);
    Rational worst = 0;
    int differ = 0;
    for (int i = 0; i < 200; ++i) {
        SparseVector x = random_vector(rng, 1, 12, 0.7);
        Rational a = norm(small, x).value, b = norm(big, x).value;
        v.require(a <= b && b <= c * a, "vector " + to_string(x));
        worst = std::max(worst, Rational(b / a));
        differ += a != b;
    }
    v.note << "200 vectors, " << differ << " with distinct norms, largest ratio " << to_string(worst);
}

// 5: normalized block sequences against the basis at their maxima.
void block_equivalence(Verdict& v) {
    SpaceSpec z = spec("S0", {{q(1, 2), "S(1)"}, {q(1, 4), "S(2)"}});
    Rational K = 2 + 2 / z.theta(z.n_max());
    v.require(K == 10, "K is " + to_string(K));
    Rng rng(5005);
    std::uniform_int_distribution<int> blocks(1, 5), width(1, 3), gap(0, 1), coef(-4, 4);
    Rational lo_ratio = -1, hi_ratio = 0;
    for (int i = 0; i < 200; ++i) {
        int p = blocks(rng);
        std::uint32_t next = 1 + static_cast<std::uint32_t>(gap(rng));
        SparseVector sum, tips;
        for (int k = 0; k < p; ++k) {
            SparseVector xk;
            for (int w = width(rng); w > 0; --w, ++next) {
                int c = coef(rng);
                xk.set(next, c == 0 ? 1 : c);
            }
            next += static_cast<std::uint32_t>(gap(rng));
            xk = xk.scaled(1 / norm(z, xk).value);
            Rational a(coef(rng), 1 + gap(rng));
            if (a == 0) a = 1;
            sum += xk.scaled(a);
            tips.set(xk.max_support(), a);
        }
        Rational lhs = norm(z, sum).value, base = norm(z, tips).value;
        v.require(base / 2 <= lhs, "lower half, sample " + std::to_string(i));
        v.require(lhs <= K * base, "upper half, sample " + std::to_string(i));
        Rational r = lhs / base;
        if (lo_ratio < 0 || r < lo_ratio) lo_ratio = r;
        hi_ratio = std::max(hi_ratio, r);
    }
    v.note << "200 sequences, ratios in [" << to_string(lo_ratio) << ", " << to_string(hi_ratio) << "]";
}

// 6: unit-vector trees over B_mn.
void p8(Verdict& v) {
    SpaceSpec x = spec("S0", {{q(1, 2), "S(1)"}, {q(1, 4), "S(2)"}});
    std::size_t total = 0;
    for (auto [m, n] : std::vector<std::pair<std::uint32_t, std::size_t>>{{1, 1}, {2, 1}, {1, 2}}) {
        P8Result r = p8_certificate(x, n, m, 12, 12);
        Rational scale = pow(x.theta(n), m);
        v.require(r.K == 1 / scale, "K for m=" + std::to_string(m));
        v.require(r.check.holds, "l1-K check for m=" + std::to_string(m) + ", n=" + std::to_string(n));
        for (const auto& br : tree_branches(r.tree)) {
            SparseVector plus, alt;
            FinSet s;
            int sign = 1;
            for (const auto& e : br) {
                auto k = e.min_support();
                s.push_back(k);
                plus.set(k, 1);
                alt.set(k, sign);
                sign = -sign;
            }
            v.require(member(r.family, s), "branch " + to_string(s) + " outside B_mn");
            Rational need = scale * static_cast<long>(s.size());
            v.require(norm(x, plus).value >= need && norm(x, alt).value >= need, "branch " + to_string(s));
        }
        total += r.check.branches;
    }
    v.note << total << " maximal branches over (1,1), (2,1), (1,2)";
}

// 7: flat vectors with small seminorm and bounded norm.
void lb1(Verdict& v) {
    struct Case {
        SpaceSpec space;
        std::size_t m;
    };
    std::vector<Case> cases{{spec("S0", {{q(1, 2), "S(1)"}}), 1},
                            {spec("S0", {{q(1, 2), "S(1)"}, {q(1, 4), "S(2)"}}), 2}};
    for (const auto& [t, m] : cases) {
        for (Rational eps : {q(1), q(1, 4)}) {
            for (Tail tail : {Tail{1, 1}, Tail{5, 1}, Tail{9, 2}}) {
                std::string tag = "m " + std::to_string(m) + " eps " + to_string(eps) + " from " +
                                  std::to_string(tail.start);
                LB1Result r = lb1_vector(t, m, eps, tail, 40);
                v.require(r.x.l1() == 1 / t.theta(m), "l1 mass for " + tag);
                v.require(norm(t, r.x, 40).value <= 1 + 1 / eps, "norm bound for " + tag);
                FinSet s;
                for (const auto& [k, a] : r.x.entries()) {
                    s.push_back(k);
                    v.require(k >= tail.start && (k - tail.start) % tail.step == 0, "support in M for " + tag);
                }
                v.require(member(Family::schreier(ord_add(r.gamma, o("2"))), s), "support class for " + tag);
                if (tail.start == 9) v.note << tag << ": " << to_string(r.x) << "; ";
            }
        }
    }
}

// 8: the split of a norm into a small l1 part and an M[H] part.
void l1_split(Verdict& v) {
    SpaceSpec rho = spec("S(1)", {{q(1, 2), "S(1)"}, {q(1, 4), "S(1)"}, {q(1, 8), "A(3)"}});
    const std::uint32_t n = 3;
    Rational pi = pi_n(rho, n);
    std::uint64_t p = p_n(n);
    v.require(pi == q(1, 16), "pi_3 is " + to_string(pi));
    v.require(p == 7 && compositions_C(n).size() == 7, "p(3)");
    std::vector<Family> parts;
    for (const auto& c : compositions_C(n)) {
        Family b = rho.family(c[1]);
        for (std::size_t i = 2; i < c.size(); ++i) b = Family::bracket(b, rho.family(c[i]));
        parts.push_back(b);
    }
    Family mh = Family::bracket(Family::union_of(parts), f("S(1)"));
    Rng rng(8008);
    Rational slack = -1;
    for (int i = 0; i < 100; ++i) {
        SparseVector x = random_vector(rng, 1, 10, 0.6);
        Rational lhs = norm(rho, x).value;
        Rational rhs = pi * x.l1() + static_cast<long>(p) * seminorm(mh, x);
        v.require(lhs <= rhs, "vector " + to_string(x));
        Rational gap = rhs - lhs;
        if (slack < 0 || gap < slack) slack = gap;
    }
    v.note << "100 vectors, smallest slack " << to_string(slack);
}

// 9: index computations.
void index_suite(Verdict& v) {
    for (std::uint32_t n = 1; n <= 5; ++n) {
        IotaResult r = cb_rank_oracle(Family::a(n));
        v.require(r.exact && r.lower == Ordinal::nat(n), "oracle index of A(" + std::to_string(n) + ")");
    }
    IotaResult s2 = iota_symbolic(f("S(2)"));
    v.require(s2.exact && s2.lower == o("w^2"), "symbolic index of S(2)");
    for (auto [lhs, rhs] : std::vector<std::pair<const char*, const char*>>{{"S(1)[S(w)]", "S(w+1)"},
                                                                            {"S(2)[S(w)]", "S(w+2)"}}) {
        Family a = f(lhs), b = f(rhs);
        for (std::uint64_t m = 0; m < (1u << 12); ++m) {
            FinSet s = from_mask(m);
            if (member(a, s) != member(b, s)) {
                v.require(false, std::string(lhs) + " vs " + rhs + " on " + to_string(s));
                break;
            }
        }
    }
    Rng rng(9009);
    std::uniform_int_distribution<int> kids(0, 3), width(1, 2);
    std::size_t trees = 0;
    Ordinal tallest;
    while (trees < 100) {
        std::function<std::vector<BlockNode>(std::uint32_t, int)> grow = [&](std::uint32_t from, int depth) {
            std::vector<BlockNode> out;
            std::uint32_t k = from;
            for (int c = kids(rng); c > 0 && depth > 0 && k <= 10; --c) {
                SparseVector b;
                for (int w = width(rng); w > 0; --w) b.set(k++, 1);
                b = b.scaled(Rational(1, static_cast<long>(b.size())));
                out.push_back(BlockNode{b, grow(k, depth - 1)});
                k += static_cast<std::uint32_t>(kids(rng) % 2);
            }
            return out;
        };
        BlockTree t{grow(1 + static_cast<std::uint32_t>(kids(rng)), 4)};
        if (t.empty()) continue;
        ++trees;
        Ordinal ot = tree_order(t);
        IotaResult g = cb_rank_oracle(tree_families(t).g, 64, 16);
        v.require(g.exact && g.lower >= ot, "tree " + std::to_string(trees));
        tallest = std::max(tallest, ot);
    }
    v.note << "A(1..5), S(2), two Schreier identities on [1,12], 100 trees up to order " << to_string(tallest);
}

// 10: byte-identical reruns and printer/parser round trips.
void determinism(Verdict& v) {
    std::vector<std::vector<std::string>> cmds{
        {"--seed", "77", "suite", "--count", "40"},
        {"certify", "--x", R"([[2,"1/3"],[5,"-2"],[6,"1"],[9,"3/4"]])"},
        {"certify", "p8", "--n", "1", "--m", "2", "--horizon", "10"},
        {"lb1", "--m", "1", "--eps", "1/4"},
        {"average", "--order", "2", "--from", "2"},
        {"iota", "--oracle", "S(1)[A(2)]"}};
    for (const auto& c : cmds) {
        auto a = cli::run(c), b = cli::run(c);
        v.require(a.code == 0 && a.out == b.out && a.err == b.err, "rerun of " + c[0]);
    }
    Rng r1(10010), r2(10010);
    for (int i = 0; i < 50; ++i)
        v.require(vector_to_json(random_vector(r1, 1, 12)).dump() == vector_to_json(random_vector(r2, 1, 12)).dump(),
                  "seeded corpus");
    Rng rng(10101);
    for (int i = 0; i < 1000; ++i) {
        Family g = random_family(rng);
        std::string text = to_string(g);
        Family back = parse_family(text);
        v.require(to_string(back) == text && same_family(back, g), "round trip of " + text);
    }
    v.note << cmds.size() << " commands rerun, 1000 expressions";
}

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "norm dynamic program equals exhaustive trees", 60, norm_oracle},
        {2, "golden Tsirelson values and certificates", 1, golden},
        {3, "bracket membership and minima of pieces", 120, bracket_minima},
        {4, "tail-restricted families, constant 3", 120, tail_equivalence},
        {5, "block sequences vs. basis at maxima, 1/2 and 10", 180, block_equivalence},
        {6, "B_mn unit-vector trees are l1-K", 60, p8},
        {7, "flat vectors: l1 mass and norm bound", 30, lb1},
        {8, "l1 plus M[H] split with pi_3 = 1/16, p(3) = 7", 60, l1_split},
        {9, "index suite", 120, index_suite},
        {10, "determinism and round trips", 30, determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        Verdict v;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs >= c.budget) v.require(false, "over the " + std::to_string(static_cast<int>(c.budget)) + " s budget");
        failed += !v.ok;
        std::printf("%s A%-2d %-50s %8.2f s  %s\n", v.ok ? "PASS" : "FAIL", c.id, c.title, secs, v.note.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
