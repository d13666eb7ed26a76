#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "mts/constructions.hpp"
#include "mts/error.hpp"
#include "mts/generators.hpp"
#include "mts/json_io.hpp"

namespace mts::cli {

namespace {

struct RunConfig {
    std::uint32_t horizon = kDefaultHorizon;
    std::string variant = "min";
    int depth_cap = kDefaultDepthCap;
    std::uint64_t seed = 1;
    std::string output = "json";
    std::vector<std::string> growth;  // name=v1,v2,...

    LimitVariant limit() const { return variant == "card" ? LimitVariant::Card : LimitVariant::Min; }
};

// Outcome of a command body: the payload plus the exit code it earns.
struct Reply {
    Json body;
    int code = kOk;
};

Json load_json(const std::string& text) {
    auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return Json::parse(text);
    std::ifstream in(text);
    if (!in) throw DomainError("cannot read " + text);
    return Json::parse(in);
}

SpaceSpec tsirelson() {
    return make_spec(Family::s0(), {SpacePair{Rational(1, 2), Family::schreier(Ordinal::nat(1))}});
}

std::string render_table(const Json& j) {
    if (!j.is_object()) return j.dump() + "\n";
    std::size_t w = 0;
    for (const auto& [k, v] : j.items()) w = std::max(w, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : j.items())
        os << k << std::string(w - k.size() + 2, ' ') << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return os.str();
}

Json error_json(const std::string& kind, const std::string& msg) { return {{"error", kind}, {"message", msg}}; }

struct Shell {
    RunConfig cfg;
    GrowthRegistry reg;

    Family family(const std::string& text) const { return parse_family(text, reg, cfg.limit(), cfg.depth_cap); }
    SpaceSpec spec(const std::string& src) const {
        return src.empty() ? tsirelson() : spec_from_json(load_json(src), reg, cfg.limit());
    }

    void register_growth() {
        for (const auto& g : cfg.growth) {
            auto eq = g.find('=');
            if (eq == std::string::npos) throw DomainError("growth must read name=v1,v2,...");
            std::vector<std::uint64_t> table;
            std::stringstream ss(g.substr(eq + 1));
            for (std::string item; std::getline(ss, item, ',');) table.push_back(std::stoull(item));
            reg.add(g.substr(0, eq), table);
        }
    }

    Reply member_cmd(const std::string& f, const std::string& s) const {
        return {{{"family", to_string(family(f))}, {"set", s}, {"member", member(family(f), parse_finset(s))}}};
    }

    Reply admissible_cmd(const std::string& f, const std::vector<std::string>& sets) const {
        std::vector<FinSet> blocks;
        for (const auto& s : sets) blocks.push_back(parse_finset(s));
        return {{{"family", to_string(family(f))}, {"admissible", is_admissible(family(f), blocks)}}};
    }

    Reply norm_cmd(const std::string& s, const std::string& x) const {
        SpaceSpec sp = spec(s);
        NormValue v = norm(sp, vector_from_json(load_json(x)), cfg.horizon);
        return {{{"value", to_string(v.value)}, {"lower", to_string(v.lower)}, {"upper", to_string(v.upper)}}};
    }

    Reply certify_norm(const std::string& s, const std::string& x) const {
        SpaceSpec sp = spec(s);
        SparseVector v = vector_from_json(load_json(x));
        return {certificate_to_json(sp, v, norm_certificate(sp, v, cfg.horizon))};
    }

    Reply p8_cmd(const std::string& s, std::size_t n, std::uint32_t m, std::uint32_t N) const {
        SpaceSpec sp = spec(s);
        P8Result r = p8_certificate(sp, n, m, N ? N : cfg.horizon, cfg.horizon);
        Json body{{"kind", "p8"},          {"spec", spec_to_json(sp)},     {"n", n},
                  {"m", m},                {"N", N ? N : cfg.horizon},     {"K", to_string(r.K)},
                  {"family", to_string(r.family)}, {"tree", tree_to_json(r.tree)},
                  {"branches", r.check.branches},  {"holds", r.check.holds}, {"problems", r.check.problems}};
        return {body, r.check.holds ? kOk : kVerifyFailed};
    }

    Reply average_cmd(const std::string& order, std::uint32_t from, std::uint32_t step, const std::string& target) const {
        Ordinal o = parse_ordinal(order, cfg.depth_cap);
        Rational t = parse_rational(target);
        SparseVector x = repeated_average(o, Tail{from, step}, t, cfg.horizon);
        return {{{"kind", "average"}, {"order", to_string(o)}, {"from", from}, {"step", step},
                 {"target", to_string(t)}, {"x", vector_to_json(x)}, {"l1", to_string(x.l1())}}};
    }

    Reply lb1_cmd(const std::string& s, std::size_t m, const std::string& eps, std::uint32_t from,
                  std::uint32_t max_order) const {
        SpaceSpec sp = spec(s);
        Rational e = parse_rational(eps);
        LB1Result r = lb1_vector(sp, m, e, Tail{from, 1}, cfg.horizon, max_order);
        return {{{"kind", "lb1"}, {"spec", spec_to_json(sp)}, {"m", m}, {"eps", to_string(e)},
                 {"x", vector_to_json(r.x)}, {"l1", to_string(r.x.l1())}, {"norm", to_string(r.norm)},
                 {"bound", to_string(r.bound)}, {"gamma", to_string(r.gamma)}, {"tuples", r.tuples},
                 {"strategy", r.strategy}, {"order", to_string(r.order)}, {"start", r.start}}};
    }

    Reply verify_cmd(const std::string& src) const {
        Json c = load_json(src);
        std::string kind = c.at("kind").get<std::string>();
        std::vector<std::string> bad;
        Json body{{"kind", kind}};
        if (kind == "norm") {
            SpaceSpec sp = spec_from_json(c.at("spec"), reg, cfg.limit());
            SparseVector x = vector_from_json(c.at("x"));
            NormCertificate cert = certificate_from_json(c);
            CertificateCheck chk = verify_certificate(sp, x, cert, cfg.horizon);
            bad = chk.violations;
            if (chk.value != cert.value)
                bad.push_back("tree evaluates to " + to_string(chk.value) + ", certificate claims " + to_string(cert.value));
            body["value"] = to_string(chk.value);
        } else if (kind == "p8") {
            SpaceSpec sp = spec_from_json(c.at("spec"), reg, cfg.limit());
            auto n = c.at("n").get<std::size_t>();
            auto m = c.at("m").get<std::uint32_t>();
            Rational K = parse_rational(c.at("K").get<std::string>());
            if (K != 1 / pow(sp.theta(n), m)) bad.push_back("K is not theta_n^-m");
            L1TreeCheck chk = check_l1K_tree(sp, tree_from_json(c.at("tree")), K, cfg.horizon);
            bad.insert(bad.end(), chk.problems.begin(), chk.problems.end());
            if (!chk.holds && chk.problems.empty()) bad.push_back("tree is not l1-K");
            body["branches"] = chk.branches;
        } else if (kind == "average") {
            Ordinal o = parse_ordinal(c.at("order").get<std::string>(), cfg.depth_cap);
            Rational t = parse_rational(c.at("target").get<std::string>());
            SparseVector x = vector_from_json(c.at("x"));
            SparseVector want = repeated_average(o, Tail{c.at("from").get<std::uint32_t>(), c.value("step", 1u)}, t,
                                                 cfg.horizon);
            if (!(x == want)) bad.push_back("vector differs from the repeated average");
            if (x.l1() != t) bad.push_back("l1 mass is " + to_string(x.l1()));
        } else if (kind == "lb1") {
            SpaceSpec sp = spec_from_json(c.at("spec"), reg, cfg.limit());
            auto m = c.at("m").get<std::size_t>();
            Rational e = parse_rational(c.at("eps").get<std::string>());
            SparseVector x = vector_from_json(c.at("x"));
            if (x.l1() != 1 / sp.theta(m)) bad.push_back("l1 mass is " + to_string(x.l1()));
            Rational v = norm(sp, x, cfg.horizon).value;
            if (v > 1 + 1 / e) bad.push_back("norm " + to_string(v) + " exceeds 1 + 1/eps");
            Ordinal g = gamma(sp, spec_iotas(sp), e, m);
            FinSet supp;
            for (const auto& [i, a] : x.entries()) supp.push_back(i);
            if (!member(Family::schreier(ord_add(g, Ordinal::nat(2))), supp))
                bad.push_back("support is not in S(" + to_string(ord_add(g, Ordinal::nat(2))) + ")");
            body["value"] = to_string(v);
        } else {
            throw DomainError("unknown certificate kind " + kind);
        }
        body["ok"] = bad.empty();
        body["violations"] = bad;
        return {body, bad.empty() ? kOk : kVerifyFailed};
    }

    Reply iota_cmd(const std::string& f, bool oracle) const {
        Family fam = family(f);
        IotaResult r = iota_symbolic(fam);
        Json body{{"family", to_string(fam)}, {"lower", to_string(r.lower)}, {"exact", r.exact}};
        body["upper"] = r.upper ? Json(to_string(*r.upper)) : Json(nullptr);
        if (oracle) {
            IotaResult o = cb_rank_oracle(fam, 64, std::min<std::uint32_t>(cfg.horizon, 18));
            body["oracle"] = {{"lower", to_string(o.lower)}, {"exact", o.exact}};
        }
        return {body};
    }

    Reply gamma_cmd(const std::string& s, const std::string& eps, std::size_t m) const {
        SpaceSpec sp = spec(s);
        Rational e = parse_rational(eps);
        return {{{"gamma", to_string(gamma(sp, spec_iotas(sp), e, m))}, {"tuples", gamma_tuple_count(sp, e, m)}}};
    }

    Reply order_cmd(const std::string& src) const {
        BlockTree t = tree_from_json(load_json(src));
        auto problems = check_block_tree(t);
        return {{{"order", to_string(tree_order(t))}, {"block_tree", problems.empty()}, {"problems", problems}},
                problems.empty() ? kOk : kVerifyFailed};
    }

    // Seeded self-check: certificates agree with the norm and expressions round-trip.
    Reply suite_cmd(std::size_t count) const {
        Rng rng(cfg.seed);
        SpaceSpec sp = tsirelson();
        std::size_t norm_fail = 0, print_fail = 0;
        for (std::size_t i = 0; i < count; ++i) {
            SparseVector x = random_vector(rng, 1, 8);
            NormCertificate c = norm_certificate(sp, x, cfg.horizon);
            CertificateCheck chk = verify_certificate(sp, x, c, cfg.horizon);
            if (!chk.ok() || chk.value != c.value || c.value != norm(sp, x, cfg.horizon).value) ++norm_fail;
            Family f = random_family(rng);
            std::string text = to_string(f);
            if (to_string(parse_family(text, reg, cfg.limit(), cfg.depth_cap)) != text) ++print_fail;
        }
        bool ok = norm_fail == 0 && print_fail == 0;
        return {{{"seed", cfg.seed}, {"cases", count}, {"norm_failures", norm_fail},
                 {"roundtrip_failures", print_fail}, {"ok", ok}},
                ok ? kOk : kVerifyFailed};
    }
};

}  // namespace

Outcome run(const std::vector<std::string>& args) {
    Shell sh;
    if (const char* env = std::getenv("MTS_HORIZON")) {
        try {
            sh.cfg.horizon = static_cast<std::uint32_t>(std::stoul(env));
        } catch (const std::exception&) {
            return {kUsage, "", error_json("usage", "MTS_HORIZON must be an integer").dump() + "\n"};
        }
    }

    CLI::App app{"Mixed Tsirelson space toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--horizon", sh.cfg.horizon, "Largest coordinate considered")->check(CLI::Range(4u, kMaxHorizon));
    app.add_option("--variant", sh.cfg.variant, "Limit-stage Schreier variant")->check(CLI::IsMember({"min", "card"}));
    app.add_option("--depth-cap", sh.cfg.depth_cap, "Ordinal nesting cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", sh.cfg.seed, "Seed for randomized suites");
    app.add_option("--output", sh.cfg.output, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--growth", sh.cfg.growth, "Growth function name=g(1),g(2),...");

    std::function<Reply()> action;
    std::string fam, set, spec_src, x_src, src, order = "1", eps = "1", target = "1", what = "norm";
    std::vector<std::string> sets;
    std::size_t n = 1, m = 1, count = 50;
    std::uint32_t N = 0, from = 1, step = 1, max_order = 4;
    bool oracle = false;

    auto* c = app.add_subcommand("member", "Membership of a finite set in a family");
    c->add_option("family", fam)->required();
    c->add_option("set", set)->required();
    c->callback([&] { action = [&] { return sh.member_cmd(fam, set); }; });

    c = app.add_subcommand("admissible", "Whether successive sets are admissible for a family");
    c->add_option("family", fam)->required();
    c->add_option("sets", sets)->required();
    c->callback([&] { action = [&] { return sh.admissible_cmd(fam, sets); }; });

    c = app.add_subcommand("norm", "Exact norm of a finitely supported vector");
    c->add_option("--spec", spec_src, "Spec JSON file or inline text (default Tsirelson)");
    c->add_option("--x", x_src, "Vector JSON file or inline text")->required();
    c->callback([&] { action = [&] { return sh.norm_cmd(spec_src, x_src); }; });

    c = app.add_subcommand("certify", "Emit a norm or p8 certificate");
    c->add_option("what", what, "norm or p8")->check(CLI::IsMember({"norm", "p8"}));
    c->add_option("--spec", spec_src);
    c->add_option("--x", x_src);
    c->add_option("--n", n);
    c->add_option("--m", m);
    c->add_option("--N", N, "Largest coordinate of the tree (default horizon)");
    c->callback([&] {
        action = [&] {
            if (what == "p8") return sh.p8_cmd(spec_src, n, static_cast<std::uint32_t>(m), N);
            if (x_src.empty()) throw DomainError("certify norm needs --x");
            return sh.certify_norm(spec_src, x_src);
        };
    });

    c = app.add_subcommand("p8", "Unit-vector l1 tree over B_mn");
    c->add_option("--spec", spec_src);
    c->add_option("--n", n);
    c->add_option("--m", m);
    c->add_option("--N", N);
    c->callback([&] { action = [&] { return sh.p8_cmd(spec_src, n, static_cast<std::uint32_t>(m), N); }; });

    c = app.add_subcommand("verify", "Check a certificate");
    c->add_option("certificate", src)->required();
    c->callback([&] { action = [&] { return sh.verify_cmd(src); }; });

    c = app.add_subcommand("iota", "Cantor-Bendixson index of a family");
    c->add_option("family", fam)->required();
    c->add_flag("--oracle", oracle, "Also run the truncated derivative oracle");
    c->callback([&] { action = [&] { return sh.iota_cmd(fam, oracle); }; });

    c = app.add_subcommand("gamma", "The ordinal gamma(eps, m) of a spec");
    c->add_option("--spec", spec_src);
    c->add_option("--eps", eps);
    c->add_option("--m", m);
    c->callback([&] { action = [&] { return sh.gamma_cmd(spec_src, eps, m); }; });

    c = app.add_subcommand("order", "Order of a block tree");
    c->add_option("tree", src)->required();
    c->callback([&] { action = [&] { return sh.order_cmd(src); }; });

    c = app.add_subcommand("average", "Repeated average on an arithmetic tail");
    c->add_option("--order", order);
    c->add_option("--from", from)->check(CLI::PositiveNumber);
    c->add_option("--step", step)->check(CLI::PositiveNumber);
    c->add_option("--target", target);
    c->callback([&] { action = [&] { return sh.average_cmd(order, from, step, target); }; });

    c = app.add_subcommand("lb1", "Flat vector with small seminorm and bounded norm");
    c->add_option("--spec", spec_src);
    c->add_option("--m", m);
    c->add_option("--eps", eps);
    c->add_option("--from", from)->check(CLI::PositiveNumber);
    c->add_option("--max-order", max_order);
    c->callback([&] { action = [&] { return sh.lb1_cmd(spec_src, m, eps, from, max_order); }; });

    c = app.add_subcommand("suite", "Seeded self-check");
    c->add_option("--count", count);
    c->callback([&] { action = [&] { return sh.suite_cmd(count); }; });

    Outcome res;
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        res.code = kUsage;
        res.err = error_json("usage", e.what()).dump() + "\n";
        return res;
    }

    Json err;
    try {
        if (sh.cfg.horizon < 4 || sh.cfg.horizon > kMaxHorizon)
            throw DomainError("horizon must lie in [4, " + std::to_string(kMaxHorizon) + "]");
        sh.register_growth();
        Reply r = action();
        res.code = r.code;
        res.out = sh.cfg.output == "table" ? render_table(r.body) : r.body.dump() + "\n";
        return res;
    } catch (const ParseError& e) {
        res.code = kUsage;
        err = error_json(e.kind(), e.what());
        err["position"] = e.position;
    } catch (const HorizonError& e) {
        res.code = kLimit;
        err = error_json(e.kind(), e.what());
    } catch (const VerificationError& e) {
        res.code = kVerifyFailed;
        err = error_json(e.kind(), e.what());
    } catch (const ConstructionError& e) {
        res.code = kVerifyFailed;
        err = error_json(e.kind(), e.what());
    } catch (const Error& e) {
        res.code = kUsage;
        err = error_json(e.kind(), e.what());
    } catch (const Json::exception& e) {
        res.code = kUsage;
        err = error_json("json", e.what());
    } catch (const std::exception& e) {
        res.code = kUsage;
        err = error_json("usage", e.what());
    }
    res.err = err.dump() + "\n";
    return res;
}

}  // namespace mts::cli
