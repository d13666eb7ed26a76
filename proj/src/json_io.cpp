#include "mts/json_io.hpp"

#include "mts/error.hpp"

namespace mts {

namespace {

Rational rational_field(const Json& j, const char* what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(std::string(what) + " must be a \"p/q\" string", 0);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"", 0);
    return j.at(key);
}

FinSet finset_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("set must be an array", 0);
    FinSet s;
    for (const auto& e : j) s.push_back(e.get<std::uint32_t>());
    if (!is_finset(s)) throw ParseError("set must be strictly increasing positive integers", 0);
    return s;
}

}  // namespace

Json vector_to_json(const SparseVector& x) {
    Json a = Json::array();
    for (const auto& [i, v] : x.entries()) a.push_back(Json::array({i, to_string(v)}));
    return a;
}

SparseVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("vector must be an array of [index, \"p/q\"] pairs", 0);
    SparseVector x;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || e[0].get<std::uint64_t>() == 0 ||
            e[0].get<std::uint64_t>() > kMaxHorizon)
            throw ParseError("vector entry must be [index >= 1, \"p/q\"]", 0);
        auto i = e[0].get<std::uint32_t>();
        if (x.get(i) != 0) throw ParseError("repeated index " + std::to_string(i), 0);
        x.set(i, rational_field(e[1], "coefficient"));
    }
    return x;
}

Json spec_to_json(const SpaceSpec& spec) {
    Json pairs = Json::array();
    for (const auto& p : spec.pairs)
        pairs.push_back({{"family", to_string(p.family)}, {"theta", to_string(p.theta)}});
    return {{"f0", to_string(spec.f0)}, {"infinite", spec.infinite}, {"n_max", spec.n_max()}, {"pairs", pairs}};
}

SpaceSpec spec_from_json(const Json& j, const GrowthRegistry& reg, LimitVariant variant) {
    Family f0 = parse_family(field(j, "f0").get<std::string>(), reg, variant);
    std::vector<SpacePair> pairs;
    for (const auto& p : field(j, "pairs"))
        pairs.push_back(SpacePair{rational_field(field(p, "theta"), "theta"),
                                  parse_family(field(p, "family").get<std::string>(), reg, variant)});
    std::optional<std::size_t> n_max;
    if (j.contains("n_max")) n_max = j.at("n_max").get<std::size_t>();
    bool infinite = j.value("infinite", false);
    return make_spec(std::move(f0), std::move(pairs), n_max, infinite);
}

Json cert_node_to_json(const CertNode& n) {
    Json kids = Json::array();
    for (const auto& c : n.children) kids.push_back(cert_node_to_json(c));
    Json out{{"interval", {n.lo, n.hi}}, {"n", n.n}, {"tag", to_string(n.tag)}, {"history", n.history},
             {"children", kids}};
    if (n.children.empty()) out["witness"] = n.witness;
    return out;
}

CertNode cert_node_from_json(const Json& j) {
    CertNode n;
    const Json& iv = field(j, "interval");
    if (!iv.is_array() || iv.size() != 2) throw ParseError("interval must be [lo, hi]", 0);
    n.lo = iv[0].get<std::uint32_t>();
    n.hi = iv[1].get<std::uint32_t>();
    n.n = field(j, "n").get<std::size_t>();
    n.tag = rational_field(field(j, "tag"), "tag");
    n.history = field(j, "history").get<std::vector<std::size_t>>();
    if (j.contains("witness")) n.witness = finset_from_json(j.at("witness"));
    if (j.contains("children"))
        for (const auto& c : j.at("children")) n.children.push_back(cert_node_from_json(c));
    return n;
}

Json certificate_to_json(const SpaceSpec& spec, const SparseVector& x, const NormCertificate& c) {
    return {{"kind", "norm"}, {"spec", spec_to_json(spec)}, {"x", vector_to_json(x)},
            {"value", to_string(c.value)}, {"tree", cert_node_to_json(c.root)}};
}

NormCertificate certificate_from_json(const Json& j) {
    if (field(j, "kind") != "norm") throw ParseError("certificate kind must be \"norm\"", 0);
    return NormCertificate{rational_field(field(j, "value"), "value"), cert_node_from_json(field(j, "tree"))};
}

namespace {

Json block_node_to_json(const BlockNode& n) {
    Json kids = Json::array();
    for (const auto& c : n.children) kids.push_back(block_node_to_json(c));
    return {{"vector", vector_to_json(n.v)}, {"children", kids}};
}

BlockNode block_node_from_json(const Json& j) {
    BlockNode n{vector_from_json(field(j, "vector")), {}};
    if (j.contains("children"))
        for (const auto& c : j.at("children")) n.children.push_back(block_node_from_json(c));
    return n;
}

}  // namespace

Json tree_to_json(const BlockTree& t) {
    Json roots = Json::array();
    for (const auto& r : t.roots) roots.push_back(block_node_to_json(r));
    return {{"roots", roots}};
}

BlockTree tree_from_json(const Json& j) {
    BlockTree t;
    for (const auto& r : field(j, "roots")) t.roots.push_back(block_node_from_json(r));
    return t;
}

}  // namespace mts
