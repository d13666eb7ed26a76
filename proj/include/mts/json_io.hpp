#pragma once

// JSON forms for vectors, specs, norm certificates and block trees.
// Rationals travel as "p/q" strings.

#include <json.hpp>

#include "mts/indices.hpp"
#include "mts/norm.hpp"

namespace mts {

using Json = nlohmann::json;

Json vector_to_json(const SparseVector& x);
SparseVector vector_from_json(const Json& j);

Json spec_to_json(const SpaceSpec& spec);
SpaceSpec spec_from_json(const Json& j, const GrowthRegistry& reg = GrowthRegistry{},
                         LimitVariant variant = LimitVariant::Min);

Json cert_node_to_json(const CertNode& n);
CertNode cert_node_from_json(const Json& j);

// {"kind":"norm","spec","x","value","tree"}
Json certificate_to_json(const SpaceSpec& spec, const SparseVector& x, const NormCertificate& c);
NormCertificate certificate_from_json(const Json& j);

Json tree_to_json(const BlockTree& t);
BlockTree tree_from_json(const Json& j);

}  // namespace mts
