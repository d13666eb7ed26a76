#pragma once

// Mixed Tsirelson norms T(F0, (theta_n, F_n)) on finitely supported vectors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mts/family.hpp"
#include "mts/rational.hpp"

namespace mts {

struct SpacePair {
    Rational theta;
    Family family;
};

struct SpaceSpec {
    Family f0 = Family::s0();
    std::vector<SpacePair> pairs;
    // A finite spec is exactly its pairs; an infinite one is a truncation of a longer sequence.
    bool infinite = false;

    std::size_t n_max() const { return pairs.size(); }
    const Rational& theta(std::size_t n) const { return pairs.at(n - 1).theta; }
    const Family& family(std::size_t n) const { return n == 0 ? f0 : pairs.at(n - 1).family; }
};

// Checks theta in (0,1) nonincreasing and {1} in f0; pair families without
// singletons get S0 joined in; keeps the first n_max pairs when given.
SpaceSpec make_spec(Family f0, std::vector<SpacePair> pairs,
                    std::optional<std::size_t> n_max = std::nullopt, bool infinite = false);
SpaceSpec derived_spec(const SpaceSpec& spec, const Family& new_f0);

struct SeminormResult {
    Rational value;
    FinSet witness;
};

SeminormResult seminorm_witness(const Family& f, const SparseVector& x,
                                std::uint32_t horizon = kDefaultHorizon);
Rational seminorm(const Family& f, const SparseVector& x, std::uint32_t horizon = kDefaultHorizon);

struct NormValue {
    Rational value;
    Rational lower;
    Rational upper;
};

// Admissible tree node over the integer interval [lo, hi].
struct CertNode {
    std::uint32_t lo = 1;
    std::uint32_t hi = 0;
    std::size_t n = 0;  // branching index of this node's sibling group; 0 at the root
    Rational tag = 1;
    std::vector<std::size_t> history{0};
    FinSet witness;  // F0 member attaining the seminorm, leaves only
    std::vector<CertNode> children;
};

struct NormCertificate {
    Rational value;
    CertNode root;
};

NormValue norm(const SpaceSpec& spec, const SparseVector& x, std::uint32_t horizon = kDefaultHorizon);
NormCertificate norm_certificate(const SpaceSpec& spec, const SparseVector& x,
                                 std::uint32_t horizon = kDefaultHorizon);

struct CertificateCheck {
    Rational value;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

CertificateCheck verify_certificate(const SpaceSpec& spec, const SparseVector& x,
                                    const NormCertificate& c,
                                    std::uint32_t horizon = kDefaultHorizon);

// sup of theta_{n_1}...theta_{n_s} over n_1+...+n_s > n with indices <= n_max.
Rational pi_n(const SpaceSpec& spec, std::uint32_t n);
// All (0, n_1, ..., n_s) with n_1+...+n_s <= n.
std::vector<std::vector<std::uint32_t>> compositions_C(std::uint32_t n);
std::uint64_t p_n(std::uint32_t n);

}  // namespace mts
