#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mts/family.hpp"
#include "mts/norm.hpp"
#include "mts/ordinal.hpp"

namespace mts {

// Cantor-Bendixson index bounds. upper is absent when only a lower bound is known.
struct IotaResult {
    Ordinal lower;
    std::optional<Ordinal> upper;
    bool exact = false;
};

IotaResult iota_symbolic(const Family& f);

// s is a limit point of f: some m in (max s, horizon] has s + {m} in f.
bool cb_derivative(const Family& f, const FinSet& s, std::uint32_t horizon = kDefaultHorizon);

constexpr std::uint32_t kOracleHorizon = 14;

// Iterates derivatives on the truncation to [1, horizon]. Exact only when the
// rank is reached within cap steps and agrees with the rank at horizon - 2.
IotaResult cb_rank_oracle(const Family& f, std::uint32_t cap = 64,
                          std::uint32_t horizon = kOracleHorizon);
// One derivative of an explicit family on [1, horizon], as a bitmap over masks.
std::vector<char> derive_masks(const std::vector<char>& d, std::uint32_t horizon);
std::vector<char> family_bitmap(const Family& f, std::uint32_t horizon);

// Finite rank of the truncation itself, or nullopt if not reached within cap steps.
std::optional<std::uint32_t> truncated_rank(const Family& f, std::uint32_t horizon,
                                            std::uint32_t cap = 64);

// A forest whose root-to-node paths are the sequences of the tree.
struct BlockNode {
    SparseVector v;
    std::vector<BlockNode> children;
};

struct BlockTree {
    std::vector<BlockNode> roots;
    bool empty() const { return roots.empty(); }
};

// Reasons the tree is not a block tree; empty when it is.
std::vector<std::string> check_block_tree(const BlockTree& t);
BlockTree tree_derive(const BlockTree& t);
Ordinal tree_order(const BlockTree& t);
std::vector<std::vector<SparseVector>> tree_branches(const BlockTree& t);  // maximal ones

struct TreeFamilies {
    std::vector<FinSet> h;  // max supports along every node's path, sorted
    Family g;               // spreading hull of h
};
TreeFamilies tree_families(const BlockTree& t);

// min over a >= 0, sum a = 1 of ||sum a_i x_i||, computed exactly.
struct L1Constant {
    Rational value;
    std::vector<Rational> minimizer;
    std::size_t iterations = 0;
};
// Stops early once value >= stop_at is certain or some point falls below it.
L1Constant l1_lower_constant(const SpaceSpec& spec, const std::vector<SparseVector>& xs,
                             std::optional<Rational> stop_at = std::nullopt,
                             std::uint32_t horizon = kDefaultHorizon);

struct L1TreeCheck {
    bool holds = false;
    std::vector<std::string> problems;  // normalization failures and failing branches
    std::size_t branches = 0;
};
L1TreeCheck check_l1K_tree(const SpaceSpec& spec, const BlockTree& t, const Rational& K,
                           std::uint32_t horizon = kDefaultHorizon);
bool is_l1K_tree(const SpaceSpec& spec, const BlockTree& t, const Rational& K,
                 std::uint32_t horizon = kDefaultHorizon);

// max of log(a_0 * a_{n_s} * ... * a_{n_1}) over tuples with eps * prod theta > theta_m.
Ordinal gamma(const SpaceSpec& spec, const std::vector<Ordinal>& iotas, const Rational& eps,
              std::size_t m);
std::size_t gamma_tuple_count(const SpaceSpec& spec, const Rational& eps, std::size_t m);
// Index bounds of f0, f1, ..., f_nmax (upper ends, falling back to lower).
std::vector<Ordinal> spec_iotas(const SpaceSpec& spec);

}  // namespace mts
