#pragma once

// Lower-bound witnesses: B_mn families and trees, repeated averages,
// flat small-seminorm vectors, block sequences and finite condensation.

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mts/indices.hpp"
#include "mts/norm.hpp"

namespace mts {

// [Fn, ..., Fn, F0] with m copies of Fn, nested to the left; m = 0 gives F0.
Family b_mn_family(const Family& fn, const Family& f0, std::uint32_t m);

struct P8Result {
    Family family;
    BlockTree tree;
    Rational K;
    L1TreeCheck check;
};

// Unit-vector tree over the nonempty members of B_mn inside [1, N].
P8Result p8_certificate(const SpaceSpec& spec, std::size_t n, std::uint32_t m, std::uint32_t N,
                        std::uint32_t horizon = kDefaultHorizon);

// The arithmetic progression start, start + step, ...
struct Tail {
    std::uint32_t start = 1;
    std::uint32_t step = 1;
    std::uint64_t at(std::uint64_t i) const { return start + i * step; }
};

SparseVector repeated_average(const Ordinal& order, Tail M, const Rational& target_l1,
                              std::uint32_t horizon = kDefaultHorizon);

struct SearchResult {
    SparseVector y;
    Ordinal order;
    std::uint32_t start = 0;
    Rational seminorm;
};

// Escalates order, then start along M, until seminorm(g, y) <= eps and
// supp y lies in support_family.
SearchResult small_vector_search(const Family& g, const Family& support_family, const Rational& eps,
                                 Tail M, std::uint32_t horizon = kDefaultHorizon,
                                 std::uint32_t max_order = 4);

struct LB1Result {
    SparseVector x;
    Ordinal gamma;
    std::size_t tuples = 0;
    int strategy = 0;  // 1: seminorm search, 2: direct norm search
    Ordinal order;
    std::uint32_t start = 0;
    Rational norm;
    Rational bound;
};

LB1Result lb1_vector(const SpaceSpec& spec, std::size_t m, const Rational& eps, Tail M,
                     std::uint32_t horizon = kDefaultHorizon, std::uint32_t max_order = 4);

struct LB3Result {
    std::vector<FinSet> parts;
    std::vector<SparseVector> xs;
    Rational target;
    Rational constant;
    std::vector<Rational> part_constants;
    bool ok = false;
    std::string report;
};

// F must lie in F_n[S(j)]; q[k-1] = q_k and supp x_k sits in [q_k, q_{k+1}).
LB3Result lb3_sequence(const SpaceSpec& spec, std::size_t n, const FinSet& F,
                       const std::vector<std::uint32_t>& q, const Rational& eps, std::uint32_t j,
                       std::uint32_t horizon = kDefaultHorizon);

// cells[k-1] lists the items of A_k. A sequence picks one item per cell index.
using Cells = std::vector<std::vector<SparseVector>>;
using CellSeq = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (k, item), k ascending

struct CondenseResult {
    std::set<CellSeq> nodes;
    BlockTree tree;
    std::uint32_t order = 0;
};

// Finite-order condensation: a tree inside X of order >= target.
CondenseResult condense(const Cells& cells, const std::set<CellSeq>& X, const Family& H,
                        std::uint32_t target, std::uint32_t horizon = 16);

}  // namespace mts
