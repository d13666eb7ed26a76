#pragma once

// Regular families of finite subsets of {1,2,...}, given intensionally.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mts/ordinal.hpp"

namespace mts {

using FinSet = std::vector<std::uint32_t>;  // strictly increasing, elements >= 1

bool is_finset(const FinSet& s);
std::string to_string(const FinSet& s);
FinSet parse_finset(std::string_view text);
// Bit i-1 stands for element i, so numeric mask order is colex order.
std::uint64_t to_mask(const FinSet& s);
FinSet from_mask(std::uint64_t mask);
bool spreading_of(const FinSet& s, const FinSet& t);

// Nondecreasing g: N -> N. A table lists g(1..L); beyond L it grows by one per step.
class GrowthFn {
public:
    GrowthFn(std::string name, std::vector<std::uint64_t> table);
    static std::shared_ptr<const GrowthFn> identity();
    std::uint64_t operator()(std::uint64_t n) const;
    const std::string& name() const { return name_; }
    bool is_identity() const { return table_.empty(); }

private:
    std::string name_;
    std::vector<std::uint64_t> table_;
};

class GrowthRegistry {
public:
    GrowthRegistry();
    void add(const std::string& name, std::vector<std::uint64_t> table);
    std::shared_ptr<const GrowthFn> get(const std::string& name) const;  // ParseError-free lookup
    bool contains(const std::string& name) const { return fns_.count(name) != 0; }

private:
    std::map<std::string, std::shared_ptr<const GrowthFn>> fns_;
};

enum class LimitVariant { Min, Card };
enum class Kind { S0, A, Schreier, Bracket, Concat, Union, Tail, R, Hull };

struct FamilyNode;

class Family {
public:
    static Family s0();
    static Family a(std::uint32_t n);
    static Family schreier(const Ordinal& alpha,
                           std::shared_ptr<const GrowthFn> g = GrowthFn::identity(),
                           LimitVariant variant = LimitVariant::Min);
    static Family bracket(const Family& outer, const Family& inner);
    static Family concat(std::vector<Family> parts);
    static Family union_of(std::vector<Family> parts);
    static Family tail(const Family& f, std::uint32_t k);
    static Family r(const Ordinal& beta);
    static Family hull(std::vector<FinSet> generators);

    Kind kind() const;
    const std::vector<Family>& children() const;
    std::uint32_t param() const;  // n of A(n), k of tail
    const Ordinal& ordinal() const;
    const GrowthFn& growth() const;
    LimitVariant variant() const;
    const std::vector<FinSet>& generators() const;
    // Hereditary and spreading by construction (the card variant at a limit is not).
    bool regular() const;
    const FamilyNode* id() const { return node_.get(); }
    // R(beta) as the concatenation it abbreviates.
    Family expand_r() const;

private:
    explicit Family(std::shared_ptr<const FamilyNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FamilyNode> node_;
};

struct FamilyNode {
    Kind kind;
    std::vector<Family> children;
    std::uint32_t param = 0;
    Ordinal ord;
    std::shared_ptr<const GrowthFn> g;
    LimitVariant variant = LimitVariant::Min;
    std::vector<FinSet> gens;
    bool regular = true;
};

// Membership oracle with a memo scoped to its own lifetime. Memo keys are node
// addresses, so every family queried must outlive the cache.
class MemberCache {
public:
    bool member(const Family& f, const FinSet& s);

private:
    bool schreier(const FamilyNode* node, const Ordinal& alpha, const FinSet& s);
    bool bracket(const Family& outer, const Family& inner, const FinSet& s);
    bool concat(const std::vector<Family>& parts, std::size_t from, const FinSet& s,
                std::size_t start);
    std::map<std::pair<const FamilyNode*, FinSet>, bool> memo_;
    std::map<std::tuple<const FamilyNode*, Ordinal, FinSet>, bool> smemo_;
};

bool member(const Family& f, const FinSet& s);

// Splits s into maximal initial blocks that are members of h.
std::vector<FinSet> greedy_decompose(const Family& h, const FinSet& s);
bool is_admissible(const Family& f, const std::vector<FinSet>& blocks);
Family tail_restrict(const Family& f, std::uint32_t k);

constexpr std::uint32_t kDefaultHorizon = 24;
constexpr std::uint32_t kMaxHorizon = 62;

// All members inside [1,n] in colex order.
std::vector<FinSet> enumerate_restriction(const Family& f, std::uint32_t n,
                                          std::uint32_t horizon = kDefaultHorizon);
// Members of f contained in the given ground set, as ascending position masks.
std::vector<std::uint64_t> members_within(const Family& f, const FinSet& ground);
bool family_subset_upto(const Family& a, const Family& b, std::uint32_t n,
                        std::uint32_t horizon = kDefaultHorizon);

std::string to_string(const Family& f);
bool same_family(const Family& a, const Family& b);  // structural equality
Family parse_family(std::string_view text, const GrowthRegistry& reg = GrowthRegistry(),
                    LimitVariant default_variant = LimitVariant::Min,
                    int depth_cap = kDefaultDepthCap);

}  // namespace mts
