#ifndef ABSLOG_LATTICE_HPP
#define ABSLOG_LATTICE_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abslog/value.hpp"

namespace abslog {

enum class BasisKind {
    Trivial,    // the whole carrier is the basis
    Irreducible,// completely join-irreducible elements plus bottom
    Explicit,   // a finite, explicitly listed basis
};

// A complete lattice with a pointed join basis. `enumerate_basis_below`
// returns the basis elements below a given element when that decomposition
// is finite, and nullopt otherwise.
struct LatticeDescriptor {
    std::string carrier_tag;
    std::function<bool(const Value&, const Value&)> leq;
    std::function<Value()> bot_fn;
    std::function<Value()> top_fn; // may throw EvalError when not materializable
    std::function<Value(const std::vector<Value>&)> join_family; // {} -> bot
    std::function<Value(const std::vector<Value>&)> meet_family; // {} -> top
    BasisKind basis_kind = BasisKind::Trivial;
    std::function<std::optional<std::vector<Value>>(const Value&)> enumerate_basis_below;
    // True when the carrier is completely meet-distributive with an
    // irreducible basis, so every non-empty family is dense.
    bool dense_fast_path = false;
    // True when the fast path agrees with the literal basis check; the
    // product carrier declares density by construction instead, where the
    // literal check can fail on degenerate (empty, bottom-abstract) pairs.
    bool dense_fast_path_literal = true;
    std::function<bool(const Value&)> in_carrier;
    std::function<Value(std::mt19937_64&)> sample; // for the law suites

    Value bot() const { return bot_fn(); }
    Value top() const { return top_fn(); }
    bool le(const Value& a, const Value& b) const { return leq(a, b); }
    bool eq(const Value& a, const Value& b) const { return leq(a, b) && leq(b, a); }
};

enum class CombineKind { Join, Meet };

// Uniform entry point for finite joins and meets; validates carriers.
Value combine(CombineKind kind, const std::vector<Value>& family, const LatticeDescriptor& lat);

// ebase(d) = { b in the basis | b below d }, up to removal of redundant
// bottom entries; throws InfiniteBasisDecomposition when not enumerable.
std::vector<Value> basis_below(const Value& d, const LatticeDescriptor& lat);

// True iff every basis element below the join of the family is below some
// family member. The empty family is never dense.
bool is_dense(const std::vector<Value>& family, const LatticeDescriptor& lat);

// Weight of an element: least size of a subfamily of ebase(d) generating the
// same down-set. Returns nullopt (Omega) when no subfamily within the search
// bound suffices.
inline constexpr size_t kWeightSearchBound = 12;
std::optional<size_t> weight_of(const Value& d, const LatticeDescriptor& lat,
                                size_t bound = kWeightSearchBound);

} // namespace abslog

#endif // ABSLOG_LATTICE_HPP
