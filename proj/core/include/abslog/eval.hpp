#ifndef ABSLOG_EVAL_HPP
#define ABSLOG_EVAL_HPP

#include <map>
#include <utility>

#include "abslog/domain.hpp"
#include "abslog/regcmd.hpp"

namespace abslog {

enum class Exactness { Exact, Widened };

struct EvalContext {
    DomainPtr dom;
    size_t star_budget = 4096;
    bool widening_enabled = true;
    // Sticky flag: set to Widened when any star evaluation extrapolated.
    Exactness exactness = Exactness::Exact;
    std::map<std::pair<int, Value>, Value> memo; // (node id, basis element)

    explicit EvalContext(DomainPtr d) : dom(std::move(d)) {}
};

// Exact join-extended semantics of one elementary command on an arbitrary
// element (the 0/1 clauses included: skip is the identity, diverge the
// monoid neutral).
Value full_transfer(const ElcAtom& e, const Value& d, const DomainDescriptor& dom);

// Basis semantics: defined on basis elements of the context's domain.
Value bsem_eval(const RegCmd& r, const Value& b, EvalContext& ctx);

// Join extension of an evaluator over the basis decomposition of d.
Value join_extension(const std::function<Value(const Value&)>& f, const Value& d,
                     EvalContext& ctx);

// Full semantics: join extension of the basis semantics, with the exactness
// flag of any star evaluations involved.
std::pair<Value, Exactness> sem_eval(const RegCmd& r, const Value& d, EvalContext& ctx);

// Inductive semantics (requires a trivial basis or the additivity fast path).
Value isem_eval(const RegCmd& r, const Value& c, EvalContext& ctx);

} // namespace abslog

#endif // ABSLOG_EVAL_HPP
