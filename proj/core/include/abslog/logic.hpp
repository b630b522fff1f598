#ifndef ABSLOG_LOGIC_HPP
#define ABSLOG_LOGIC_HPP

#include <memory>
#include <string>
#include <vector>

#include "abslog/eval.hpp"

namespace abslog {

// A specification triple over one domain.
struct Triple {
    DomainPtr dom;
    Value pre;
    RegCmdPtr cmd;
    Value post;
};

struct DerivationNode;
using DerivationPtr = std::shared_ptr<DerivationNode>;

// One node of a derivation. Each rule synthesizes its conclusion's post from
// the command and precondition handed down by its parent, so only the
// rule-specific payloads are stored.
struct DerivationNode {
    enum class Rule { Basic, Seq, Cons, Choice, Iter, Rec, Inv, Join, Meet };
    Rule rule = Rule::Basic;
    std::vector<DerivationPtr> children;

    Value mid;                   // seq
    Value inner_pre, inner_post; // cons
    Value k1, k2;                // choice
    std::vector<Value> iterates; // iter: h_0 .. h_n (the last is the tail invariant)
    Value kp, l;                 // rec (kp, l) and inv (kp)
    std::vector<Value> family;   // join cover / meet family
};

const char* rule_name(DerivationNode::Rule r);

// One checked side condition of a derivation.
struct CheckEntry {
    std::string path;      // e.g. "proof/join/0/seq"
    std::string condition; // e.g. "density", "iter-tail"
    bool ok = true;
    std::string detail;    // counterexample rendering for failures
};

struct CheckReport {
    bool accepted = true;
    std::vector<CheckEntry> entries;
    // First failed entry, for quick access.
    std::string reject_path, reject_condition;

    void add(CheckEntry e);
};

enum class Verdict { Valid, Invalid, Inconclusive };

struct ValidityResult {
    Verdict verdict = Verdict::Valid;
    Value computed;       // the evaluated strongest post
    Exactness exactness = Exactness::Exact;
};

// Evaluate the command on the precondition and compare against the post.
// A widened evaluation below the post is still Valid (the truth lies below
// the widened value); a widened evaluation above it is Inconclusive.
ValidityResult check_validity(const Triple& t, EvalContext& ctx);

// Check a derivation against the triple it claims to prove. All side
// conditions are recorded; acceptance means every one of them holds.
CheckReport check_derivation(const Triple& t, const DerivationNode& proof, EvalContext& ctx);

// Produce a derivation of {pre} cmd {sem(cmd)(pre)}; the synthesized post is
// written through post_out when given. Throws EvalError for star shapes the
// generator does not support.
DerivationPtr derive_strongest_post(const RegCmdPtr& cmd, const Value& pre, EvalContext& ctx,
                                    Value* post_out = nullptr);

// Best-correct-approximation certification of an abstract element through a
// Galois insertion: builds the product-domain triple
//   { <gamma(a), a> } cmd { <c', alpha(c')> }
// with c' the collecting strongest post, and checks a derivation combining
// the inductive proof with a singleton-cover join.
struct BcaResult {
    bool certified = false;
    Value abstract_post;   // alpha(c')
    Triple triple;         // the product-domain triple
    DerivationPtr proof;
    CheckReport report;
};

BcaResult certify_bca(const RegCmdPtr& cmd, const Value& a, const GaloisInsertionPtr& gi,
                      size_t star_budget = 4096);

} // namespace abslog

#endif // ABSLOG_LOGIC_HPP
