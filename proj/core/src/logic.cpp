#include <algorithm>
#include <map>
#include <sstream>

#include "abslog/literal.hpp"
#include "abslog/logic.hpp"

namespace abslog {

const char* rule_name(DerivationNode::Rule r) {
    switch (r) {
        case DerivationNode::Rule::Basic: return "basic";
        case DerivationNode::Rule::Seq: return "seq";
        case DerivationNode::Rule::Cons: return "cons";
        case DerivationNode::Rule::Choice: return "choice";
        case DerivationNode::Rule::Iter: return "iter";
        case DerivationNode::Rule::Rec: return "rec";
        case DerivationNode::Rule::Inv: return "inv";
        case DerivationNode::Rule::Join: return "join";
        case DerivationNode::Rule::Meet: return "meet";
    }
    return "?";
}

void CheckReport::add(CheckEntry e) {
    if (!e.ok && accepted) {
        accepted = false;
        reject_path = e.path;
        reject_condition = e.condition;
    }
    entries.push_back(std::move(e));
}

namespace {

// Label for the final comparison of the synthesized post against the
// triple's post, named after the rule that produced the post.
const char* conclusion_label(DerivationNode::Rule r) {
    switch (r) {
        case DerivationNode::Rule::Basic: return "basic-post";
        case DerivationNode::Rule::Seq: return "seq-post";
        case DerivationNode::Rule::Cons: return "cons-embed";
        case DerivationNode::Rule::Choice: return "choice-oplus";
        case DerivationNode::Rule::Iter: return "iter-sum";
        case DerivationNode::Rule::Rec: return "rec-oplus";
        case DerivationNode::Rule::Inv: return "inv-omega";
        case DerivationNode::Rule::Join: return "join-post";
        case DerivationNode::Rule::Meet: return "meet-post";
    }
    return "post";
}

struct Checker {
    const DomainDescriptor& dom;
    EvalContext& ctx;
    CheckReport report;

    std::string render(const Value& v) const { return print_literal(v, dom); }

    void require(const std::string& path, const std::string& condition, bool ok,
                 const std::string& detail) {
        report.add({path, condition, ok, ok ? std::string() : detail});
    }

    void leq_cond(const std::string& path, const std::string& condition, const Value& lhs,
                  const Value& rhs) {
        bool ok = dom.lattice.le(lhs, rhs);
        require(path, condition, ok, render(lhs) + " is not below " + render(rhs));
    }

    [[noreturn]] void structural(const std::string& path, const std::string& what) {
        throw EvalError("malformed derivation at " + path + ": " + what);
    }

    // Returns the post synthesized for {pre} cmd {...} by this node.
    Value synth(const DerivationNode& n, const RegCmd& cmd, const Value& pre,
                const std::string& prefix) {
        const std::string path = prefix + rule_name(n.rule);
        auto child_prefix = [&](size_t i) { return path + "/" + std::to_string(i) + "/"; };
        auto want_children = [&](size_t k) {
            if (n.children.size() != k)
                structural(path, "expected " + std::to_string(k) + " premises, found " +
                                     std::to_string(n.children.size()));
        };
        auto want_cmd = [&](RegCmd::Kind k, const char* shape) {
            if (cmd.kind != k) structural(path, std::string("rule needs a ") + shape + " command");
        };

        switch (n.rule) {
            case DerivationNode::Rule::Basic:
                want_children(0);
                want_cmd(RegCmd::Kind::Elc, "elementary");
                return full_transfer(cmd.atom, pre, dom);

            case DerivationNode::Rule::Seq: {
                want_children(2);
                want_cmd(RegCmd::Kind::Seq, "sequential");
                Value s1 = synth(*n.children[0], *cmd.kids[0], pre, child_prefix(0));
                leq_cond(path, "seq-mid", s1, n.mid);
                return synth(*n.children[1], *cmd.kids[1], n.mid, child_prefix(1));
            }

            case DerivationNode::Rule::Cons: {
                want_children(1);
                leq_cond(path, "cons-pre", pre, n.inner_pre);
                Value s = synth(*n.children[0], cmd, n.inner_pre, child_prefix(0));
                leq_cond(path, "cons-post", s, n.inner_post);
                return n.inner_post;
            }

            case DerivationNode::Rule::Choice: {
                want_children(2);
                want_cmd(RegCmd::Kind::Choice, "choice");
                Value s1 = synth(*n.children[0], *cmd.kids[0], pre, child_prefix(0));
                leq_cond(path, "choice-k1", s1, n.k1);
                Value s2 = synth(*n.children[1], *cmd.kids[1], pre, child_prefix(1));
                leq_cond(path, "choice-k2", s2, n.k2);
                return dom.monoid.oplus_pair(n.k1, n.k2);
            }

            case DerivationNode::Rule::Iter: {
                want_cmd(RegCmd::Kind::Star, "starred");
                if (n.iterates.empty()) structural(path, "needs at least one iterate");
                want_children(n.iterates.size());
                const size_t last = n.iterates.size() - 1;
                leq_cond(path, "iter-init", pre, n.iterates[0]);
                for (size_t i = 0; i < last; ++i) {
                    Value s = synth(*n.children[i], *cmd.kids[0], n.iterates[i], child_prefix(i));
                    leq_cond(path, "iter-step", s, n.iterates[i + 1]);
                }
                Value s = synth(*n.children[last], *cmd.kids[0], n.iterates[last],
                                child_prefix(last));
                leq_cond(path, "iter-tail", s, n.iterates[last]);
                std::vector<Value> head(n.iterates.begin(), n.iterates.end() - 1);
                return oplus(FamilySpec::eventually_periodic(std::move(head),
                                                             {n.iterates[last]}),
                             dom.monoid);
            }

            case DerivationNode::Rule::Rec: {
                want_children(2);
                want_cmd(RegCmd::Kind::Star, "starred");
                Value s1 = synth(*n.children[0], *cmd.kids[0], pre, child_prefix(0));
                leq_cond(path, "rec-body", s1, n.kp);
                Value s2 = synth(*n.children[1], cmd, n.kp, child_prefix(1));
                leq_cond(path, "rec-star", s2, n.l);
                return dom.monoid.oplus_pair(pre, n.l);
            }

            case DerivationNode::Rule::Inv: {
                want_children(1);
                want_cmd(RegCmd::Kind::Star, "starred");
                Value s = synth(*n.children[0], *cmd.kids[0], pre, child_prefix(0));
                leq_cond(path, "inv-body", s, n.kp);
                leq_cond(path, "inv-embed", n.kp, pre);
                return dom.monoid.omega(pre);
            }

            case DerivationNode::Rule::Join: {
                if (n.family.empty()) structural(path, "needs a non-empty cover");
                want_children(n.family.size());
                require(path, "density", is_dense(n.family, dom.lattice),
                        "the cover is not dense");
                leq_cond(path, "join-cover", pre,
                         combine(CombineKind::Join, n.family, dom.lattice));
                std::vector<Value> posts;
                for (size_t i = 0; i < n.children.size(); ++i)
                    posts.push_back(synth(*n.children[i], cmd, n.family[i], child_prefix(i)));
                return combine(CombineKind::Join, posts, dom.lattice);
            }

            case DerivationNode::Rule::Meet: {
                if (n.family.empty()) structural(path, "needs a non-empty family");
                want_children(n.family.size());
                leq_cond(path, "meet-pre", pre,
                         combine(CombineKind::Meet, n.family, dom.lattice));
                std::vector<Value> posts;
                for (size_t i = 0; i < n.children.size(); ++i)
                    posts.push_back(synth(*n.children[i], cmd, n.family[i], child_prefix(i)));
                return combine(CombineKind::Meet, posts, dom.lattice);
            }
        }
        structural(path, "unknown rule");
    }
};

} // namespace

ValidityResult check_validity(const Triple& t, EvalContext& ctx) {
    auto [v, ex] = sem_eval(*t.cmd, t.pre, ctx);
    bool below = t.dom->lattice.le(v, t.post);
    ValidityResult res;
    res.computed = v;
    res.exactness = ex;
    if (below)
        res.verdict = Verdict::Valid; // a widened value above the truth still bounds it
    else
        res.verdict = ex == Exactness::Exact ? Verdict::Invalid : Verdict::Inconclusive;
    return res;
}

CheckReport check_derivation(const Triple& t, const DerivationNode& proof, EvalContext& ctx) {
    Checker chk{*t.dom, ctx, {}};
    Value s = chk.synth(proof, *t.cmd, t.pre, "proof/");
    std::string path = std::string("proof/") + rule_name(proof.rule);
    chk.leq_cond(path, conclusion_label(proof.rule), s, t.post);
    return chk.report;
}

// ---------------------------------------------------------------------------
// Derivation generation.
// ---------------------------------------------------------------------------

namespace {

struct Generator {
    EvalContext& ctx;
    bool basis_mode = false; // wrap non-elementary steps in singleton-cover joins

    const DomainDescriptor& dom() const { return *ctx.dom; }

    // Derivation of {pre} cmd {post} with post = sem(cmd)(pre), exactly.
    std::pair<DerivationPtr, Value> gen(const RegCmdPtr& cmd, const Value& pre) {
        const LatticeDescriptor& lat = dom().lattice;
        if (cmd->kind == RegCmd::Kind::Elc) {
            auto node = std::make_shared<DerivationNode>();
            node->rule = DerivationNode::Rule::Basic;
            return {node, full_transfer(cmd->atom, pre, dom())};
        }

        if (basis_mode) {
            // Decompose a reducible precondition into its basis cover so the
            // subproofs run on basis elements, where the basis semantics is
            // exact; a precondition that is itself a basis element falls
            // through to the structural rules.
            Value bot = lat.bot();
            std::vector<Value> cover;
            for (auto& b : basis_below(pre, lat))
                if (!lat.eq(b, bot)) cover.push_back(std::move(b));
            if (cover.empty()) cover.push_back(bot);
            if (cover.size() != 1 || !lat.eq(cover[0], pre)) {
                auto node = std::make_shared<DerivationNode>();
                node->rule = DerivationNode::Rule::Join;
                node->family = cover;
                std::vector<Value> posts;
                for (const auto& b : cover) {
                    auto [child, p] = gen_core(cmd, b);
                    node->children.push_back(std::move(child));
                    posts.push_back(std::move(p));
                }
                return {node, combine(CombineKind::Join, posts, lat)};
            }
        }
        return gen_core(cmd, pre);
    }

    std::pair<DerivationPtr, Value> gen_core(const RegCmdPtr& cmd, const Value& pre) {
        switch (cmd->kind) {
            case RegCmd::Kind::Elc: {
                auto node = std::make_shared<DerivationNode>();
                node->rule = DerivationNode::Rule::Basic;
                return {node, full_transfer(cmd->atom, pre, dom())};
            }
            case RegCmd::Kind::Seq: {
                auto [n1, m] = gen(cmd->kids[0], pre);
                auto [n2, p] = gen(cmd->kids[1], m);
                auto node = std::make_shared<DerivationNode>();
                node->rule = DerivationNode::Rule::Seq;
                node->mid = std::move(m);
                node->children = {std::move(n1), std::move(n2)};
                return {node, std::move(p)};
            }
            case RegCmd::Kind::Choice: {
                auto [n1, p1] = gen(cmd->kids[0], pre);
                auto [n2, p2] = gen(cmd->kids[1], pre);
                auto node = std::make_shared<DerivationNode>();
                node->rule = DerivationNode::Rule::Choice;
                node->k1 = p1;
                node->k2 = p2;
                node->children = {std::move(n1), std::move(n2)};
                return {node, dom().monoid.oplus_pair(p1, p2)};
            }
            case RegCmd::Kind::Star:
                return gen_star(cmd->kids[0], pre);
        }
        throw EvalError("unreachable command kind");
    }

    // Encode the summand chain c_0 = pre, c_{i+1} = sem(body)(c_i) as an
    // iteration proof once the chain repeats.
    std::pair<DerivationPtr, Value> gen_star(const RegCmdPtr& body, const Value& pre) {
        const LatticeDescriptor& lat = dom().lattice;
        const MonoidDescriptor& mon = dom().monoid;

        std::vector<Value> chain{pre};
        std::vector<DerivationPtr> steps;
        std::map<Value, size_t> seen{{pre, 0}};
        size_t cycle_start = 0;
        for (size_t i = 0;; ++i) {
            if (i >= ctx.star_budget)
                throw EvalError("loop summand chain did not repeat within the budget");
            auto [child, nxt] = gen(body, chain.back());
            steps.push_back(std::move(child));
            auto it = seen.find(nxt);
            if (it != seen.end()) {
                cycle_start = it->second;
                break;
            }
            seen.emplace(nxt, chain.size());
            chain.push_back(std::move(nxt));
        }
        const size_t last = chain.size() - 1; // steps.size() == chain.size()
        std::vector<Value> cycle(chain.begin() + cycle_start, chain.end());
        Value exact = oplus(FamilySpec::eventually_periodic(
                                std::vector<Value>(chain.begin(), chain.begin() + cycle_start),
                                cycle),
                            mon);

        auto node = std::make_shared<DerivationNode>();
        node->rule = DerivationNode::Rule::Iter;
        if (cycle_start == last) {
            // The chain closes on a fixpoint: its last element is the tail
            // invariant and the step proof doubles as the tail proof.
            node->iterates = chain;
            node->children = std::move(steps);
        } else if (dom().equals_lattice_join && dom().oplus_idempotent) {
            // Collapse the cycle into its join; exact when the one-step map
            // is additive on that join, which is verified here.
            Value tail = combine(CombineKind::Join, cycle, lat);
            auto [tail_child, tail_post] = gen(body, tail);
            if (!lat.le(tail_post, tail))
                throw EvalError("loop cycle join is not an invariant; unsupported loop shape");
            node->iterates = chain;
            node->iterates.push_back(tail);
            node->children = std::move(steps);
            node->children.push_back(std::move(tail_child));
        } else if (mon.idempotent) {
            // Close the cycle under the neutral element when it is the top of
            // the order, so the tail premise is vacuous.
            Value neutral = mon.neutral();
            bool neutral_is_top = false;
            try {
                neutral_is_top = lat.eq(neutral, lat.top());
            } catch (const EvalError&) {
            }
            auto [tail_child, tail_post] = gen(body, neutral);
            if (!neutral_is_top || !lat.le(tail_post, neutral))
                throw EvalError("loop cycle has no expressible tail invariant");
            node->iterates = chain;
            node->iterates.push_back(neutral);
            node->children = std::move(steps);
            node->children.push_back(std::move(tail_child));
        } else {
            throw EvalError("loop summand chain cycles without an expressible tail invariant");
        }

        std::vector<Value> head(node->iterates.begin(), node->iterates.end() - 1);
        Value synth = oplus(FamilySpec::eventually_periodic(std::move(head),
                                                            {node->iterates.back()}),
                            mon);
        if (!lat.eq(synth, exact))
            throw EvalError("loop encoding is not exact; unsupported loop shape");
        return {node, synth};
    }
};

std::string space_to_string(const FinStateSpace& space) {
    std::ostringstream out;
    for (size_t i = 0; i < space.vars.size(); ++i) {
        if (i) out << ',';
        out << space.vars[i].name << ':' << space.vars[i].lo << ".." << space.vars[i].hi;
    }
    return out.str();
}

} // namespace

DerivationPtr derive_strongest_post(const RegCmdPtr& cmd, const Value& pre, EvalContext& ctx,
                                    Value* post_out) {
    const DomainDescriptor& dom = *ctx.dom;
    bool inductive = dom.prefer_inductive || dom.additive_semantics ||
                     dom.lattice.basis_kind == BasisKind::Trivial;
    Generator g{ctx, !inductive};
    auto [node, post] = g.gen(cmd, pre);
    if (post_out) *post_out = std::move(post);
    return node;
}

BcaResult certify_bca(const RegCmdPtr& cmd, const Value& a, const GaloisInsertionPtr& gi,
                      size_t star_budget) {
    constexpr size_t kCoverCap = 2048;

    DomainPtr prod = make_domain("product(" + gi->spec + ")");
    DomainPtr coll = make_domain("collecting(" + space_to_string(gi->space) + ")");

    EvalContext cctx(coll);
    cctx.star_budget = star_budget;
    Value c0 = gi->gamma(a);
    Value cprime = isem_eval(*cmd, c0, cctx);
    Value aprime = gi->alpha(cprime);

    Value pre = make_pair_value(c0, a);
    Value post = make_pair_value(cprime, aprime);

    EvalContext pctx(prod);
    pctx.star_budget = star_budget;

    auto meet = std::make_shared<DerivationNode>();
    meet->rule = DerivationNode::Rule::Meet;
    meet->family.push_back(pre);
    meet->children.push_back(derive_strongest_post(cmd, pre, pctx));

    const auto& states = c0.state_set().states;
    if (!states.empty() && states.size() <= kCoverCap) {
        auto join = std::make_shared<DerivationNode>();
        join->rule = DerivationNode::Rule::Join;
        for (const auto& s : states) {
            StateSet one;
            one.states.push_back(s);
            Value cz(one);
            Value elem = make_pair_value(cz, gi->alpha(cz));
            join->children.push_back(derive_strongest_post(cmd, elem, pctx));
            join->family.push_back(std::move(elem));
        }
        meet->family.push_back(pre);
        meet->children.push_back(std::move(join));
    }

    auto proof = std::make_shared<DerivationNode>();
    proof->rule = DerivationNode::Rule::Cons;
    proof->inner_pre = pre;
    proof->inner_post = post;
    proof->children.push_back(std::move(meet));

    BcaResult res;
    res.triple = Triple{prod, pre, cmd, post};
    res.proof = proof;
    res.abstract_post = aprime;
    EvalContext chk(prod);
    chk.star_budget = star_budget;
    res.report = check_derivation(res.triple, *proof, chk);
    res.certified = res.report.accepted;
    return res;
}

} // namespace abslog
