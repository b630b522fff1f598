#include <algorithm>
#include <numeric>
#include <set>

#include "abslog/eval.hpp"

namespace abslog {

namespace {

// ---------------------------------------------------------------------------
// Star evaluation helpers.
// ---------------------------------------------------------------------------

// Syntactic profile of a loop body used by the shift-invariance certificate.
// A body is "shift only" when every atom either filters (comparison or
// residue test) or shifts the variable by a constant; under that restriction
// the one-step successor set of a singleton beyond all comparison constants
// depends only on the residue class of its value.
struct BodyProfile {
    bool shift_only = true;
    int64_t maxc = 0;     // largest |c| among comparison filters
    int64_t modlcm = 1;   // lcm of residue-test moduli
    int64_t totshift = 0; // sum of |c| over shift assignments
};

void profile_body(const RegCmd& r, BodyProfile& p) {
    switch (r.kind) {
        case RegCmd::Kind::Elc:
            switch (r.atom.kind) {
                case ElcAtom::Kind::Skip:
                case ElcAtom::Kind::Diverge:
                    break;
                case ElcAtom::Kind::Assign:
                    if (r.atom.aexp.kind == AExp::Kind::AddC || r.atom.aexp.kind == AExp::Kind::SubC)
                        p.totshift += static_cast<int64_t>(std::llabs(r.atom.aexp.c));
                    else if (r.atom.aexp.kind != AExp::Kind::Var)
                        p.shift_only = false;
                    break;
                case ElcAtom::Kind::Filter:
                    if (r.atom.bexp.kind == BExp::Kind::Cmp)
                        p.maxc = std::max<int64_t>(p.maxc, std::llabs(r.atom.bexp.c));
                    else
                        p.modlcm = std::lcm(p.modlcm, r.atom.bexp.m);
                    break;
            }
            return;
        case RegCmd::Kind::Seq:
        case RegCmd::Kind::Choice:
            profile_body(*r.kids[0], p);
            profile_body(*r.kids[1], p);
            return;
        case RegCmd::Kind::Star:
            // A nested loop can displace intermediate values arbitrarily far,
            // which defeats the threshold argument below.
            p.shift_only = false;
            profile_body(*r.kids[0], p);
            return;
    }
}

bool all_singletons(const std::vector<Value>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](const Value& v) {
        return v.is_interval() && v.interval().is_singleton();
    });
}

std::vector<int64_t> singleton_points(const std::vector<Value>& vs) {
    std::vector<int64_t> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(v.interval().lo.v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// One widening step on intervals: bounds that grew are pushed to infinity.
Value widen_interval(const Value& wv, const Value& uv) {
    const Interval& w = wv.interval();
    const Interval& u = uv.interval();
    if (w.empty) return uv;
    if (u.empty) return wv;
    Bound lo = (u.lo < w.lo) ? Bound::neg_inf() : w.lo;
    Bound hi = (w.hi < u.hi) ? Bound::pos_inf() : w.hi;
    return Value(Interval::make(lo, hi));
}

Value eval_cmd_full(const RegCmd& r, const Value& d, EvalContext& ctx);

// Post-hoc stabilization for interval-shaped carriers: find a widened
// invariant w with d (+) step(w) below w. Sound because the true star is
// below every such w; the result is flagged as widened.
Value star_widen(const RegCmd& body, const Value& d, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    if (!dom.widenable || !ctx.widening_enabled || dom.shape.kind != CarrierShape::Kind::Interval)
        throw StarDidNotStabilize("star iteration exceeded the budget for " + dom.spec);
    ctx.exactness = Exactness::Widened;
    Value w = d;
    for (int i = 0; i < 8; ++i) {
        Value stepped = eval_cmd_full(body, w, ctx);
        Value u = combine(CombineKind::Join, {d, stepped}, dom.lattice);
        if (dom.lattice.le(u, w)) return w;
        w = widen_interval(w, u);
    }
    throw StarDidNotStabilize("widening did not stabilize for " + dom.spec);
}

// Star over a carrier whose sum is the lattice join and idempotent: the star
// of a basis element is the join of all basis elements reachable through the
// body, computed frontier by frontier. For interval carriers an escaping
// frontier is closed off exactly by the shift-invariance certificate, or
// soundly by widening.
Value star_reach(const RegCmd& body, const Value& b, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    const bool interval_carrier = dom.shape.kind == CarrierShape::Kind::Interval;
    const Value bot = dom.lattice.bot();

    std::set<Value> reached{b};
    std::vector<Value> frontier{b};
    Value joined = b;
    BodyProfile prof;
    bool profiled = false;

    const size_t gen_cap = (dom.widenable && ctx.widening_enabled)
                               ? std::min<size_t>(ctx.star_budget, 64)
                               : ctx.star_budget;
    for (size_t gen = 0;; ++gen) {
        if (frontier.empty()) return joined;
        if (gen >= gen_cap || reached.size() > ctx.star_budget)
            return star_widen(body, b, ctx);

        // Raw one-step image of the frontier (bottom entries dropped).
        std::vector<Value> image;
        try {
            std::set<Value> img;
            for (const auto& f : frontier) {
                Value v = bsem_eval(body, f, ctx);
                for (auto& bb : basis_below(v, dom.lattice))
                    if (!dom.lattice.eq(bb, bot)) img.insert(std::move(bb));
            }
            image.assign(img.begin(), img.end());
        } catch (const InfiniteBasisDecomposition&) {
            return star_widen(body, b, ctx);
        }

        // Shift-invariance certificate: when the whole frontier moves by a
        // uniform stride, stays on its residue classes, and sits beyond every
        // value a comparison could distinguish, the remaining tail is exactly
        // the ray swept by the stride.
        if (interval_carrier && !frontier.empty() && all_singletons(frontier) &&
            all_singletons(image)) {
            std::vector<int64_t> from = singleton_points(frontier);
            std::vector<int64_t> to = singleton_points(image);
            if (!from.empty() && !to.empty()) {
                // Look for a stride delta with image ∪ frontier = frontier ∪
                // (frontier + delta): the one-step image may overlap the
                // frontier (bodies with several strides do), but everything
                // new must be the frontier translated by one stride.
                auto with_stride = [&](int64_t d) {
                    std::vector<int64_t> want = from;
                    for (int64_t x : from) want.push_back(x + d);
                    std::sort(want.begin(), want.end());
                    want.erase(std::unique(want.begin(), want.end()), want.end());
                    std::vector<int64_t> have = from;
                    have.insert(have.end(), to.begin(), to.end());
                    std::sort(have.begin(), have.end());
                    have.erase(std::unique(have.begin(), have.end()), have.end());
                    return want == have;
                };
                int64_t delta = 0;
                for (int64_t t : to) {
                    int64_t d = t - from.front();
                    if (d != 0 && with_stride(d)) { delta = d; break; }
                }
                if (delta != 0) {
                    if (!profiled) {
                        profile_body(body, prof);
                        profiled = true;
                    }
                    int64_t threshold = prof.maxc + prof.totshift;
                    bool clear = prof.shift_only && delta % prof.modlcm == 0 &&
                                 ((delta > 0 && from.front() > threshold) ||
                                  (delta < 0 && from.back() < -threshold));
                    if (clear) {
                        Interval ray = delta > 0
                                           ? Interval::make(Bound::of(from.front()), Bound::pos_inf())
                                           : Interval::make(Bound::neg_inf(), Bound::of(from.back()));
                        return combine(CombineKind::Join, {joined, Value(ray)}, dom.lattice);
                    }
                }
            }
        }

        std::vector<Value> fresh;
        for (auto& bb : image)
            if (reached.insert(bb).second) fresh.push_back(bb);
        if (!fresh.empty()) {
            std::vector<Value> fam = fresh;
            fam.push_back(joined);
            joined = combine(CombineKind::Join, fam, dom.lattice);
        }
        frontier = std::move(fresh);
    }
}

// Sum of an eventually periodic chain detected by value repetition.
Value chain_star(const std::function<Value(const Value&)>& step, const Value& c,
                 EvalContext& ctx, const RegCmd* body_for_widening) {
    const DomainDescriptor& dom = *ctx.dom;
    const size_t cap = (dom.widenable && ctx.widening_enabled)
                           ? std::min<size_t>(ctx.star_budget, 64)
                           : ctx.star_budget;
    std::vector<Value> chain{c};
    std::map<Value, size_t> seen{{c, 0}};
    for (size_t i = 0; i < cap; ++i) {
        Value nxt = step(chain.back());
        auto it = seen.find(nxt);
        if (it != seen.end()) {
            std::vector<Value> prefix(chain.begin(), chain.begin() + it->second);
            std::vector<Value> period(chain.begin() + it->second, chain.end());
            return oplus(FamilySpec::eventually_periodic(std::move(prefix), std::move(period)),
                         dom.monoid);
        }
        seen.emplace(nxt, chain.size());
        chain.push_back(std::move(nxt));
    }
    if (body_for_widening) return star_widen(*body_for_widening, c, ctx);
    throw StarDidNotStabilize("star chain exceeded the budget for " + dom.spec);
}

// Star over a carrier whose sum differs from the lattice join (or is not
// idempotent): tabulate the join-extension recursion over the finitely many
// reachable basis elements and detect the period of the column of interest.
Value star_table(const RegCmd& body, const Value& b, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    if (dom.lattice.basis_kind == BasisKind::Trivial) {
        // One-dimensional table: the recursion follows a single chain.
        return chain_star([&](const Value& v) { return bsem_eval(body, v, ctx); }, b, ctx,
                          dom.widenable ? &body : nullptr);
    }

    // Close the set of basis elements reachable through one body step.
    std::vector<Value> reached{b};
    std::map<Value, int> index{{b, 0}};
    std::vector<std::vector<int>> succ;
    for (size_t i = 0; i < reached.size(); ++i) {
        if (reached.size() > ctx.star_budget)
            throw StarDidNotStabilize("reachable basis exceeded the budget for " + dom.spec);
        Value v = bsem_eval(body, reached[i], ctx);
        std::vector<int> ss;
        for (auto& bb : basis_below(v, dom.lattice)) {
            auto [it, fresh] = index.emplace(bb, static_cast<int>(reached.size()));
            if (fresh) reached.push_back(it->first);
            ss.push_back(it->second);
        }
        succ.push_back(std::move(ss));
    }

    // g[j] after i iterations is the i-step value out of reached[j]; the
    // summand chain is the column of b and repeats once the table does.
    std::vector<Value> table = reached;
    std::map<std::vector<Value>, size_t> seen{{table, 0}};
    std::vector<Value> column{table[0]};
    for (size_t i = 1; i <= ctx.star_budget; ++i) {
        std::vector<Value> next(table.size());
        for (size_t j = 0; j < table.size(); ++j) {
            std::vector<Value> fam;
            fam.reserve(succ[j].size());
            for (int k : succ[j]) fam.push_back(table[k]);
            next[j] = combine(CombineKind::Join, fam, dom.lattice);
        }
        auto it = seen.find(next);
        if (it != seen.end()) {
            std::vector<Value> prefix(column.begin(), column.begin() + it->second);
            std::vector<Value> period(column.begin() + it->second, column.end());
            return oplus(FamilySpec::eventually_periodic(std::move(prefix), std::move(period)),
                         dom.monoid);
        }
        seen.emplace(next, i);
        column.push_back(next[0]);
        table = std::move(next);
    }
    throw StarDidNotStabilize("star table exceeded the budget for " + dom.spec);
}

Value isem_rec(const RegCmd& r, const Value& c, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    switch (r.kind) {
        case RegCmd::Kind::Elc:
            return full_transfer(r.atom, c, dom);
        case RegCmd::Kind::Seq:
            return isem_rec(*r.kids[1], isem_rec(*r.kids[0], c, ctx), ctx);
        case RegCmd::Kind::Choice:
            return dom.monoid.oplus_pair(isem_rec(*r.kids[0], c, ctx),
                                         isem_rec(*r.kids[1], c, ctx));
        case RegCmd::Kind::Star:
            return chain_star([&](const Value& v) { return isem_rec(*r.kids[0], v, ctx); }, c,
                              ctx, dom.widenable ? r.kids[0].get() : nullptr);
    }
    throw EvalError("unreachable command kind");
}

// Full semantics on an arbitrary element, choosing the inductive route when
// the domain prefers it (and for interval widening, where basis enumeration
// is unavailable).
Value eval_cmd_full(const RegCmd& r, const Value& d, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    if (dom.prefer_inductive || dom.shape.kind == CarrierShape::Kind::Interval)
        return isem_rec(r, d, ctx);
    return join_extension([&](const Value& b) { return bsem_eval(r, b, ctx); }, d, ctx);
}

} // namespace

// ---------------------------------------------------------------------------
// Public entry points.
// ---------------------------------------------------------------------------

Value full_transfer(const ElcAtom& e, const Value& d, const DomainDescriptor& dom) {
    if (e.kind == ElcAtom::Kind::Skip) return d;
    if (e.kind == ElcAtom::Kind::Diverge) return dom.monoid.neutral();
    return dom.elementary_transfer(e, d);
}

Value join_extension(const std::function<Value(const Value&)>& f, const Value& d,
                     EvalContext& ctx) {
    const LatticeDescriptor& lat = ctx.dom->lattice;
    if (lat.basis_kind == BasisKind::Trivial) return f(d);
    std::vector<Value> outs;
    for (const auto& b : basis_below(d, lat)) outs.push_back(f(b));
    return combine(CombineKind::Join, outs, lat);
}

Value bsem_eval(const RegCmd& r, const Value& b, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    auto key = std::make_pair(r.id, b);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

    Value out = dom.lattice.bot();
    switch (r.kind) {
        case RegCmd::Kind::Elc:
            out = full_transfer(r.atom, b, dom);
            break;
        case RegCmd::Kind::Seq: {
            Value v1 = bsem_eval(*r.kids[0], b, ctx);
            out = join_extension([&](const Value& bb) { return bsem_eval(*r.kids[1], bb, ctx); },
                                 v1, ctx);
            break;
        }
        case RegCmd::Kind::Choice:
            out = dom.monoid.oplus_pair(bsem_eval(*r.kids[0], b, ctx),
                                        bsem_eval(*r.kids[1], b, ctx));
            break;
        case RegCmd::Kind::Star:
            out = (dom.equals_lattice_join && dom.oplus_idempotent)
                      ? star_reach(*r.kids[0], b, ctx)
                      : star_table(*r.kids[0], b, ctx);
            break;
    }
    ctx.memo.emplace(std::move(key), out);
    return out;
}

std::pair<Value, Exactness> sem_eval(const RegCmd& r, const Value& d, EvalContext& ctx) {
    if (ctx.dom->prefer_inductive) {
        Value v = isem_eval(r, d, ctx);
        return {v, ctx.exactness};
    }
    Value v = join_extension([&](const Value& b) { return bsem_eval(r, b, ctx); }, d, ctx);
    return {v, ctx.exactness};
}

Value isem_eval(const RegCmd& r, const Value& c, EvalContext& ctx) {
    const DomainDescriptor& dom = *ctx.dom;
    if (dom.lattice.basis_kind != BasisKind::Trivial && !dom.additive_semantics)
        throw FastPathUnavailable("inductive semantics is unsupported for " + dom.spec);
    return isem_rec(r, c, ctx);
}

} // namespace abslog
