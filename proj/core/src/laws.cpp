#include <algorithm>
#include <functional>
#include <sstream>

#include "abslog/eval.hpp"
#include "abslog/laws.hpp"
#include "abslog/literal.hpp"

namespace abslog {

namespace {

// Runs one sampled law. The body returns an empty string on success, a
// rendered counterexample on failure, and may throw any library error to
// skip the sample (unsupported operation for the drawn values).
void run_law(LawReport& rep, const std::string& law, size_t samples, uint64_t seed,
             const std::function<std::string(std::mt19937_64&)>& body) {
    LawEntry e;
    e.law = law;
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(law));
    for (size_t i = 0; i < samples; ++i) {
        std::string cx;
        try {
            cx = body(rng);
        } catch (const Error&) {
            continue; // skipped sample
        }
        ++e.checked;
        if (!cx.empty()) {
            if (e.failures == 0) e.counterexample = cx;
            ++e.failures;
        }
    }
    rep.entries.push_back(std::move(e));
}

std::string fail2(const DomainDescriptor& dom, const char* what, const Value& a, const Value& b) {
    return std::string(what) + ": " + print_literal(a, dom) + " vs " + print_literal(b, dom);
}

} // namespace

LawReport check_lattice_laws(const DomainDescriptor& dom, size_t samples, uint64_t seed) {
    const LatticeDescriptor& lat = dom.lattice;
    LawReport rep;
    rep.subject = dom.spec + " lattice";
    rep.seed = seed;
    auto sample = [&](std::mt19937_64& rng) { return lat.sample(rng); };

    run_law(rep, "leq-reflexive", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng);
        return lat.le(a, a) ? "" : print_literal(a, dom);
    });
    run_law(rep, "leq-transitive", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng);
        Value b = combine(CombineKind::Join, {a, sample(rng)}, lat);
        Value c = combine(CombineKind::Join, {b, sample(rng)}, lat);
        return (lat.le(a, b) && lat.le(b, c) && !lat.le(a, c)) ? fail2(dom, "a,c", a, c) : "";
    });
    run_law(rep, "leq-join-agree", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng), b = sample(rng);
        bool le = lat.le(a, b);
        bool eq = lat.eq(combine(CombineKind::Join, {a, b}, lat), b);
        return le == eq ? "" : fail2(dom, "a,b", a, b);
    });
    run_law(rep, "join-is-lub", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng), b = sample(rng), c = sample(rng);
        Value j = combine(CombineKind::Join, {a, b}, lat);
        if (!lat.le(a, j) || !lat.le(b, j)) return fail2(dom, "not an upper bound", a, b);
        Value u = combine(CombineKind::Join, {a, b, c}, lat);
        return lat.le(j, u) ? "" : fail2(dom, "not least", j, u);
    });
    run_law(rep, "meet-is-glb", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng), b = sample(rng), c = sample(rng);
        Value m = combine(CombineKind::Meet, {a, b}, lat);
        if (!lat.le(m, a) || !lat.le(m, b)) return fail2(dom, "not a lower bound", a, b);
        Value l = combine(CombineKind::Meet, {a, b, c}, lat);
        return lat.le(l, m) ? "" : fail2(dom, "not greatest", l, m);
    });
    run_law(rep, "bot-least", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng);
        return lat.le(lat.bot(), a) ? "" : print_literal(a, dom);
    });
    run_law(rep, "basis-decomposition", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng);
        Value j = combine(CombineKind::Join, basis_below(a, lat), lat);
        return lat.eq(j, a) ? "" : fail2(dom, "join of ebase", j, a);
    });
    run_law(rep, "basis-members-below", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng);
        for (const auto& b : basis_below(a, lat))
            if (!lat.le(b, a)) return fail2(dom, "basis element", b, a);
        return "";
    });
    if (lat.dense_fast_path && lat.dense_fast_path_literal) {
        run_law(rep, "dense-fast-path-agrees", samples, seed,
                [&](std::mt19937_64& rng) -> std::string {
                    Value a = sample(rng), b = sample(rng);
                    std::vector<Value> fam{a, b};
                    if (!is_dense(fam, lat)) return fail2(dom, "fast path rejected", a, b);
                    // Direct check against the definition on the enumerable part.
                    Value j = combine(CombineKind::Join, fam, lat);
                    for (const auto& e : basis_below(j, lat))
                        if (!lat.le(e, a) && !lat.le(e, b))
                            return fail2(dom, "witness basis element", e, j);
                    return "";
                });
    }
    return rep;
}

LawReport check_monoid_laws(const DomainDescriptor& dom, size_t samples, uint64_t seed) {
    const LatticeDescriptor& lat = dom.lattice;
    const MonoidDescriptor& mon = dom.monoid;
    LawReport rep;
    rep.subject = dom.spec + " monoid";
    rep.seed = seed;
    auto sample = [&](std::mt19937_64& rng) { return lat.sample(rng); };
    auto op = [&](const Value& a, const Value& b) { return mon.oplus_pair(a, b); };

    run_law(rep, "oplus-associative", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng), b = sample(rng), c = sample(rng);
        Value l = op(op(a, b), c), r = op(a, op(b, c));
        return lat.eq(l, r) ? "" : fail2(dom, "(ab)c vs a(bc)", l, r);
    });
    run_law(rep, "oplus-commutative", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng), b = sample(rng);
        Value l = op(a, b), r = op(b, a);
        return lat.eq(l, r) ? "" : fail2(dom, "ab vs ba", l, r);
    });
    run_law(rep, "oplus-neutral", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng);
        Value l = op(a, mon.neutral());
        return lat.eq(l, a) ? "" : fail2(dom, "a+0 vs a", l, a);
    });
    if (mon.idempotent) {
        run_law(rep, "oplus-idempotent", samples, seed, [&](std::mt19937_64& rng) -> std::string {
            Value a = sample(rng);
            Value l = op(a, a);
            return lat.eq(l, a) ? "" : fail2(dom, "a+a vs a", l, a);
        });
    }
    run_law(rep, "oplus-monotone", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = sample(rng), b = sample(rng);
        Value a2 = combine(CombineKind::Join, {a, sample(rng)}, lat);
        return lat.le(op(a, b), op(a2, b)) ? "" : fail2(dom, "a<=a'", a, a2);
    });
    run_law(rep, "oplus-distributes-over-join", samples, seed,
            [&](std::mt19937_64& rng) -> std::string {
                Value a = sample(rng), b = sample(rng), c = sample(rng);
                Value l = op(a, combine(CombineKind::Join, {b, c}, lat));
                Value r = combine(CombineKind::Join, {op(a, b), op(a, c)}, lat);
                return lat.eq(l, r) ? "" : fail2(dom, "a+(b|c) vs (a+b)|(a+c)", l, r);
            });
    run_law(rep, "oplus-partition-associative", samples, seed,
            [&](std::mt19937_64& rng) -> std::string {
                // Summing a 4-element family in two groupings.
                Value a = sample(rng), b = sample(rng), c = sample(rng), d = sample(rng);
                Value l = op(op(a, b), op(c, d));
                Value r = op(op(a, d), op(b, c));
                return lat.eq(l, r) ? "" : fail2(dom, "groupings", l, r);
            });
    if (mon.omega_sum) {
        run_law(rep, "omega-matches-partial-sums", samples, seed,
                [&](std::mt19937_64& rng) -> std::string {
                    Value a = sample(rng);
                    Value acc = a;
                    for (int i = 0; i < 10; ++i) {
                        Value nxt = op(acc, a);
                        if (lat.eq(nxt, acc)) {
                            Value w = mon.omega(a);
                            return lat.eq(w, acc) ? "" : fail2(dom, "omega vs fixpoint", w, acc);
                        }
                        acc = std::move(nxt);
                    }
                    throw EvalError("partial sums did not stabilize"); // skip
                });
    }
    if (mon.equals_lattice_join) {
        run_law(rep, "oplus-equals-join", samples, seed, [&](std::mt19937_64& rng) -> std::string {
            Value a = sample(rng), b = sample(rng);
            Value l = op(a, b), r = combine(CombineKind::Join, {a, b}, lat);
            return lat.eq(l, r) ? "" : fail2(dom, "a+b vs a|b", l, r);
        });
    }
    return rep;
}

namespace {

CarrierShape upper_shape(const GaloisInsertion& gi) {
    if (gi.spec.rfind("trivial-top", 0) == 0) return CarrierShape::point();
    return CarrierShape::interval();
}

std::vector<ElcAtom> law_atoms(const std::string& var) {
    AExp inc{AExp::Kind::AddC, 1}, dec{AExp::Kind::SubC, 1}, zero{AExp::Kind::Const, 0},
        neg{AExp::Kind::Neg, 0};
    BExp pos;
    pos.kind = BExp::Kind::Cmp;
    pos.op = BExp::CmpOp::Gt;
    pos.c = 0;
    BExp odd;
    odd.kind = BExp::Kind::ModEq;
    odd.m = 2;
    odd.r = 1;
    return {ElcAtom::skip(),
            ElcAtom::diverge(),
            ElcAtom::assign(var, inc),
            ElcAtom::assign(var, dec),
            ElcAtom::assign(var, zero),
            ElcAtom::assign(var, neg),
            ElcAtom::filter(var, pos),
            ElcAtom::filter(var, odd)};
}

} // namespace

LawReport check_galois_laws(const GaloisInsertion& gi, size_t samples, uint64_t seed) {
    LawReport rep;
    rep.subject = gi.spec;
    rep.seed = seed;
    const LatticeDescriptor& lo = gi.lower;
    const LatticeDescriptor& up = gi.upper;
    CarrierShape lo_shape = CarrierShape::states();
    CarrierShape up_shape = upper_shape(gi);
    auto rc = [&](const Value& v) { return print_literal(v, lo_shape, gi.space); };
    auto ra = [&](const Value& v) { return print_literal(v, up_shape, gi.space); };

    run_law(rep, "insertion", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = up.sample(rng);
        Value back = gi.alpha(gi.gamma(a));
        return up.leq(back, a) && up.leq(a, back) ? "" : ra(a) + " vs " + ra(back);
    });
    run_law(rep, "adjunction", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value c = lo.sample(rng);
        Value a = up.sample(rng);
        bool lower_side = lo.leq(c, gi.gamma(a));
        bool upper_side = up.leq(gi.alpha(c), a);
        return lower_side == upper_side ? "" : rc(c) + " vs " + ra(a);
    });
    run_law(rep, "alpha-monotone", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value c = lo.sample(rng);
        Value c2 = lo.join_family({c, lo.sample(rng)});
        return up.leq(gi.alpha(c), gi.alpha(c2)) ? "" : rc(c) + " vs " + rc(c2);
    });
    run_law(rep, "gamma-monotone", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = up.sample(rng);
        Value a2 = up.join_family({a, up.sample(rng)});
        return lo.leq(gi.gamma(a), gi.gamma(a2)) ? "" : ra(a) + " vs " + ra(a2);
    });
    run_law(rep, "alpha-preserves-joins", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value c1 = lo.sample(rng), c2 = lo.sample(rng);
        Value l = gi.alpha(lo.join_family({c1, c2}));
        Value r = up.join_family({gi.alpha(c1), gi.alpha(c2)});
        return up.leq(l, r) && up.leq(r, l) ? "" : ra(l) + " vs " + ra(r);
    });
    run_law(rep, "gamma-order-embedding", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = up.sample(rng), b = up.sample(rng);
        bool upper = up.leq(a, b);
        bool lower = lo.leq(gi.gamma(a), gi.gamma(b));
        // gamma reflects and preserves the order of its image.
        if (upper && !lower) return ra(a) + " vs " + ra(b);
        return "";
    });
    run_law(rep, "transfer-is-bca", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        Value a = up.sample(rng);
        const auto atoms = law_atoms(gi.space.vars[0].name);
        const ElcAtom& e = atoms[rng() % atoms.size()];
        Value via_concrete =
            gi.alpha(Value(post_elementary(e, gi.gamma(a).state_set(), gi.space)));
        Value direct = gi.abstract_transfer(e, a);
        return up.leq(via_concrete, direct) && up.leq(direct, via_concrete)
                   ? ""
                   : ra(via_concrete) + " vs " + ra(direct);
    });
    return rep;
}

RegCmdPtr random_program(std::mt19937_64& rng, const std::vector<std::string>& vars,
                         int max_depth) {
    auto atom = [&]() {
        const std::string& v = vars[rng() % vars.size()];
        auto pool = law_atoms(v);
        return make_elc(pool[rng() % pool.size()]);
    };
    if (max_depth <= 0) return atom();
    switch (rng() % 8) {
        case 0:
        case 1:
        case 2:
            return atom();
        case 3:
        case 4:
            return make_seq(random_program(rng, vars, max_depth - 1),
                            random_program(rng, vars, max_depth - 1));
        case 5:
        case 6:
            return make_choice(random_program(rng, vars, max_depth - 1),
                               random_program(rng, vars, max_depth - 1));
        default:
            return make_star(random_program(rng, vars, max_depth - 1));
    }
}

LawReport check_program_laws(const DomainPtr& dom, size_t samples, uint64_t seed) {
    LawReport rep;
    rep.subject = dom->spec + " semantics";
    rep.seed = seed;
    const LatticeDescriptor& lat = dom->lattice;
    std::vector<std::string> vars;
    if (dom->space)
        for (const auto& v : dom->space->vars) vars.push_back(v.name);
    else
        vars.push_back("x");

    // Evaluate exactly or skip the sample.
    auto eval_exact = [&](const RegCmdPtr& r, const Value& d) {
        EvalContext ctx(dom);
        ctx.star_budget = 512;
        ctx.widening_enabled = false;
        auto [v, ex] = sem_eval(*r, d, ctx);
        if (ex != Exactness::Exact) throw EvalError("widened");
        return v;
    };

    run_law(rep, "star-left-expansion", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        RegCmdPtr r = random_program(rng, vars, 2);
        Value d = lat.sample(rng);
        RegCmdPtr lhs = make_star(r);
        RegCmdPtr rhs = make_choice(make_elc(ElcAtom::skip()), make_seq(r, make_star(r)));
        Value l = eval_exact(lhs, d), rv = eval_exact(rhs, d);
        return lat.eq(l, rv) ? "" : fail2(*dom, "r* vs 1+r;r*", l, rv);
    });
    run_law(rep, "seq-left-distributivity", samples, seed,
            [&](std::mt19937_64& rng) -> std::string {
                RegCmdPtr s = random_program(rng, vars, 2);
                RegCmdPtr r1 = random_program(rng, vars, 2);
                RegCmdPtr r2 = random_program(rng, vars, 2);
                Value d = lat.sample(rng);
                Value l = eval_exact(make_seq(s, make_choice(r1, r2)), d);
                Value rv = eval_exact(make_choice(make_seq(s, r1), make_seq(s, r2)), d);
                return lat.eq(l, rv) ? "" : fail2(*dom, "s;(a+b) vs s;a+s;b", l, rv);
            });
    run_law(rep, "sem-monotone", samples, seed, [&](std::mt19937_64& rng) -> std::string {
        RegCmdPtr r = random_program(rng, vars, 3);
        Value d = lat.sample(rng);
        Value d2 = combine(CombineKind::Join, {d, lat.sample(rng)}, lat);
        Value l = eval_exact(r, d), rv = eval_exact(r, d2);
        return lat.le(l, rv) ? "" : fail2(*dom, "sem(d) vs sem(d')", l, rv);
    });
    run_law(rep, "sem-additive-on-dense-families", samples, seed,
            [&](std::mt19937_64& rng) -> std::string {
                RegCmdPtr r = random_program(rng, vars, 3);
                Value d = lat.sample(rng);
                std::vector<Value> fam = basis_below(d, lat); // dense by construction
                Value whole = eval_exact(r, d);
                std::vector<Value> parts;
                for (const auto& b : fam) parts.push_back(eval_exact(r, b));
                Value joined = combine(CombineKind::Join, parts, lat);
                return lat.eq(whole, joined) ? "" : fail2(*dom, "sem(|X) vs |sem(X)", whole, joined);
            });
    return rep;
}

} // namespace abslog
