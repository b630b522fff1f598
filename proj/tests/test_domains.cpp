#include "doctest.h"
#include "helpers.hpp"

#include <set>

using namespace abslog;

namespace {

// Exhaustive one-variable reachability by worklist, independent of the
// evaluator: the ground truth for loop postconditions on finite spaces.
std::set<int64_t> reach(const std::set<int64_t>& init,
                        const std::vector<std::function<std::optional<int64_t>(int64_t)>>& steps,
                        int64_t lo, int64_t hi) {
    std::set<int64_t> seen = init;
    std::vector<int64_t> work(init.begin(), init.end());
    while (!work.empty()) {
        int64_t x = work.back();
        work.pop_back();
        for (const auto& f : steps)
            if (auto y = f(x))
                if (*y >= lo && *y <= hi && seen.insert(*y).second) work.push_back(*y);
    }
    return seen;
}

Value states_of(const std::set<int64_t>& xs) {
    StateSet s;
    for (int64_t x : xs) s.states.push_back({x});
    return Value{s};
}

} // namespace

TEST_CASE("literal parsing round-trips for every carrier shape") {
    struct Case { const char* spec; const char* text; };
    const Case cases[] = {
        {"interval(irreducible)", "[-1,1]"},
        {"interval(irreducible)", "[0,+inf)"},
        {"interval(irreducible)", "(-inf,+inf)"},
        {"interval(irreducible)", "empty"},
        {"collecting(x:-2..1002)", "{0,999}"},
        {"collecting(x:-2..1002)", "{}"},
        {"hyper(collecting(x:0..3))", "{{0},{2}}"},
        {"hyper(collecting(x:0..3))", "{}"},
        {"downclosed(hyper(interval(irreducible)))", "down{[0,0]; prog(2k+0)}"},
        {"downclosed(hyper(interval(irreducible)))", "down{}"},
        {"downclosed(hyper(interval(irreducible)))", "down{empty}"},
        {"product(interval-over-powerset(x:-2..1002))", "<{1,999} | [1,999]>"},
        {"pointwise(trivial-top(x:0..3))", "{top}"},
    };
    for (const auto& c : cases) {
        auto dom = make_domain(c.spec);
        Value v = parse_literal(c.text, *dom);
        std::string printed = print_literal(v, *dom);
        // Printing then reparsing must give the same value (the printed
        // spelling is the canonical one, not necessarily the input spelling).
        CHECK(dom->lattice.eq(parse_literal(printed, *dom), v));
    }
    auto dom = make_domain("collecting(x:0..3)");
    CHECK_THROWS_AS(parse_literal("[0,1]", *dom), Error);
    CHECK_THROWS_AS(parse_literal("{17}", *dom), Error); // outside the space
}

TEST_CASE("counter loop reachability matches the worklist oracle") {
    auto dom = make_domain("collecting(x:-2..1002)");
    auto r = testutil::cmd("((x>0?);x:=x-1 + (x<1000?);x:=x+1)*");
    EvalContext ctx(dom);
    Value got = sem_eval(*r, testutil::lit("{0,999}", *dom), ctx).first;
    CHECK(ctx.exactness == Exactness::Exact);

    auto oracle = reach({0, 999},
                        {[](int64_t x) -> std::optional<int64_t> {
                             if (x > 0) return x - 1;
                             return std::nullopt;
                         },
                         [](int64_t x) -> std::optional<int64_t> {
                             if (x < 1000) return x + 1;
                             return std::nullopt;
                         }},
                        -2, 1002);
    CHECK(dom->lattice.eq(got, states_of(oracle)));
    CHECK(oracle.count(0) == 1);
    CHECK(oracle.count(2) == 1);
    CHECK(oracle.count(1000) == 1);
}

TEST_CASE("product abstraction pairs the meet with the interval hull of the parts") {
    auto gi = make_gi("interval-over-powerset(x:-2..1002)");
    HyperSet h;
    auto set_of = [](std::initializer_list<int64_t> xs) {
        StateSet s;
        for (int64_t x : xs) s.states.push_back({x});
        return Value{normalize(std::move(s))};
    };
    h.members.push_back(set_of({1, 500, 999}));
    h.members.push_back(set_of({1, 2, 495, 999}));
    h.members.push_back(set_of({1, 100, 999}));
    Value got = abstract_product(*gi, h);
    CHECK(got.pair_c() == set_of({1, 999}));
    CHECK(got.pair_a() == Value{Interval::make(Bound::of(1), Bound::of(999))});
}

TEST_CASE("pointwise abstraction is complete for the hyperset sum") {
    auto gi = make_gi("interval-over-powerset(x:-8..8)");
    auto hyper = make_domain("hyper(collecting(x:-8..8))");
    auto pw = make_domain("pointwise(interval-over-powerset(x:-8..8))");
    std::mt19937_64 rng(606);
    for (int i = 0; i < 120; ++i) {
        Value h1 = hyper->lattice.sample(rng);
        Value h2 = hyper->lattice.sample(rng);
        Value lhs = Value{abstract_pointwise(*gi, hyper->monoid.oplus_pair(h1, h2).hyper())};
        Value rhs = pw->monoid.oplus_pair(Value{abstract_pointwise(*gi, h1.hyper())},
                                          Value{abstract_pointwise(*gi, h2.hyper())});
        CHECK(pw->lattice.eq(lhs, rhs));
    }
}

TEST_CASE("product abstraction is complete for the hyperset sum") {
    // Completeness holds for families of nonempty hypersets: the empty
    // hyperset is absorbing for the selection sum but the pair of its
    // abstractions is not, so it is excluded from the sampled law.
    auto gi = make_gi("interval-over-powerset(x:-8..8)");
    auto hyper = make_domain("hyper(collecting(x:-8..8))");
    auto prod = make_domain("product(interval-over-powerset(x:-8..8))");
    std::mt19937_64 rng(707);
    auto sample_nonempty = [&] {
        for (;;) {
            Value h = hyper->lattice.sample(rng);
            if (!h.hyper().members.empty()) return h;
        }
    };
    for (int i = 0; i < 120; ++i) {
        Value h1 = sample_nonempty();
        Value h2 = sample_nonempty();
        Value lhs = abstract_product(*gi, hyper->monoid.oplus_pair(h1, h2).hyper());
        Value rhs = prod->monoid.oplus_pair(abstract_product(*gi, h1.hyper()),
                                            abstract_product(*gi, h2.hyper()));
        CHECK(prod->lattice.eq(lhs, rhs));
    }
}

TEST_CASE("galois insertions satisfy insertion and adjunction on samples") {
    for (const char* spec : {"interval-over-powerset(x:-6..6)", "trivial-top(x:-6..6)"}) {
        auto gi = make_gi(spec);
        std::mt19937_64 rng(808);
        for (int i = 0; i < 60; ++i) {
            Value a = gi->upper.sample(rng);
            CHECK(gi->upper.eq(gi->alpha(gi->gamma(a)), a));
            Value c = gi->lower.sample(rng);
            // alpha(c) <= a  iff  c <= gamma(a)
            CHECK(gi->upper.le(gi->alpha(c), a) == gi->lower.le(c, gi->gamma(a)));
        }
    }
}

TEST_CASE("lifted abstract transfers are the best correct approximation") {
    auto gi = make_gi("interval-over-powerset(x:-6..6)");
    std::vector<ElcAtom> atoms;
    atoms.push_back(ElcAtom::assign("x", AExp{AExp::Kind::AddC, 2}));
    atoms.push_back(ElcAtom::assign("x", AExp{AExp::Kind::Neg, 0}));
    {
        BExp b; b.op = BExp::CmpOp::Ge; b.c = 0;
        atoms.push_back(ElcAtom::filter("x", b));
    }
    std::mt19937_64 rng(111);
    for (int i = 0; i < 40; ++i) {
        Value a = gi->upper.sample(rng);
        for (const auto& e : atoms) {
            Value want = gi->alpha(Value{post_elementary(e, gi->gamma(a).state_set(), gi->space)});
            CHECK(gi->upper.eq(gi->abstract_transfer(e, a), want));
        }
    }
}

TEST_CASE("down-set algebra: normalization, order and down-closure") {
    auto dom = make_domain("downclosed(hyper(interval(irreducible)))");
    Value a = parse_literal("down{[0,0]; [0,2]}", *dom);
    Value b = parse_literal("down{[0,2]}", *dom);
    // [0,0] is below [0,2], so both spell the same down-set.
    CHECK(dom->lattice.eq(a, b));
    Value ray = parse_literal("down{prog(2k+0)}", *dom);
    Value even4 = parse_literal("down{[4,4]}", *dom);
    CHECK(dom->lattice.le(even4, ray));
    Value odd = parse_literal("down{[3,3]}", *dom);
    CHECK_FALSE(dom->lattice.le(odd, ray));
    // down-closure of a hyperset of intervals.
    HyperSet h;
    h.members.push_back(Value{Interval::make(Bound::of(0), Bound::of(2))});
    h.members.push_back(Value{Interval::singleton(1)});
    DownSet d = abstract_down(normalize(std::move(h)));
    CHECK(dom->lattice.eq(Value{d}, b));
}

TEST_CASE("domain spec strings reject garbage") {
    CHECK_THROWS_AS(make_domain("intervals(simple)"), Error);
    CHECK_THROWS_AS(make_domain("collecting()"), Error);
    CHECK_THROWS_AS(make_gi("interval-over-powerset(x:5..1)"), Error);
}
