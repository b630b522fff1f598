#include "doctest.h"
#include "helpers.hpp"

using namespace abslog;

TEST_CASE("finite family sums fold pairwise") {
    auto dom = make_domain("collecting(x:0..5)");
    const auto& mon = dom->monoid;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 40; ++i) {
        std::vector<Value> xs;
        size_t n = rng() % 4;
        for (size_t k = 0; k < n; ++k) xs.push_back(dom->lattice.sample(rng));
        Value folded = mon.neutral();
        for (const auto& x : xs) folded = mon.oplus_pair(folded, x);
        CHECK(dom->lattice.eq(oplus(FamilySpec::finite(xs), mon), folded));
    }
}

TEST_CASE("constant-infinite family equals the closed-form infinite sum") {
    for (const char* spec : {"collecting(x:0..4)", "incorrectness(x:0..4)", "interval(simple)"}) {
        auto dom = make_domain(spec);
        std::mt19937_64 rng(22);
        for (int i = 0; i < 30; ++i) {
            Value x = dom->lattice.sample(rng);
            CHECK(dom->lattice.eq(oplus(FamilySpec::constant_infinite(x), dom->monoid),
                                  dom->monoid.omega(x)));
        }
    }
}

TEST_CASE("eventually periodic family = prefix plus infinite sums of the period") {
    auto dom = make_domain("incorrectness(x:0..6)");
    const auto& mon = dom->monoid;
    std::mt19937_64 rng(33);
    for (int i = 0; i < 30; ++i) {
        std::vector<Value> prefix, period;
        size_t np = rng() % 3, nq = 1 + rng() % 2;
        for (size_t k = 0; k < np; ++k) prefix.push_back(dom->lattice.sample(rng));
        for (size_t k = 0; k < nq; ++k) period.push_back(dom->lattice.sample(rng));
        Value want = mon.neutral();
        for (const auto& x : prefix) want = mon.oplus_pair(want, x);
        for (const auto& x : period) want = mon.oplus_pair(want, mon.omega(x));
        CHECK(dom->lattice.eq(oplus(FamilySpec::eventually_periodic(prefix, period), mon), want));
    }
}

TEST_CASE("closed-form infinite sum stabilizes against partial sums") {
    // For idempotent sums the partial sums are constant after one step, so
    // omega must coincide with the element itself.
    for (const char* spec : {"collecting(x:0..3)", "incorrectness(x:0..3)",
                             "interval(simple)", "interval(irreducible)"}) {
        auto dom = make_domain(spec);
        std::mt19937_64 rng(44);
        REQUIRE(dom->monoid.idempotent);
        for (int i = 0; i < 30; ++i) {
            Value x = dom->lattice.sample(rng);
            CHECK(dom->lattice.eq(dom->monoid.omega(x), x));
        }
    }
}

TEST_CASE("down-set infinite sum of a step generator yields a progression ray") {
    // The down-closed carrier is the one domain with a genuinely infinitary
    // sum: summing countably many copies of a strictly growing generator
    // closes off into an arithmetic progression.
    auto dom = make_domain("downclosed(hyper(interval(irreducible)))");
    Value two = parse_literal("down{[2,2]}", *dom);
    Value w = dom->monoid.omega(two);
    // omega(down{[2,2]}) must dominate every finite partial sum.
    Value acc = dom->monoid.neutral();
    for (int i = 0; i < 6; ++i) {
        acc = dom->monoid.oplus_pair(acc, two);
        CHECK(dom->lattice.le(acc, w));
    }
    // And it must be a fixed point of adding one more copy.
    CHECK(dom->lattice.eq(dom->monoid.oplus_pair(w, two), w));
}

TEST_CASE("neutral element is the unit on both sides") {
    for (const char* spec : {"collecting(x:0..3)", "incorrectness(x:0..3)",
                             "downclosed(hyper(interval(irreducible)))"}) {
        auto dom = make_domain(spec);
        std::mt19937_64 rng(55);
        for (int i = 0; i < 25; ++i) {
            Value x = dom->lattice.sample(rng);
            CHECK(dom->lattice.eq(dom->monoid.oplus_pair(dom->monoid.neutral(), x), x));
            CHECK(dom->lattice.eq(dom->monoid.oplus_pair(x, dom->monoid.neutral()), x));
        }
    }
}
