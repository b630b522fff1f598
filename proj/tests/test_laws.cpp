#include "doctest.h"
#include "helpers.hpp"

using namespace abslog;

namespace {

void require_all(const LawReport& rep, size_t min_checked_total = 1) {
    size_t total = 0;
    for (const auto& e : rep.entries) {
        CHECK_MESSAGE(e.pass(), rep.subject, " law '", e.law, "' failed ", e.failures, "/",
                      e.checked, ": ", e.counterexample);
        total += e.checked;
    }
    CHECK(total >= min_checked_total);
}

const char* kDomains[] = {
    "collecting(x:0..2)",
    "incorrectness(x:0..4)",
    "interval(simple)",
    "interval(irreducible)",
    "hyper(collecting(x:0..2))",
    "downclosed(hyper(interval(irreducible)))",
    "pointwise(interval-over-powerset(x:-6..6))",
    "product(interval-over-powerset(x:-6..6))",
};

} // namespace

TEST_CASE("lattice laws hold on every shipped carrier") {
    for (const char* spec : kDomains) {
        auto dom = make_domain(spec);
        require_all(check_lattice_laws(*dom, 80, 0x5eed));
    }
}

TEST_CASE("monoid laws hold on every shipped carrier") {
    for (const char* spec : kDomains) {
        auto dom = make_domain(spec);
        require_all(check_monoid_laws(*dom, 80, 0x5eed));
    }
}

TEST_CASE("galois laws hold for both insertions") {
    for (const char* spec : {"interval-over-powerset(x:-6..6)", "trivial-top(x:-6..6)"}) {
        require_all(check_galois_laws(*make_gi(spec), 80, 0x5eed));
    }
}

TEST_CASE("program identities hold on random programs") {
    for (const char* spec : {"collecting(x:0..2)", "incorrectness(x:0..4)",
                             "interval(irreducible)", "hyper(collecting(x:0..2))"}) {
        auto dom = make_domain(spec);
        require_all(check_program_laws(dom, 60, 0x5eed));
    }
}

TEST_CASE("law reports are deterministic in the seed") {
    auto dom = make_domain("collecting(x:0..2)");
    LawReport a = check_lattice_laws(*dom, 40, 42);
    LawReport b = check_lattice_laws(*dom, 40, 42);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].law == b.entries[i].law);
        CHECK(a.entries[i].checked == b.entries[i].checked);
        CHECK(a.entries[i].failures == b.entries[i].failures);
    }
}

TEST_CASE("the law harness detects a planted violation") {
    // Sanity check that the suites can fail: break idempotence on a copy of
    // a carrier and make sure the monoid suite notices.
    auto dom = make_domain("collecting(x:0..2)");
    DomainDescriptor broken = *dom;
    auto space = *dom->space;
    broken.monoid.oplus_pair = [space](const Value& a, const Value& b) {
        StateSet u = stateset_union(a.state_set(), b.state_set());
        // Spuriously add the least state whenever both arguments are nonempty.
        if (!a.state_set().states.empty() && !b.state_set().states.empty()) {
            StateSet least;
            least.states.push_back({space.vars[0].lo});
            u = stateset_union(u, least);
        }
        return Value{u};
    };
    LawReport rep = check_monoid_laws(broken, 60, 0x5eed);
    CHECK_FALSE(rep.all_pass());
}
