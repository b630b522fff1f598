#include "doctest.h"
#include "helpers.hpp"

using namespace abslog;

namespace {

const char* kCorpus[] = {
    "fig2.appl", "fig3.appl", "fig5.appl", "fig6.appl", "fig7.appl", "fig8.appl",
    "incompleteness-rec.appl", "il-choice.appl", "il-disjunction.appl", "il-iterate-zero.appl",
};

} // namespace

TEST_CASE("every corpus script parses and its derivation is accepted") {
    for (const char* name : kCorpus) {
        CAPTURE(name);
        Script s = testutil::load_script(name);
        EvalContext ctx(s.triple.dom);
        CheckReport rep = check_derivation(s.triple, *s.proof, ctx);
        CHECK_MESSAGE(rep.accepted, name, " rejected at ", rep.reject_path, " (",
                      rep.reject_condition, "): ");
        // Every recorded side condition must have held.
        for (const auto& e : rep.entries) CHECK_MESSAGE(e.ok, name, " ", e.path, " ", e.condition);
    }
}

TEST_CASE("the down-closed loop proof uses no iteration node") {
    Script s = testutil::load_script("fig6.appl");
    bool has_iter = false;
    std::function<void(const DerivationNode&)> walk = [&](const DerivationNode& n) {
        if (n.rule == DerivationNode::Rule::Iter) has_iter = true;
        for (const auto& c : n.children) walk(*c);
    };
    walk(*s.proof);
    CHECK_FALSE(has_iter);
}

TEST_CASE("scripts written back out reparse to the same triple and proof") {
    for (const char* name : kCorpus) {
        CAPTURE(name);
        Script s = testutil::load_script(name);
        if (s.abstract_mode) continue; // mode header is not reproduced by the writer
        std::string out = write_script(s.triple, *s.proof, s.program_text);
        Script back = parse_script(out);
        const auto& lat = s.triple.dom->lattice;
        CHECK(back.domain_spec == s.domain_spec);
        CHECK(lat.eq(back.triple.pre, s.triple.pre));
        CHECK(lat.eq(back.triple.post, s.triple.post));
        CHECK(pretty(*back.triple.cmd) == pretty(*s.triple.cmd));
        // Same verdict after the round trip.
        EvalContext ctx(back.triple.dom);
        CHECK(check_derivation(back.triple, *back.proof, ctx).accepted);
    }
}

TEST_CASE("generated proofs serialize into checkable scripts") {
    auto dom = make_domain("collecting(x:-2..2)");
    auto r = testutil::cmd("(x>=0?);(x:=x+1 + x:=0)");
    Value pre = testutil::lit("{-1,0,1}", *dom);
    EvalContext ctx(dom);
    Value post;
    DerivationPtr proof = derive_strongest_post(r, pre, ctx, &post);
    std::string text = write_script({dom, pre, r, post}, *proof, pretty(*r));
    Script back = parse_script(text);
    EvalContext cctx(back.triple.dom);
    CHECK(check_derivation(back.triple, *back.proof, cctx).accepted);
    CHECK(back.triple.dom->lattice.eq(back.triple.post, post));
}

TEST_CASE("script parse errors carry positions and malformed payloads are rejected") {
    CHECK_THROWS_AS(parse_script("(triple"), ParseError);
    CHECK_THROWS_AS(parse_script("(triple (domain interval(simple)))"), ParseError);
    CHECK_THROWS_AS(parse_script(
        "(triple (domain interval(simple)) (pre [0,0]) (cmd \"x:=x+1\")"
        " (post [1,1]) (proof (frobnicate)))"), ParseError);
}

TEST_CASE("comments and whitespace are ignored by the reader") {
    std::string text = testutil::read_file(testutil::script_path("fig2.appl"));
    Script with = parse_script("; leading comment\n" + text + "\n; trailing\n");
    EvalContext ctx(with.triple.dom);
    CHECK(check_derivation(with.triple, *with.proof, ctx).accepted);
}
