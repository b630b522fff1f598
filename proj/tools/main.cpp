#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "abslog/abslog.hpp"

using nlohmann::json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;
constexpr int kEvalError = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw abslog::ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::set<std::string> domain_vars(const abslog::DomainDescriptor& dom) {
    std::set<std::string> vars;
    if (dom.space)
        for (const auto& v : dom.space->vars) vars.insert(v.name);
    else
        vars.insert("x");
    return vars;
}

struct Options {
    std::string format = "text";
    uint64_t seed = 0x5eed;
    size_t samples = 256;
    size_t star_budget = 4096;
    bool no_widening = false;
};

void emit(const json& j, const Options& opt, const std::string& text) {
    if (opt.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

json report_json(const abslog::CheckReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"path", e.path},
                           {"condition", e.condition},
                           {"ok", e.ok},
                           {"detail", e.detail}});
    json j{{"verdict", rep.accepted ? "Accepted" : "Rejected"}, {"conditions", entries}};
    if (!rep.accepted) {
        j["path"] = rep.reject_path;
        j["condition"] = rep.reject_condition;
    }
    return j;
}

std::string report_text(const abslog::CheckReport& rep) {
    std::ostringstream out;
    out << (rep.accepted ? "ACCEPTED" : "REJECTED");
    if (!rep.accepted)
        out << "  at " << rep.reject_path << "  condition " << rep.reject_condition;
    for (const auto& e : rep.entries) {
        out << "\n  " << (e.ok ? "ok  " : "FAIL") << "  " << e.path << "  " << e.condition;
        if (!e.ok) out << "  (" << e.detail << ")";
    }
    return out.str();
}

json law_json(const abslog::LawReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"law", e.law},
                           {"checked", e.checked},
                           {"failures", e.failures},
                           {"counterexample", e.counterexample}});
    return json{{"subject", rep.subject},
                {"seed", rep.seed},
                {"pass", rep.all_pass()},
                {"laws", entries}};
}

std::string law_text(const abslog::LawReport& rep) {
    std::ostringstream out;
    out << rep.subject << "  (seed " << rep.seed << ")";
    for (const auto& e : rep.entries) {
        out << "\n  " << (e.pass() ? "pass" : "FAIL") << "  " << e.law << "  [" << e.checked
            << " checked]";
        if (!e.pass()) out << "  counterexample: " << e.counterexample;
    }
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Semantics evaluator and derivation checker for regular commands"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opt.seed, "Seed for sampled suites");
    app.add_option("--samples", opt.samples, "Sample count for sampled suites");
    app.add_option("--star-budget", opt.star_budget, "Iteration budget for star evaluation");
    app.add_flag("--no-widening", opt.no_widening, "Disable interval widening fallbacks");

    std::string domain_spec, program_file, program_text, input_lit, pre_lit, post_lit;
    std::string script_file, gi_spec, mode, output_file;

    auto add_program = [&](CLI::App* sub) {
        sub->add_option("--program", program_file, "Program file");
        sub->add_option("--program-text", program_text, "Program given inline");
    };
    auto get_program = [&]() -> std::string {
        if (!program_text.empty()) return program_text;
        if (!program_file.empty()) return read_file(program_file);
        throw CLI::ValidationError("--program or --program-text is required");
    };

    auto* ev = app.add_subcommand("eval", "Evaluate the semantics of a program on an input");
    ev->add_option("--domain", domain_spec, "Domain spec")->required();
    add_program(ev);
    ev->add_option("--input", input_lit, "Input value literal")->required();

    auto* ct = app.add_subcommand("check-triple", "Check validity of {pre} program {post}");
    ct->add_option("--domain", domain_spec, "Domain spec")->required();
    add_program(ct);
    ct->add_option("--pre", pre_lit, "Precondition literal")->required();
    ct->add_option("--post", post_lit, "Postcondition literal")->required();

    auto* cd = app.add_subcommand("check-derivation", "Check a derivation script");
    cd->add_option("file", script_file, "Script file")->required();
    cd->add_option("--mode", mode, "Checking mode")->check(CLI::IsMember({"abstract"}));
    cd->add_option("--gi", gi_spec, "Galois insertion spec for abstract mode");

    auto* pv = app.add_subcommand("prove", "Emit a strongest-post derivation script");
    pv->add_option("--domain", domain_spec, "Domain spec")->required();
    add_program(pv);
    pv->add_option("--pre", pre_lit, "Precondition literal")->required();
    pv->add_option("--output", output_file, "Write the script to a file instead of stdout");

    auto* cb = app.add_subcommand("certify-bca", "Certify a best correct approximation");
    cb->add_option("--gi", gi_spec, "Galois insertion spec")->required();
    add_program(cb);
    cb->add_option("--input", input_lit, "Abstract input literal")->required();

    auto* lw = app.add_subcommand("laws", "Run the sampled law suites for a domain");
    lw->add_option("--domain", domain_spec, "Domain spec");
    lw->add_option("--gi", gi_spec, "Galois insertion spec (adds the insertion suite)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    auto make_ctx = [&](const abslog::DomainPtr& dom) {
        abslog::EvalContext ctx(dom);
        ctx.star_budget = opt.star_budget;
        ctx.widening_enabled = !opt.no_widening;
        return ctx;
    };

    if (ev->parsed()) {
        auto dom = abslog::make_domain(domain_spec);
        auto cmd = abslog::parse_cmd(get_program(), domain_vars(*dom));
        abslog::Value in = abslog::parse_literal(input_lit, *dom);
        auto ctx = make_ctx(dom);
        auto [v, ex] = abslog::sem_eval(*cmd, in, ctx);
        std::string lit = abslog::print_literal(v, *dom);
        std::string flag = ex == abslog::Exactness::Exact ? "exact" : "widened";
        emit(json{{"value", lit}, {"exactness", flag}, {"domain", dom->spec}}, opt,
             lit + " (" + flag + ")");
        return kOk;
    }

    if (ct->parsed()) {
        auto dom = abslog::make_domain(domain_spec);
        std::string prog = get_program();
        auto cmd = abslog::parse_cmd(prog, domain_vars(*dom));
        abslog::Triple t{dom, abslog::parse_literal(pre_lit, *dom), cmd,
                         abslog::parse_literal(post_lit, *dom)};
        auto ctx = make_ctx(dom);
        auto res = abslog::check_validity(t, ctx);
        std::string witness = abslog::print_literal(res.computed, *dom);
        std::string shown = "{" + abslog::print_literal(t.pre, *dom) + "} " +
                            abslog::pretty(*cmd) + " {" + abslog::print_literal(t.post, *dom) +
                            "}";
        switch (res.verdict) {
            case abslog::Verdict::Valid:
                emit(json{{"verdict", "Valid"}, {"computed", witness}}, opt, "VALID  " + shown);
                return kOk;
            case abslog::Verdict::Invalid:
                emit(json{{"verdict", "Invalid"}, {"witness", witness}}, opt,
                     "INVALID  " + shown + "  computed " + witness);
                return kRejected;
            case abslog::Verdict::Inconclusive:
                emit(json{{"verdict", "Inconclusive"}, {"widened", witness}}, opt,
                     "INCONCLUSIVE  " + shown + "  widened " + witness);
                return kInconclusive;
        }
    }

    if (cd->parsed()) {
        abslog::Script sc = abslog::parse_script(read_file(script_file));
        if (mode == "abstract" && !sc.abstract_mode) {
            if (gi_spec.empty())
                throw CLI::ValidationError("--mode abstract needs --gi or a (mode ...) form");
            // Reinterpret the script's payloads in the lifted domain.
            std::string text = read_file(script_file);
            size_t close = text.rfind(')');
            text.insert(close, " (mode abstract " + gi_spec + ")");
            sc = abslog::parse_script(text);
        }
        auto ctx = make_ctx(sc.triple.dom);
        abslog::CheckReport rep = abslog::check_derivation(sc.triple, *sc.proof, ctx);
        emit(report_json(rep), opt, report_text(rep));
        return rep.accepted ? kOk : kRejected;
    }

    if (pv->parsed()) {
        auto dom = abslog::make_domain(domain_spec);
        std::string prog = get_program();
        auto cmd = abslog::parse_cmd(prog, domain_vars(*dom));
        abslog::Value pre = abslog::parse_literal(pre_lit, *dom);
        auto ctx = make_ctx(dom);
        abslog::Value post;
        auto proof = abslog::derive_strongest_post(cmd, pre, ctx, &post);
        abslog::Triple t{dom, pre, cmd, post};
        std::string script = abslog::write_script(t, *proof, prog);
        if (!output_file.empty()) {
            std::ofstream out(output_file);
            out << script;
        } else {
            std::cout << script;
        }
        return kOk;
    }

    if (cb->parsed()) {
        auto gi = abslog::make_gi(gi_spec);
        auto cmd = abslog::parse_cmd(get_program(), {gi->space.vars[0].name});
        abslog::CarrierShape ashape =
            gi->spec.rfind("trivial-top", 0) == 0 ? abslog::CarrierShape::point()
                                                  : abslog::CarrierShape::interval();
        abslog::Value a = abslog::parse_literal(input_lit, ashape, gi->space);
        auto res = abslog::certify_bca(cmd, a, gi, opt.star_budget);
        std::string alit = abslog::print_literal(res.abstract_post, ashape, gi->space);
        json j{{"certified", res.certified},
               {"abstract-post", alit},
               {"report", report_json(res.report)}};
        emit(j, opt,
             res.certified ? "Certified(" + alit + ")"
                           : "NotCertified\n" + report_text(res.report));
        return res.certified ? kOk : kRejected;
    }

    if (lw->parsed()) {
        std::vector<abslog::LawReport> reps;
        if (!domain_spec.empty()) {
            auto dom = abslog::make_domain(domain_spec);
            reps.push_back(abslog::check_lattice_laws(*dom, opt.samples, opt.seed));
            reps.push_back(abslog::check_monoid_laws(*dom, opt.samples, opt.seed));
            reps.push_back(abslog::check_program_laws(dom, opt.samples, opt.seed));
        }
        if (!gi_spec.empty()) {
            auto gi = abslog::make_gi(gi_spec);
            reps.push_back(abslog::check_galois_laws(*gi, opt.samples, opt.seed));
        }
        if (reps.empty()) throw CLI::ValidationError("laws needs --domain and/or --gi");
        bool pass = true;
        json j = json::array();
        std::ostringstream text;
        for (size_t i = 0; i < reps.size(); ++i) {
            pass = pass && reps[i].all_pass();
            j.push_back(law_json(reps[i]));
            if (i) text << "\n";
            text << law_text(reps[i]);
        }
        emit(j, opt, text.str());
        return pass ? kOk : kRejected;
    }

    return kUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const abslog::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const abslog::Error& e) {
        std::cerr << e.what() << "\n";
        return kEvalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEvalError;
    }
}
