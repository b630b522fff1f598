#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "abslog/abslog.hpp"

using namespace abslog;

namespace {

std::string read_script(const char* name) {
    std::ifstream in(std::string(ABSLOG_SCRIPTS_DIR) + "/" + name);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

RegCmdPtr cmd(const std::string& text) {
    auto r = parse_cmd(text, {"x"});
    assign_ids(*r);
    return r;
}

void bm_eval_collecting_loop(benchmark::State& state) {
    auto dom = make_domain("collecting(x:-2..1002)");
    auto r = cmd("((x>0?);x:=x-1 + (x<1000?);x:=x+1)*");
    Value pre = parse_literal("{0,999}", *dom);
    for (auto _ : state) {
        EvalContext ctx(dom);
        benchmark::DoNotOptimize(sem_eval(*r, pre, ctx));
    }
}
BENCHMARK(bm_eval_collecting_loop);

void bm_eval_interval_star(benchmark::State& state) {
    auto dom = make_domain("interval(irreducible)");
    auto r = cmd("((x=0?);x:=x+2 + (x<>0?);x:=x+1)*");
    Value pre = parse_literal("[0,0]", *dom);
    for (auto _ : state) {
        EvalContext ctx(dom);
        benchmark::DoNotOptimize(sem_eval(*r, pre, ctx));
    }
}
BENCHMARK(bm_eval_interval_star);

void bm_check_script(benchmark::State& state, const char* name) {
    std::string text = read_script(name);
    Script s = parse_script(text);
    for (auto _ : state) {
        EvalContext ctx(s.triple.dom);
        benchmark::DoNotOptimize(check_derivation(s.triple, *s.proof, ctx));
    }
}
BENCHMARK_CAPTURE(bm_check_script, counter_loop, "fig3.appl");
BENCHMARK_CAPTURE(bm_check_script, product_loop, "fig7.appl");

void bm_parse_script(benchmark::State& state) {
    std::string text = read_script("fig3.appl");
    for (auto _ : state) benchmark::DoNotOptimize(parse_script(text));
}
BENCHMARK(bm_parse_script);

void bm_derive_strongest_post(benchmark::State& state) {
    auto dom = make_domain("collecting(x:0..2)");
    std::mt19937_64 rng(1);
    auto r = random_program(rng, {"x"}, 3);
    assign_ids(*r);
    Value pre = dom->lattice.sample(rng);
    for (auto _ : state) {
        EvalContext ctx(dom);
        benchmark::DoNotOptimize(derive_strongest_post(r, pre, ctx));
    }
}
BENCHMARK(bm_derive_strongest_post);

} // namespace

BENCHMARK_MAIN();
