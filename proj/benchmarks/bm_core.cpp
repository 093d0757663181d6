#include <benchmark/benchmark.h>

#include "parlearn/bench.hpp"
#include "parlearn/monolithic.hpp"
#include "parlearn/orchestrator.hpp"
#include "parlearn/rng.hpp"

using namespace parlearn;

namespace {

GeneratedSystem ring_system(int components, SymbolTable& table) {
    BenchSpec spec;
    spec.structure = StructureKind::ring;
    spec.components = components;
    spec.seed = 17;
    return gen_system(spec, table);
}

void bm_projection(benchmark::State& state) {
    SymbolTable table;
    GeneratedSystem system = ring_system(4, table);
    const Alphabet& part = system.true_distribution.parts()[0];
    Rng rng(3);
    Trace trace;
    std::vector<Symbol> symbols = system.true_distribution.global().symbols();
    for (int i = 0; i < 64; ++i) trace.push_back(symbols[rng.below(symbols.size())]);
    for (auto _ : state) benchmark::DoNotOptimize(project(trace, part));
}
BENCHMARK(bm_projection);

void bm_parallel_compose(benchmark::State& state) {
    SymbolTable table;
    GeneratedSystem system = ring_system(static_cast<int>(state.range(0)), table);
    for (auto _ : state) benchmark::DoNotOptimize(parallel_compose(system.components));
}
BENCHMARK(bm_parallel_compose)->Arg(3)->Arg(4)->Arg(5);

void bm_language_equivalent(benchmark::State& state) {
    SymbolTable table;
    GeneratedSystem system = ring_system(4, table);
    Lts sul = parallel_compose(system.components);
    for (auto _ : state) benchmark::DoNotOptimize(language_equivalent(sul, sul));
}
BENCHMARK(bm_language_equivalent);

void bm_find_ced(benchmark::State& state) {
    SymbolTable table;
    GeneratedSystem system = ring_system(4, table);
    Lts sul = parallel_compose(system.components);
    const Alphabet& sigma = system.true_distribution.global();
    Observations obs(sigma);
    Rng rng(23);
    std::vector<Symbol> symbols = sigma.symbols();
    while (obs.size() < 300) {
        Trace t;
        for (int len = static_cast<int>(rng.below(7)); len-- > 0;)
            t.push_back(symbols[rng.below(symbols.size())]);
        if (obs.lookup(t)) continue;
        obs.record(t, sul.accepts(t) ? Verdict::positive : Verdict::negative);
    }
    Distribution singles = Distribution::singletons(sigma);
    for (auto _ : state) benchmark::DoNotOptimize(find_ced(obs, singles));
}
BENCHMARK(bm_find_ced);

void bm_compositional_learn(benchmark::State& state) {
    SymbolTable table;
    GeneratedSystem system = ring_system(3, table);
    Lts sul = parallel_compose(system.components);
    for (auto _ : state) {
        Teacher teacher(sul);
        benchmark::DoNotOptimize(run_learning(teacher, {}));
    }
}
BENCHMARK(bm_compositional_learn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
