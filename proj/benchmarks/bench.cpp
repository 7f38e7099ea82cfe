#include "shiftkit/constructions.hpp"
#include "shiftkit/cover.hpp"
#include "shiftkit/oracles.hpp"
#include "shiftkit/sft.hpp"
#include "shiftkit/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace shiftkit;

namespace {

SftSpec golden_spec() {
    Alphabet a = Alphabet::binary();
    return SftSpec(a, {parse_word(a, "11")});
}

void recode_golden(benchmark::State& state) {
    SftSpec spec = golden_spec();
    int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        VertexShift v = recode(spec, order);
        benchmark::DoNotOptimize(v.states.size());
    }
}
BENCHMARK(recode_golden)->Arg(2)->Arg(6)->Arg(10)->Arg(14);

void perron_golden(benchmark::State& state) {
    VertexShift v = recode(golden_spec(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        PerronData d = perron(v);
        benchmark::DoNotOptimize(d.lambda);
    }
}
BENCHMARK(perron_golden)->Arg(1)->Arg(6)->Arg(12);

void min_periodic_orbits(benchmark::State& state) {
    VertexShift v = recode(golden_spec());
    int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto orbits = enumerate_min_periodic(v, p);
        benchmark::DoNotOptimize(orbits.size());
    }
}
BENCHMARK(min_periodic_orbits)->Arg(8)->Arg(14)->Arg(20);

void sturmian_segment(benchmark::State& state) {
    SturmianParams p = SturmianParams::defaults();
    long long n = state.range(0);
    for (auto _ : state) {
        Word y = sturmian_letters(p, 1, n);
        benchmark::DoNotOptimize(y.size());
    }
}
BENCHMARK(sturmian_segment)->Arg(1000)->Arg(10000)->Arg(100000);

// Forces the word-level route: a thin wrapper hides the defining words.
void forbidden_bfs(benchmark::State& state) {
    SubshiftOracle inner = make_builtin_oracle("golden_mean");
    SubshiftOracle o(inner.alphabet(), inner.horizon(), "wrapped",
                     [inner](const Word& w) { return inner.member(w); });
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ForbiddenSet f = forbidden_up_to(o, n);
        benchmark::DoNotOptimize(f.words().size());
    }
}
BENCHMARK(forbidden_bfs)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
