#include <benchmark/benchmark.h>

#include "drmsim/harness.hpp"

using namespace drmsim;

namespace {

CMatrix gaussian(Philox4x32& rng, std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (auto& v : m.entries()) v = complex_gaussian(rng, 1.0);
    return m;
}

// Args: K, M
void BM_CddDetect(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const int M = static_cast<int>(state.range(1));
    const auto cs = build_candidate_set(build_permutation_codebook(K), make_psk(M));
    Philox4x32 rng(1, 0);
    const CMatrix Yprev = gaussian(rng, 3, K), Ycurr = gaussian(rng, 3, K);
    for (auto _ : state) benchmark::DoNotOptimize(cdd_detect(Yprev, Ycurr, cs));
    state.counters["candidates"] = static_cast<double>(cs.size());
}
BENCHMARK(BM_CddDetect)->Args({2, 2})->Args({2, 4})->Args({3, 4})->Args({4, 4});

void BM_CddDetectFrobenius(benchmark::State& state) {
    const auto cs = build_candidate_set(build_permutation_codebook(3), make_psk(4));
    Philox4x32 rng(2, 0);
    const CMatrix Yprev = gaussian(rng, 3, 3), Ycurr = gaussian(rng, 3, 3);
    for (auto _ : state) benchmark::DoNotOptimize(cdd_detect_frobenius(Yprev, Ycurr, cs));
}
BENCHMARK(BM_CddDetectFrobenius);

void BM_CoherentDetect(benchmark::State& state) {
    const auto cs = build_candidate_set(build_permutation_codebook(3), make_psk(4));
    Philox4x32 rng(3, 0);
    const CMatrix H = gaussian(rng, 3, 3);
    const CoherentDetector det(H, cs);
    const CMatrix Y = gaussian(rng, 3, 3);
    for (auto _ : state) benchmark::DoNotOptimize(det.detect(Y));
}
BENCHMARK(BM_CoherentDetect);

void BM_RunFrame(benchmark::State& state) {
    SimConfig cfg;
    cfg.scheme = static_cast<Scheme>(state.range(0));
    cfg.K = 2;
    cfg.M = cfg.scheme == Scheme::drm_dstm ? 8 : 2;
    const Link link = build_link(cfg);
    std::uint64_t frame = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_frame(link, frame++, 0.3));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * (cfg.T - 1));
    state.SetLabel(to_string(cfg.scheme));
}
BENCHMARK(BM_RunFrame)->Arg(0)->Arg(1)->Arg(2);

void BM_StepwiseDepletion(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(select_patterns_stepwise_depletion(N, 2, 2));
}
BENCHMARK(BM_StepwiseDepletion)->Arg(4)->Arg(6)->Arg(8);

void BM_Philox(benchmark::State& state) {
    Philox4x32 rng(4, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_Philox);

}  // namespace

BENCHMARK_MAIN();
