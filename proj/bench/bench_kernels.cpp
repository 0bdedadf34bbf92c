#include <benchmark/benchmark.h>

#include <omp.h>

#include "strongmeans/corpus.hpp"
#include "strongmeans/moments.hpp"

namespace {

sm::SpectralFunction spike_spectrum(int J, int d = 1) { return sm::forward(sm::spike(J, d)); }

std::vector<std::vector<double>> flat_weights(std::size_t n) { return {std::vector<double>(n, 1.0 / static_cast<double>(n))}; }

void BM_moments_parallel(benchmark::State& st) {
    const int J = static_cast<int>(st.range(0));
    const auto F = spike_spectrum(J);
    const auto w = flat_weights(std::size_t{1} << (J + sm::kRefine));
    for (auto _ : st) benchmark::DoNotOptimize(sm::partial_sum_moments(F, w, 1L << (J - 1), 2.0));
    st.counters["threads"] = omp_get_max_threads();
}

void BM_moments_serial(benchmark::State& st) {
    const int J = static_cast<int>(st.range(0));
    const auto F = spike_spectrum(J);
    const auto w = flat_weights(std::size_t{1} << (J + sm::kRefine));
    for (auto _ : st) benchmark::DoNotOptimize(sm::serial::partial_sum_moments(F, w, 1L << (J - 1), 2.0));
}

void BM_strong_means_parallel(benchmark::State& st) {
    const int J = static_cast<int>(st.range(0));
    const auto f = sm::spike(J);
    const auto F = sm::forward(f);
    const auto fr = sm::refine_piecewise(f, sm::kRefine).samples;
    const std::vector<long> Ns{32, 1L << (J - 1)};
    for (auto _ : st) benchmark::DoNotOptimize(sm::strong_mean_fields(F, fr, Ns, 2.0));
}

void BM_strong_means_serial(benchmark::State& st) {
    const int J = static_cast<int>(st.range(0));
    const auto f = sm::spike(J);
    const auto F = sm::forward(f);
    const auto fr = sm::refine_piecewise(f, sm::kRefine).samples;
    const std::vector<long> Ns{32, 1L << (J - 1)};
    for (auto _ : st) benchmark::DoNotOptimize(sm::serial::strong_mean_fields(F, fr, Ns, 2.0));
}

void BM_rect_parallel(benchmark::State& st) {
    const int J = static_cast<int>(st.range(0));
    const auto F = spike_spectrum(J, 2);
    const std::size_t M = std::size_t{1} << (J + sm::kRefine);
    const auto w = flat_weights(M * M);
    for (auto _ : st) benchmark::DoNotOptimize(sm::rect_moments(F, w, 1L << (J - 1), 2.0));
}

void BM_rect_serial(benchmark::State& st) {
    const int J = static_cast<int>(st.range(0));
    const auto F = spike_spectrum(J, 2);
    const std::size_t M = std::size_t{1} << (J + sm::kRefine);
    const auto w = flat_weights(M * M);
    for (auto _ : st) benchmark::DoNotOptimize(sm::serial::rect_moments(F, w, 1L << (J - 1), 2.0));
}

}  // namespace

BENCHMARK(BM_moments_parallel)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_moments_serial)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_strong_means_parallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_strong_means_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rect_parallel)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rect_serial)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
