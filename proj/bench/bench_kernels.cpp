// Serial reference vs OpenMP kernels: Gram assembly and pivoted-Cholesky columns.

#include "cuntzlab/kernels.hpp"
#include "cuntzlab/random.hpp"
#include "cuntzlab/shiftrep.hpp"

#include <benchmark/benchmark.h>

using namespace cuntzlab;

namespace {

template <class F>
MomentFunctional<F> bench_state() {
    Rng rng(99);
    std::vector<std::vector<F>> rep;
    for (int i = 0; i < 3; ++i)
        rep.push_back(random_unit_vector<F>(rng, 2));
    return make_induced_product<F>({random_unit_vector<F>(rng, 2)}, rep);
}

template <class F>
void BM_gram(benchmark::State& state, ExecPolicy policy) {
    const auto w = bench_state<F>();
    const auto words = words_up_to(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(gram_matrix(w, words, policy));
    state.counters["words"] = static_cast<double>(words.size());
}

template <class F>
void BM_tracker(benchmark::State& state, ExecPolicy policy) {
    const auto w = bench_state<F>();
    for (auto _ : state) {
        GramRankTracker<F> t(w, {}, policy);
        for (long L = 0; L <= state.range(0); ++L)
            t.add_next_length();
        benchmark::DoNotOptimize(t.rank());
    }
}

void BM_gram_float(benchmark::State& s, ExecPolicy p) { BM_gram<Float>(s, p); }
void BM_gram_exact(benchmark::State& s, ExecPolicy p) { BM_gram<Exact>(s, p); }
void BM_tracker_float(benchmark::State& s, ExecPolicy p) { BM_tracker<Float>(s, p); }
void BM_tracker_exact(benchmark::State& s, ExecPolicy p) { BM_tracker<Exact>(s, p); }

}  // namespace

BENCHMARK_CAPTURE(BM_gram_float, serial, ExecPolicy::Serial)->DenseRange(5, 7);
BENCHMARK_CAPTURE(BM_gram_float, parallel, ExecPolicy::Parallel)->DenseRange(5, 7);
BENCHMARK_CAPTURE(BM_gram_exact, serial, ExecPolicy::Serial)->DenseRange(4, 5);
BENCHMARK_CAPTURE(BM_gram_exact, parallel, ExecPolicy::Parallel)->DenseRange(4, 5);
BENCHMARK_CAPTURE(BM_tracker_float, serial, ExecPolicy::Serial)->DenseRange(6, 8);
BENCHMARK_CAPTURE(BM_tracker_float, parallel, ExecPolicy::Parallel)->DenseRange(6, 8);
BENCHMARK_CAPTURE(BM_tracker_exact, serial, ExecPolicy::Serial)->DenseRange(5, 6);
BENCHMARK_CAPTURE(BM_tracker_exact, parallel, ExecPolicy::Parallel)->DenseRange(5, 6);

BENCHMARK_MAIN();
