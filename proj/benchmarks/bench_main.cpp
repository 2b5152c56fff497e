#include <benchmark/benchmark.h>

#include "miclust/info_measures.hpp"
#include "miclust/solvers.hpp"
#include "miclust/stochastic.hpp"
#include "miclust/verification.hpp"

using namespace miclust;

namespace {

void BM_MutualInformation(benchmark::State& state) {
  const auto p = random_joint(state.range(0), state.range(0), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mutual_information(p).value());
  }
}
BENCHMARK(BM_MutualInformation)->Arg(8)->Arg(32)->Arg(128);

void BM_Decompose(benchmark::State& state) {
  const auto w = random_stochastic(state.range(0), 5, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(w).parts().size());
  }
}
BENCHMARK(BM_Decompose)->Arg(8)->Arg(32)->Arg(128);

void BM_PairwiseHard(benchmark::State& state) {
  const auto p = random_joint(state.range(0), state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_pairwise_hard(p, 2).objective.value());
  }
}
BENCHMARK(BM_PairwiseHard)->Arg(6)->Arg(8)->Arg(10);

void BM_CoclusterHard(benchmark::State& state) {
  const auto p = random_joint(state.range(0), state.range(0), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cocluster_hard(p, 2, 2).objective.value());
  }
}
BENCHMARK(BM_CoclusterHard)->Arg(4)->Arg(6);

void BM_SweepExample3(benchmark::State& state) {
  const auto p = example3_joint();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_pairwise(p, 2, 0.025).best_value.value());
  }
}
BENCHMARK(BM_SweepExample3);

void BM_SoftAscentPairwise(benchmark::State& state) {
  const auto p = random_joint(state.range(0), state.range(0), 5);
  const ProblemSpec spec(ProblemKind::kPairwise, p, 2);
  SoftAscentOptions opts;
  opts.restarts = 1;
  for (auto _ : state) {
    opts.seed += 1;
    benchmark::DoNotOptimize(solve_soft_ascent(spec, opts).objective.value());
  }
}
BENCHMARK(BM_SoftAscentPairwise)->Arg(6)->Arg(12);

void BM_IbIterate(benchmark::State& state) {
  const auto p = random_joint(state.range(0), state.range(0), 6);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ib_iterate(p, 5.0, 3, ++seed).objective.value());
  }
}
BENCHMARK(BM_IbIterate)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
