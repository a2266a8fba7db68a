// Serial reference vs OpenMP kernels.  Each benchmark takes the execution mode as its
// first argument: 0 = serial, 1 = parallel.
#include "qht/multicopy.hpp"
#include "qht/perturbative.hpp"
#include "qht/qubit_lab.hpp"
#include "qht/random.hpp"

#include <benchmark/benchmark.h>

using namespace qht;

namespace {

par::Exec exec_of(const benchmark::State& st) {
  return st.range(0) ? par::Exec::Parallel : par::Exec::Serial;
}

void label_args(benchmark::internal::Benchmark* b) {
  for (int mode : {0, 1})
    for (int n : {12, 16, 20}) b->Args({mode, n});
}

void BM_EvaluateLabels(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  RVec score(2), r(2), s(2);
  score << -0.3, 0.9;
  r << 0.6, 0.4;
  s << 0.8, 0.2;
  for (auto _ : st) {
    auto res = evaluate_labels(score, r, s, n, 0.1 * n, false, exec_of(st));
    benchmark::DoNotOptimize(res.beta);
  }
  st.SetItemsProcessed(st.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_EvaluateLabels)->Apply(label_args)->Unit(benchmark::kMillisecond);

void BM_PerturbativeEnsemble(benchmark::State& st) {
  std::vector<int> dims;
  for (int i = 0; i < st.range(1); ++i) dims.push_back(2 + i % 7);
  for (auto _ : st) {
    auto reps = perturbative_ensemble(dims, 42, false, exec_of(st));
    benchmark::DoNotOptimize(reps.data());
  }
}
BENCHMARK(BM_PerturbativeEnsemble)->Args({0, 500})->Args({1, 500})->Unit(benchmark::kMillisecond);

void BM_GenericOptimalProjector(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  Rng rng(7);
  const auto rho = random_density(2, rng), sigma = random_density(2, rng);
  const auto thr = acceptance_threshold(rho, sigma, n, 0.2, ThresholdMode::Optimal);
  ProjectorOptions opt;
  opt.collective = false;
  opt.exec = exec_of(st);
  for (auto _ : st) {
    auto p = build_optimal_projector(rho, sigma, n, thr, opt);
    benchmark::DoNotOptimize(p.rank);
  }
}
BENCHMARK(BM_GenericOptimalProjector)->Args({0, 8})->Args({1, 8})->Unit(benchmark::kMillisecond);

void BM_Terwilliger(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  const WeightThreshold nstar = [n](int w) { return w / 2 + n / 3; };
  for (auto _ : st) {
    auto x = terwilliger_coefficients(n, nstar, exec_of(st));
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_Terwilliger)->Args({0, 12})->Args({1, 12})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
