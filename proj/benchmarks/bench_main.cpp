#include <benchmark/benchmark.h>

#include "openchain/bethe.hpp"
#include "openchain/lattice.hpp"
#include "openchain/linalg.hpp"

using namespace openchain;

namespace {

const TriangularBoundary kRight{1.3, 0.4, 0.7};
const TriangularBoundary kLeft{0.8, -0.5, 0.6};

ModelParams chain(int length) {
  std::vector<cx> xi;
  for (int j = 0; j < length; ++j) xi.push_back(0.1 * (j % 3) - 0.1);
  return ModelParams(1.0, xi);
}

void BM_TransferMatrix(benchmark::State& state) {
  const ModelParams p = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transfer_matrix(cx{0.3, 0.2}, p, kRight, kLeft));
}
BENCHMARK(BM_TransferMatrix)->DenseRange(2, 6, 2);

void BM_Eigenvalues(benchmark::State& state) {
  const CMatrix t = transfer_matrix(cx{0.3, 0.2}, chain(static_cast<int>(state.range(0))), kRight, kLeft);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(t));
}
BENCHMARK(BM_Eigenvalues)->DenseRange(2, 6, 2);

void BM_SolveBethe(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams p = chain(3);
  SolverConfig c;
  c.starts = 60;
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_bethe(n, p, SpectralBoundary::from(kRight, kLeft), c));
}
BENCHMARK(BM_SolveBethe)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_BetheVector(benchmark::State& state) {
  const ModelParams p = chain(4);
  const RootSet roots(std::vector<cx>{cx{0.3, 0.4}, cx{-0.7, 0.2}, cx{0.5, -0.6}});
  const BetheState st = make_state(roots, p, SpectralBoundary::from(kRight, kLeft));
  for (auto _ : state) benchmark::DoNotOptimize(build_bethe_vector(st, p, kRight, kLeft));
}
BENCHMARK(BM_BetheVector)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
