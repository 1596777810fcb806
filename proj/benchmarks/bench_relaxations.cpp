#include <benchmark/benchmark.h>

#include "statelift/problems.hpp"
#include "statelift/relax_chord.hpp"
#include "statelift/relax_push.hpp"
#include "statelift/solve.hpp"
#include "statelift/sparsity.hpp"

using namespace statelift;

static void BM_AssembleChord(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  CompositionChain chain = gen_perturbed_identity_tt(n, 2, 2, 0.1, 0);
  LiftedPOP pop = lift(chain);
  CliqueDecomposition dec = chordal_cliques(build_graph(pop), pop);
  for (auto _ : state) {
    ChordAssembly a = assemble_chord(pop, dec, 3);
    benchmark::DoNotOptimize(a.program.num_vars());
  }
}
BENCHMARK(BM_AssembleChord)->Arg(10)->Arg(50);

static void BM_AssemblePush(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  CompositionChain chain = gen_perturbed_identity_tt(n, 2, 2, 0.1, 0);
  for (auto _ : state) {
    PushAssembly a = assemble_push(chain, 3);
    benchmark::DoNotOptimize(a.program.num_vars());
  }
}
BENCHMARK(BM_AssemblePush)->Arg(10)->Arg(50)->Arg(100);

static void BM_SolvePush(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  CompositionChain chain = gen_perturbed_identity_tt(n, 2, 2, 0.1, 0);
  PushAssembly a = assemble_push(chain, 3);
  for (auto _ : state) {
    SolveResult res = solve(a.program);
    benchmark::DoNotOptimize(res.objective);
  }
}
BENCHMARK(BM_SolvePush)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
