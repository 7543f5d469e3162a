#include <benchmark/benchmark.h>

#include <memory>

#include "pgrad/gradient.hpp"
#include "pgrad/lattice.hpp"
#include "pgrad/schreier.hpp"
#include "pgrad/verify.hpp"

using namespace pgrad;

namespace {

PresentationPtr cp(const char* name) {
  return std::make_shared<const Presentation>(corpus_presentation(name));
}

void BM_ToddCoxeterRegular(benchmark::State& state) {
  const char* names[] = {"s3", "q8", "s3xz2"};
  PresentationPtr pres = cp(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(todd_coxeter(pres, {}, 1 << 12).size());
}
BENCHMARK(BM_ToddCoxeterRegular)->Arg(0)->Arg(1)->Arg(2);

void BM_LatticeF2(benchmark::State& state) {
  PresentationPtr f2 = cp("f2");
  LatticeOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    Lattice l = enumerate_lattice(f2, 2, static_cast<int>(state.range(0)), opts);
    benchmark::DoNotOptimize(l.node_count());
  }
}
BENCHMARK(BM_LatticeF2)->Arg(2)->Arg(3)->Arg(4);

void BM_ModPData(benchmark::State& state) {
  PresentationPtr fa2 = cp("fa2");
  Lattice l = enumerate_lattice(fa2, 2, static_cast<int>(state.range(0)));
  const LatticeNode& node = l.levels.back().front();
  for (auto _ : state) {
    SchreierData sd = make_schreier(node.table);
    benchmark::DoNotOptimize(mod_p_data(sd, 2).dim);
  }
}
BENCHMARK(BM_ModPData)->Arg(3)->Arg(5);

void BM_EstimateQuotient(benchmark::State& state) {
  PresentationPtr pres = cp("fa2");
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate(pres, 2, static_cast<int>(state.range(0))).value.num());
}
BENCHMARK(BM_EstimateQuotient)->Arg(2)->Arg(3);

void BM_FiniteRankGradient(benchmark::State& state) {
  PresentationPtr s3xz2 = cp("s3xz2");
  for (auto _ : state) benchmark::DoNotOptimize(finite_rank_gradient(s3xz2).subgroup_count);
}
BENCHMARK(BM_FiniteRankGradient);

}  // namespace

BENCHMARK_MAIN();
