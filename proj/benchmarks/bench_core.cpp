#include <benchmark/benchmark.h>

#include "baerlab/baer.hpp"
#include "baerlab/echelon.hpp"
#include "baerlab/magnus.hpp"
#include "baerlab/word.hpp"

using namespace baerlab;

namespace {

const std::vector<std::string> kGens{"x", "y"};

void BM_MagnusMultiply(benchmark::State& state) {
  int bound = static_cast<int>(state.range(0));
  auto ctx = NilContext::get(2, bound);
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  NilElement a = embed(commutator(x, y) * x.pow(3), ctx, kGens);
  NilElement b = embed(y.pow(-2) * commutator(y, x), ctx, kGens);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MagnusMultiply)->Arg(5)->Arg(6)->Arg(7)->Arg(8);

void BM_Embed(benchmark::State& state) {
  int bound = static_cast<int>(state.range(0));
  auto ctx = NilContext::get(2, bound);
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  Word w = commutator({y, x, x, commutator(y, x)});
  for (auto _ : state) benchmark::DoNotOptimize(embed(w, ctx, kGens));
}
BENCHMARK(BM_Embed)->Arg(5)->Arg(6)->Arg(7);

void BM_NormalClosure(benchmark::State& state) {
  int bound = static_cast<int>(state.range(0));
  Presentation p = s3_presentation();
  for (auto _ : state)
    benchmark::DoNotOptimize(EchelonSubgroup::normal_closure(p, bound));
}
BENCHMARK(BM_NormalClosure)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_BaerInvariantKlein(benchmark::State& state) {
  int c = static_cast<int>(state.range(0));
  Presentation p = abelian_presentation({2, 2});
  for (auto _ : state)
    benchmark::DoNotOptimize(baer_invariant(p, c, c + 2, 1));
}
BENCHMARK(BM_BaerInvariantKlein)->Arg(1)->Arg(2)->Arg(3)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
