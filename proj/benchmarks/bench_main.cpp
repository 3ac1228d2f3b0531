#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "twistdec/classify.hpp"
#include "twistdec/decompose.hpp"
#include "twistdec/dilation.hpp"
#include "twistdec/gallery.hpp"
#include "twistdec/rng.hpp"
#include "twistdec/synth.hpp"
#include "twistdec/wandering.hpp"

using namespace twistdec;

namespace {

Params window(double w) { return {{"window", cplx(w)}}; }

void BM_CanonicalDense(benchmark::State& state) {
  Rng rng(11);
  const synth::ContractionSample x = synth::random_contraction(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical(x.T));
}
BENCHMARK(BM_CanonicalDense)->Arg(4)->Arg(8)->Arg(16);

void BM_CanonicalShiftWindow(benchmark::State& state) {
  const GalleryItem g = gallery("unilateral_shift", window(static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(canonical(g.ops[0]));
}
BENCHMARK(BM_CanonicalShiftWindow)->Arg(16)->Arg(64);

void BM_Wold(benchmark::State& state) {
  Rng rng(12);
  const synth::WoldSample x = synth::shifts_plus_unitary(rng);
  for (auto _ : state) benchmark::DoNotOptimize(wold(x.V));
}
BENCHMARK(BM_Wold);

void BM_HalmosWallen(benchmark::State& state) {
  Rng rng(13);
  const synth::TruncatedSample x = synth::unitary_plus_truncated(rng);
  for (auto _ : state) benchmark::DoNotOptimize(halmos_wallen(x.R));
}
BENCHMARK(BM_HalmosWallen);

void BM_ClassDiagnosis(benchmark::State& state) {
  const GalleryItem g = gallery("bilateral_pair", {{"lambda", cplx(0.25)}, {"window", cplx(80.0)}});
  ClassOptions opt;
  opt.n_max = 20;
  for (auto _ : state) benchmark::DoNotOptimize(class_diagnosis(g.ops[1], opt));
}
BENCHMARK(BM_ClassDiagnosis);

void BM_CanonicalGrid(benchmark::State& state) {
  Rng rng(14);
  const synth::FourBlockSample x = synth::four_block_pair(rng);
  CanonicalGridOptions opt;
  opt.mode = x.mode;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_grid(x.T1, x.T2, x.U, opt));
}
BENCHMARK(BM_CanonicalGrid);

void BM_MinimalDilation(benchmark::State& state) {
  Rng rng(15);
  const synth::ContractionSample x = synth::random_contraction(rng, 4);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_isometric_dilation(x.T, depth));
}
BENCHMARK(BM_MinimalDilation)->Arg(4)->Arg(8);

void BM_WanderingJoin(benchmark::State& state) {
  const GalleryItem g = gallery("hardy_twisted_pair", {{"r", cplx(0.0, 1.0)}, {"window", cplx(24.0)}});
  for (auto _ : state) benchmark::DoNotOptimize(wandering_join(g.ops[0], g.ops[1], *g.twist));
}
BENCHMARK(BM_WanderingJoin);

}  // namespace

BENCHMARK_MAIN();
