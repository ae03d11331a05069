#include <benchmark/benchmark.h>

#include <map>

#include "trajeval/alignment.hpp"
#include "trajeval/association.hpp"
#include "trajeval/metrics.hpp"
#include "trajeval/synthgen.hpp"

namespace {

using namespace trajeval;

struct Fixture {
  Trajectory gt;
  Trajectory est;
  MatchedPairs pairs;
};

const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    Fixture f;
    f.gt = generate({MotionShape::FigureEight, double(n - 1) / 30.0, 30.0, 3.0, 1});
    f.est = degrade(f.gt, DegradationSpec::random_walk_drift(0.005, 0.001, 2));
    f.pairs = associate(f.gt, f.est);
    it = cache.emplace(n, std::move(f)).first;
  }
  return it->second;
}

void BM_Associate(benchmark::State& state) {
  const Fixture& f = fixture(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(associate(f.gt, f.est));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HornAlign(benchmark::State& state) {
  const Fixture& f = fixture(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(horn_align(f.pairs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Ate(benchmark::State& state) {
  const Fixture& f = fixture(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ate(f.pairs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RpeFrames(benchmark::State& state) {
  const Fixture& f = fixture(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rpe(f.pairs, DeltaSpec::frames(1)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RpeAllSampled(benchmark::State& state) {
  const Fixture& f = fixture(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rpe(f.pairs, DeltaSpec::all_sampled(10000, 0)));
  state.SetItemsProcessed(state.iterations() * 10000);
}

void BM_RpeAllDeltas(benchmark::State& state) {
  const Fixture& f = fixture(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rpe_all_deltas(f.pairs, 10000, 0));
  state.SetItemsProcessed(state.iterations() * 10000);
}

}  // namespace

BENCHMARK(BM_Associate)->Arg(300)->Arg(3000)->Arg(30000);
BENCHMARK(BM_HornAlign)->Arg(300)->Arg(3000)->Arg(30000);
BENCHMARK(BM_Ate)->Arg(300)->Arg(3000)->Arg(30000);
BENCHMARK(BM_RpeFrames)->Arg(3000);
BENCHMARK(BM_RpeAllSampled)->Arg(3000);
BENCHMARK(BM_RpeAllDeltas)->Arg(60)->Arg(3000);
BENCHMARK_MAIN();
