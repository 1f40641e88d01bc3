#include <benchmark/benchmark.h>

#include <vector>

#include "bms/arena.hpp"
#include "bms/hashing.hpp"
#include "bms/oblivious.hpp"
#include "bms/robust.hpp"
#include "bms/sketch_bank.hpp"

namespace {

using namespace bms;

void BM_PolyHashHorner(benchmark::State& state) {
  const auto h = hashing::derive_poly_hash(1, 0);
  std::uint64_t x = 12345, acc = 0;
  for (auto _ : state) {
    acc += h(x++);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_PolyHashHorner);

void BM_PolyHashPowers(benchmark::State& state) {
  std::vector<hashing::PolyHash4> hashes;
  for (int i = 0; i < 1024; ++i) hashes.push_back(hashing::derive_poly_hash(1, i));
  const auto p = hashing::PolyHash4::powers_of(12345);
  std::uint64_t acc = 0;
  for (auto _ : state) {
    for (const auto& h : hashes) acc += h.at(p);
  }
  benchmark::DoNotOptimize(acc);
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_PolyHashPowers);

void BM_SketchUpdate(benchmark::State& state) {
  SketchState s = sketch_init(1.0 / static_cast<double>(state.range(0)), 7);
  Item item = 1;
  for (auto _ : state) {
    s.update(Update{item, +1});
    item = item % 1000 + 1;
  }
  benchmark::DoNotOptimize(s.sum_of_squares());
}
BENCHMARK(BM_SketchUpdate)->Arg(2)->Arg(10);

// Updates to items that are already live: the sparse Gram path.
void BM_BankLiveUpdate(benchmark::State& state) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = copy_seed(3, i);
  SketchBank bank(0.1, seeds);
  for (Item i = 1; i <= 8; ++i) bank.update(Update{i, +1});
  int delta = +1;
  for (auto _ : state) {
    bank.update(Update{1, delta});
    delta = -delta;
    benchmark::DoNotOptimize(bank.median_estimate());
  }
}
BENCHMARK(BM_BankLiveUpdate)->Arg(36)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_BankAdmit(benchmark::State& state) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = copy_seed(3, i);
  SketchBank bank(0.1, seeds);
  Item item = 1;
  for (auto _ : state) {
    bank.update(Update{item, +1});
    state.PauseTiming();
    bank.update(Update{item, -1});
    ++item;
    state.ResumeTiming();
  }
}
BENCHMARK(BM_BankAdmit)->Arg(36)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TrackerStep(benchmark::State& state) {
  Tracker t(1000000, EstimateNet(1e10, 0.5), 2);
  Item item = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.process(Update{item, +1}));
    item = item % 100 + 1;
  }
}
BENCHMARK(BM_TrackerStep);

void BM_FlipNumber(benchmark::State& state) {
  std::vector<double> y(static_cast<std::size_t>(state.range(0)));
  hashing::CounterRng rng(5);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(rng.at(i) % 1000);
  for (auto _ : state) benchmark::DoNotOptimize(flip_number(y, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FlipNumber)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_OneBitGame(benchmark::State& state) {
  GameConfig cfg;
  cfg.m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_game(cfg).summary.flip_number);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OneBitGame)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
