#include <benchmark/benchmark.h>

#include <thread>

#include "mfgprep/bounded_queue.hpp"
#include "mfgprep/mpmc_queue.hpp"

namespace {

using namespace mfgprep;

void BM_MpmcPushPop(benchmark::State& state) {
  MpmcQueue<std::size_t> q(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    q.try_push(i++);
    benchmark::DoNotOptimize(q.try_pop());
  }
}
BENCHMARK(BM_MpmcPushPop);

void BM_MpmcContendedDrain(benchmark::State& state) {
  const auto threads = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t kItems = 1 << 16;
  for (auto _ : state) {
    state.PauseTiming();
    MpmcQueue<std::size_t> q(kItems);
    for (std::size_t i = 0; i < kItems; ++i) q.try_push(i);
    state.ResumeTiming();
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&q] {
        while (auto v = q.try_pop()) benchmark::DoNotOptimize(*v);
      });
    }
    for (auto& t : pool) t.join();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kItems));
}
BENCHMARK(BM_MpmcContendedDrain)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_BoundedHandoff(benchmark::State& state) {
  constexpr int kItems = 10'000;
  for (auto _ : state) {
    BoundedQueue<int> q(static_cast<std::size_t>(state.range(0)));
    std::thread producer([&q] {
      for (int i = 0; i < kItems; ++i) q.push(i);
      q.close();
    });
    while (auto v = q.pop()) benchmark::DoNotOptimize(*v);
    producer.join();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kItems));
}
BENCHMARK(BM_BoundedHandoff)->Arg(1)->Arg(8)->Arg(64)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
