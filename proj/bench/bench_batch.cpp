// Serial reference vs OpenMP batch evaluation of the train query suite.

#include "tazone/batch.hpp"
#include "tazone/parser.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace {

using namespace tazone;

const Network& train() {
  static const Network net = [] {
    std::ifstream f(TAZONE_DATA_DIR "/train.ta");
    std::ostringstream os;
    os << f.rdbuf();
    auto r = parse_spec(os.str());
    if (!r) throw std::runtime_error("cannot load train.ta");
    return *r;
  }();
  return net;
}

const std::vector<Job>& jobs() {
  static const std::vector<Job> all = [] {
    std::vector<Job> out;
    for (const auto& q : product_suite(train()))
      for (const auto& o : configuration_matrix()) out.push_back({q, o});
    return out;
  }();
  return all;
}

void BM_BatchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(train(), jobs()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs().size()));
}

void BM_BatchParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(train(), jobs()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs().size()));
}

BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
