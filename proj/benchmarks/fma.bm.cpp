#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <vector>

#include "fma/index.hpp"
#include "fma/ingest.hpp"
#include "fma/oracle.hpp"
#include "fma/search.hpp"

using namespace fmalign;

namespace {

// One shared mid-size collection (8 strings over a 20 kb reference) so every
// benchmark measures the same workload.
struct Corpus {
  oracle::Instance inst;
  Index idx;
  std::vector<std::string> patterns;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    std::mt19937_64 rng(7);
    oracle::GeneratorConfig cfg;
    cfg.min_ref = cfg.max_ref = 20000;
    cfg.min_m = cfg.max_m = 8;
    Corpus built{oracle::generate_instance(rng, cfg), {}, {}};
    built.idx = build_index(built.inst.strs, built.inst.seg, 32);
    std::uniform_int_distribution<uint32_t> j_d(1, built.inst.strs.m());
    std::uniform_int_distribution<uint32_t> len_d(8, 16);
    for (int k = 0; k < 64; ++k) {
      const std::string& s = built.inst.strs.str(j_d(rng));
      const uint32_t len = len_d(rng);
      std::uniform_int_distribution<size_t> at(1, s.size() - 2 - len);
      built.patterns.push_back(s.substr(at(rng), len));
    }
    return built;
  }();
  return c;
}

}  // namespace

static void BM_Build(benchmark::State& state) {
  const Corpus& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(build_index(c.inst.strs, c.inst.seg, 32));
}
BENCHMARK(BM_Build)->Unit(benchmark::kMillisecond);

static void BM_Count(benchmark::State& state) {
  const Corpus& c = corpus();
  size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(count(c.idx, c.patterns[k++ & 63]));
}
BENCHMARK(BM_Count);

static void BM_Locate(benchmark::State& state) {
  const Corpus& c = corpus();
  size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(locate(c.idx, c.patterns[k++ & 63]));
}
BENCHMARK(BM_Locate);

static void BM_Extract200(benchmark::State& state) {
  const Corpus& c = corpus();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<uint32_t> j_d(1, c.inst.strs.m());
  for (auto _ : state) {
    const uint32_t j = j_d(rng);
    std::uniform_int_distribution<uint32_t> a_d(1, c.inst.strs.len(j) - 200);
    const uint32_t a = a_d(rng);
    benchmark::DoNotOptimize(extract(c.idx, j, a, a + 199));
  }
}
BENCHMARK(BM_Extract200);

static void BM_SaveLoad(benchmark::State& state) {
  const Corpus& c = corpus();
  for (auto _ : state) {
    std::stringstream img;
    save_index(c.idx, img);
    benchmark::DoNotOptimize(load_index(img));
  }
}
BENCHMARK(BM_SaveLoad)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
