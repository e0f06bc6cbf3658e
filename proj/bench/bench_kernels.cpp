// Serial vs OpenMP kernels. Arg is the thread count for the parallel variants.
// Timings are wall-clock; on a single core the parallel variants only show overhead.

#include <benchmark/benchmark.h>

#include <fstream>

#include "rts/batch.hpp"
#include "rts/eval.hpp"
#include "rts/synthetic.hpp"

using namespace rts;

namespace {

const PromptSpec& hsk() {
  static const auto reg = PromptRegistry::builtin();
  return reg.at("hsk1");
}

struct Fixture {
  Dataset ds;
  LexiconResources res;
  FeatureRegistry reg;
  std::shared_ptr<GoldLookup> gold = std::make_shared<GoldLookup>();
  ReferenceLadder ladder;
  std::vector<batch::Target> targets;
  std::vector<std::vector<int>> candidates;

  Fixture() {
    ds = synthetic_dataset(hsk(), 2000, 1);
    const std::filesystem::path cfg = std::filesystem::path(RTS_SOURCE_DIR) / "config" / "resources_zh.json";
    std::ifstream in(cfg);
    res = LexiconResources::load(nlohmann::json::parse(in), cfg.parent_path());
    reg = default_registry(Language::zh, res);
    ladder = simulation_ladder(hsk(), *gold);
    for (const auto& e : ds.essays) {
      gold->add(e.text, e.gold_score);
      targets.push_back({e.id, e.text});
      candidates.push_back(lattice(hsk()));
    }
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_features_serial(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(batch::extract_features_serial(f.ds.essays, Language::zh, f.res, f.reg));
  st.SetItemsProcessed(st.iterations() * f.ds.essays.size());
}

void BM_features_omp(benchmark::State& st) {
  const auto& f = fixture();
  const int jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(batch::extract_features(f.ds.essays, Language::zh, f.res, f.reg, jobs));
  st.SetItemsProcessed(st.iterations() * f.ds.essays.size());
}

void BM_infer_serial(benchmark::State& st) {
  const auto& f = fixture();
  const auto cmp = oracle_comparator(f.gold, {0.2, 3, TieBehavior::coin});
  for (auto _ : st) benchmark::DoNotOptimize(batch::infer_serial(*cmp, f.targets, f.ladder));
  st.SetItemsProcessed(st.iterations() * f.targets.size());
}

void BM_infer_omp(benchmark::State& st) {
  const auto& f = fixture();
  const auto cmp = oracle_comparator(f.gold, {0.2, 3, TieBehavior::coin});
  const int jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(batch::infer(*cmp, f.targets, f.ladder, jobs));
  st.SetItemsProcessed(st.iterations() * f.targets.size());
}

void BM_score_serial(benchmark::State& st) {
  const auto& f = fixture();
  const auto s = oracle_scorer(f.gold, 0.2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(batch::score_serial(*s, f.targets, f.candidates, hsk()));
  st.SetItemsProcessed(st.iterations() * f.targets.size());
}

void BM_score_omp(benchmark::State& st) {
  const auto& f = fixture();
  const auto s = oracle_scorer(f.gold, 0.2, 3);
  const int jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(batch::score(*s, f.targets, f.candidates, hsk(), jobs));
  st.SetItemsProcessed(st.iterations() * f.targets.size());
}

constexpr std::size_t kTrials = 20000;

void BM_simulate_serial(benchmark::State& st) {
  const auto& f = fixture();
  for (auto _ : st) benchmark::DoNotOptimize(batch::simulate_serial(f.ladder, f.gold, {0.2, 3, TieBehavior::coin}, kTrials));
  st.SetItemsProcessed(st.iterations() * kTrials);
}

void BM_simulate_omp(benchmark::State& st) {
  const auto& f = fixture();
  const int jobs = static_cast<int>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(batch::simulate(f.ladder, f.gold, {0.2, 3, TieBehavior::coin}, kTrials, jobs));
  }
  st.SetItemsProcessed(st.iterations() * kTrials);
}

}  // namespace

BENCHMARK(BM_features_serial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_features_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_infer_serial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_infer_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_serial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_score_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_serial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_simulate_omp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
