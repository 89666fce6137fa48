// Copyright 2026 The slumix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "slumix/labelcodec.h"
#include "slumix/metrics.h"
#include "slumix/scheduler.h"
#include "slumix/synthetic.h"
#include "slumix/trainer.h"

namespace slumix {
namespace {

const Corpus& bench_corpus() {
  static const Corpus corpus = [] {
    SyntheticOptions o;
    o.transcripts = 2000;
    return make_synthetic_corpus(o);
  }();
  return corpus;
}

void BM_SpeechBudget(benchmark::State& state) {
  std::size_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(speech_budget(n, 0.05));
    n = n % 60000 + 7;
  }
}
BENCHMARK(BM_SpeechBudget);

void BM_BuildPlan(benchmark::State& state) {
  const TrainingPool pool = training_pool(bench_corpus());
  SchedulerConfig cfg;
  cfg.scheme = state.range(0) ? Scheme::kCurriculum : Scheme::kDirect;
  cfg.p = 0.25;
  cfg.seed = 3;
  for (auto _ : state) {
    MixPlan plan = build_plan(cfg, pool.text_ids,
                              nested_permutation(pool.speech_ids, cfg.seed));
    benchmark::DoNotOptimize(plan.budget);
  }
}
BENCHMARK(BM_BuildPlan)->Arg(0)->Arg(1);

void BM_ParseLabel(benchmark::State& state) {
  std::vector<std::string> texts;
  for (const Utterance& u : bench_corpus().records) {
    texts.push_back(serialize_label(u.label));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_label(texts[i++ % texts.size()]));
  }
}
BENCHMARK(BM_ParseLabel);

void BM_SluF1(benchmark::State& state) {
  // Every third prediction drops its last entity and renames the action.
  std::vector<PredictionRecord> records;
  for (const Utterance& u : bench_corpus().records) {
    PredictionRecord r{u.id, u.label, u.label};
    if (records.size() % 3 == 0) {
      r.pred.action += "_x";
      if (!r.pred.entities.empty()) r.pred.entities.pop_back();
    }
    records.push_back(std::move(r));
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(records));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_SluF1);

void BM_Train(benchmark::State& state) {
  const TrainingPool pool = training_pool(bench_corpus());
  SchedulerConfig cfg;
  cfg.scheme = Scheme::kDirect;
  cfg.p = 0.1;
  cfg.seed = 1;
  const MixPlan plan = build_plan(cfg, pool.text_ids,
                                  nested_permutation(pool.speech_ids, 1));
  const TrainRecipe recipe = TrainRecipe::Desk(cfg.scheme);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(plan, bench_corpus(), recipe, {}));
  }
}
BENCHMARK(BM_Train)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace slumix

BENCHMARK_MAIN();
