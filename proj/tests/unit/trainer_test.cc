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

#include "slumix/trainer.h"

#include <cmath>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "slumix/error.h"
#include "slumix/random.h"
#include "slumix/synthetic.h"

namespace slumix {
namespace {

TEST(Recipe, FullAndDeskDefaults) {
  TrainRecipe p = TrainRecipe::Full(Scheme::kDirect);
  EXPECT_EQ(p.peak_lr, 5e-6);
  EXPECT_EQ(p.warmup_ratio, 0.04);
  EXPECT_EQ(p.epochs, 3);
  EXPECT_EQ(p.batch_size, 2u);
  EXPECT_EQ(p.grad_accum, 8);
  EXPECT_EQ(p.beams, 3);
  EXPECT_FALSE(p.phase2_peak_lr);
  TrainRecipe c = TrainRecipe::Full(Scheme::kCurriculum);
  EXPECT_EQ(*c.phase2_peak_lr, 3e-6);
  EXPECT_EQ(*c.phase2_warmup_ratio, 0.02);
  EXPECT_NO_THROW(validate_recipe(c, Scheme::kCurriculum));
  EXPECT_THROW(validate_recipe(c, Scheme::kDirect), PreconditionError);
  EXPECT_THROW(validate_recipe(p, Scheme::kCurriculum), PreconditionError);
  EXPECT_NO_THROW(validate_recipe(TrainRecipe::Desk(Scheme::kTextOnly),
                                  Scheme::kTextOnly));
}

TEST(Recipe, JsonRoundTrip) {
  TrainRecipe r = TrainRecipe::Desk(Scheme::kCurriculum);
  r.hash_bits = 12;
  TrainRecipe back = recipe_from_json(recipe_to_json(r));
  EXPECT_EQ(recipe_to_json(back), recipe_to_json(r));
  EXPECT_EQ(*back.phase2_peak_lr, 0.3);
}

TEST(LrPhases, CurriculumSplitsTheLastEpoch) {
  TrainRecipe r = TrainRecipe::Full(Scheme::kCurriculum);
  auto phases = lr_phases(r, Scheme::kCurriculum, 3);
  ASSERT_EQ(phases.size(), 2u);
  EXPECT_EQ(phases[0].epochs, (std::vector<int>{1, 2}));
  EXPECT_EQ(phases[0].peak_lr, 5e-6);
  EXPECT_EQ(phases[1].epochs, (std::vector<int>{3}));
  EXPECT_EQ(phases[1].peak_lr, 3e-6);
  EXPECT_EQ(phases[1].warmup_ratio, 0.02);
  auto single = lr_phases(TrainRecipe::Full(Scheme::kDirect), Scheme::kDirect, 3);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].epochs, (std::vector<int>{1, 2, 3}));
}

TEST(LrAt, WarmupThenCosine) {
  TrainRecipe r = TrainRecipe::Full(Scheme::kDirect);
  // 100 steps, 0.04 warmup -> 4 warmup steps.
  EXPECT_DOUBLE_EQ(lr_at(r, 0, 100, 1), 0.0);
  EXPECT_DOUBLE_EQ(lr_at(r, 2, 100, 1), 2.5e-6);
  EXPECT_DOUBLE_EQ(lr_at(r, 4, 100, 1), 5e-6);
  EXPECT_NEAR(lr_at(r, 52, 100, 1), 2.5e-6, 1e-18);
  EXPECT_EQ(lr_at(r, 100, 100, 1), 0.0);
  EXPECT_THROW(lr_at(r, 101, 100, 1), PreconditionError);
  EXPECT_THROW(lr_at(r, 0, 0, 1), PreconditionError);
  EXPECT_THROW(lr_at(r, 0, 10, 2), PreconditionError);
}

TEST(LrAt, WarmupCountRoundsUp) {
  TrainRecipe r = TrainRecipe::Desk(Scheme::kDirect);
  r.warmup_ratio = 0.04;
  // ceil(0.04 * 30) = 2: step 1 is halfway up.
  EXPECT_DOUBLE_EQ(lr_at(r, 1, 30, 1), 0.25);
  EXPECT_DOUBLE_EQ(lr_at(r, 2, 30, 1), 0.5);
  // 0.04 * 25 is exactly 1, not 2.
  EXPECT_DOUBLE_EQ(lr_at(r, 1, 25, 1), 0.5);
}

TEST(LrAt, ScheduleProperties) {
  for (double ratio : {0.0, 0.02, 0.04, 0.1, 0.3, 0.5}) {
    for (std::size_t total : {1u, 2u, 7u, 50u, 333u, 1000u}) {
      TrainRecipe r = TrainRecipe::Desk(Scheme::kDirect);
      r.warmup_ratio = ratio;
      const double peak = r.peak_lr;
      const auto w = static_cast<std::size_t>(
          std::min<double>(total, std::ceil(ratio * total - 1e-9)));
      const std::size_t d = total - w;
      // Largest step: the last warmup increment or the steepest cosine
      // decrement, whichever is bigger.
      double bound = 0.0;
      if (w > 0) bound = std::max(bound, peak / static_cast<double>(w));
      if (d > 0) {
        bound = std::max(bound, peak * std::numbers::pi / (2.0 * static_cast<double>(d)));
      }
      // The simpler peak / min(W, D) bound needs W <= 2D / pi.
      if (w > 0 && d > 0 && static_cast<double>(w) <= 2.0 * d / std::numbers::pi) {
        ASSERT_LE(bound, peak / static_cast<double>(std::min(w, d)) + 1e-15);
      }
      double prev = lr_at(r, 0, total, 1);
      double max_seen = prev;
      for (std::size_t s = 1; s <= total; ++s) {
        const double cur = lr_at(r, s, total, 1);
        ASSERT_GE(cur, 0.0);
        ASSERT_LE(cur, peak + 1e-15);
        if (s <= w) {
          ASSERT_GE(cur + 1e-15, prev) << ratio << " " << total << " " << s;
        } else {
          ASSERT_LE(cur, prev + 1e-15) << ratio << " " << total << " " << s;
        }
        ASSERT_LE(std::abs(cur - prev), bound + 1e-12)
            << ratio << " " << total << " " << s;
        max_seen = std::max(max_seen, cur);
        prev = cur;
      }
      EXPECT_EQ(lr_at(r, total, total, 1), 0.0);
      if (total > 1) {
        EXPECT_DOUBLE_EQ(max_seen, peak);
      }
    }
  }
}

TEST(SpeechSim, GoldenCorruption) {
  SpeechSimConfig cfg;
  cfg.substitution_rate = 0.5;
  cfg.deletion_rate = 0.0;
  cfg.seed = 3;
  EXPECT_EQ(simulate_speech("wake me at seven", cfg),
            (std::vector<std::string>{"wake", "je", "ai", "sevkn"}));
}

TEST(SpeechSim, ZeroRatesAreIdentityAndFullDeletionIsEmpty) {
  SpeechSimConfig clean;
  clean.substitution_rate = 0;
  clean.deletion_rate = 0;
  EXPECT_EQ(simulate_speech("Wake me  at seven", clean), tokenize("Wake me  at seven"));
  SpeechSimConfig gone = clean;
  gone.deletion_rate = 1.0;
  EXPECT_TRUE(simulate_speech("wake me at seven", gone).empty());
  SpeechSimConfig bad = clean;
  bad.substitution_rate = 0.8;
  bad.deletion_rate = 0.3;
  EXPECT_THROW(validate_sim(bad), PreconditionError);
}

TEST(SpeechSim, AlignedMatchesTokensAndRatesAreRoughlyRight) {
  SpeechSimConfig cfg;
  std::string text;
  for (int i = 0; i < 4000; ++i) text += "token" + std::to_string(i % 50) + " ";
  const auto tokens = tokenize(text);
  const auto aligned = simulate_speech_aligned(text, cfg);
  ASSERT_EQ(aligned.size(), tokens.size());
  std::size_t deleted = 0, changed = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!aligned[i]) {
      ++deleted;
    } else if (*aligned[i] != tokens[i]) {
      ++changed;
    }
  }
  EXPECT_NEAR(deleted / 4000.0, 0.05, 0.015);
  EXPECT_NEAR(changed / 4000.0, 0.25, 0.03);
}

TEST(SpeechSim, RecordingsAreIndependentButStable) {
  SpeechSimConfig base;
  const std::string text = "turn off the lights in the kitchen please";
  auto a = simulate_speech(text, recording_sim(base, "a.wav"));
  auto a2 = simulate_speech(text, recording_sim(base, "a.wav"));
  EXPECT_EQ(a, a2);
  int differ = 0;
  for (int i = 0; i < 20; ++i) {
    auto b = simulate_speech(text, recording_sim(base, "b" + std::to_string(i)));
    if (b != a) ++differ;
  }
  EXPECT_GT(differ, 10);
}

TEST(SpeechSim, ConfusionVariants) {
  for (const char* tok : {"seven", "a", "42", "\xc3\xa9t\xc3\xa9"}) {
    for (unsigned k : {0u, 1u}) {
      const std::string v = confusion_variant(tok, k);
      EXPECT_NE(v, tok);
      EXPECT_FALSE(v.empty());
      EXPECT_EQ(v.find(' '), std::string::npos);
      EXPECT_EQ(v, confusion_variant(tok, k));
    }
  }
}

class TrainerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SyntheticOptions o;
    o.transcripts = 600;
    corpus_ = new Corpus(make_synthetic_corpus(o));
  }
  static void TearDownTestSuite() { delete corpus_; }

  MixPlan plan(Scheme s, double p, std::uint64_t seed = 1) const {
    TrainingPool pool = training_pool(*corpus_);
    return build_plan({s, p, 3, seed, 0}, pool.text_ids,
                      nested_permutation(pool.speech_ids, seed));
  }

  static Corpus* corpus_;
};

Corpus* TrainerTest::corpus_ = nullptr;

TEST_F(TrainerTest, LogCountsMatchPlan) {
  for (Scheme s : {Scheme::kTextOnly, Scheme::kDirect, Scheme::kCurriculum}) {
    MixPlan pl = plan(s, 0.25);
    ModelState m = train(pl, *corpus_, TrainRecipe::Desk(s), {});
    PlanTotals t = plan_totals(pl);
    ASSERT_EQ(m.train_log.size(), 3u);
    for (std::size_t e = 0; e < 3; ++e) {
      EXPECT_EQ(m.train_log[e].text_items, t.text_per_epoch[e]);
      EXPECT_EQ(m.train_log[e].speech_items, t.speech_per_epoch[e]);
      EXPECT_EQ(m.train_log[e].batches,
                (t.text_per_epoch[e] + t.speech_per_epoch[e] + 15) / 16);
    }
  }
}

TEST_F(TrainerTest, LearnsTheTrainingSet) {
  MixPlan pl = plan(Scheme::kDirect, 0.5);
  ModelState m = train(pl, *corpus_, TrainRecipe::Desk(Scheme::kDirect), {});
  EXPECT_GT(m.train_log.back().train_accuracy, 0.9);
  EXPECT_LT(m.train_log.back().mean_loss, m.train_log.front().mean_loss);
  std::size_t correct = 0, n = 0;
  for (const Utterance& u : corpus_->records) {
    if (u.split != Split::kTest) continue;
    ++n;
    SemanticLabel pred = predict(m, tokenize(u.text));
    if (pred.scenario == u.label.scenario && pred.action == u.label.action) ++correct;
  }
  EXPECT_GT(static_cast<double>(correct) / n, 0.8);
}

TEST_F(TrainerTest, DeterministicAndSerializable) {
  MixPlan pl = plan(Scheme::kCurriculum, 0.1, 5);
  TrainRecipe r = TrainRecipe::Desk(Scheme::kCurriculum);
  ModelState a = train(pl, *corpus_, r, {});
  ModelState b = train(pl, *corpus_, r, {});
  EXPECT_EQ(model_to_json(a).dump(), model_to_json(b).dump());
  const auto path = std::filesystem::temp_directory_path() / "slumix_model.json";
  write_model(a, path);
  ModelState c = read_model(path);
  std::filesystem::remove(path);
  for (const Utterance& u : corpus_->records) {
    if (u.split != Split::kDev) continue;
    const auto in = model_input(u, InputMode::kSpeech, {});
    ASSERT_EQ(predict(a, in), predict(c, in)) << u.id;
  }
}

TEST_F(TrainerTest, PredictEdgeCases) {
  ModelState untrained;
  EXPECT_TRUE(predict(untrained, tokenize("hello")).unparseable);
  MixPlan pl = plan(Scheme::kTextOnly, 0.0);
  ModelState m = train(pl, *corpus_, TrainRecipe::Desk(Scheme::kTextOnly), {});
  SemanticLabel empty = predict(m, {});
  EXPECT_FALSE(empty.unparseable);
  EXPECT_EQ(empty.scenario + "|" + empty.action, m.prior_intent);
  EXPECT_TRUE(empty.entities.empty());
}

TEST_F(TrainerTest, FillerLexiconFindsKnownSlots) {
  MixPlan pl = plan(Scheme::kTextOnly, 0.0);
  ModelState m = train(pl, *corpus_, TrainRecipe::Desk(Scheme::kTextOnly), {});
  SemanticLabel l = predict(m, tokenize("what is the weather in new york"));
  ASSERT_FALSE(l.entities.empty());
  // Longest match wins over the shorter "york".
  EXPECT_EQ(l.entities.front().filler, "new york");
}

TEST_F(TrainerTest, Errors) {
  MixPlan pl = plan(Scheme::kDirect, 0.1);
  Corpus other = *corpus_;
  other.records.pop_back();
  other.records.erase(other.records.begin());
  EXPECT_THROW(train(pl, other, TrainRecipe::Desk(Scheme::kDirect), {}), DataError);
  MixPlan empty = build_plan({Scheme::kTextOnly, 0, 3, 1, 0}, {}, {});
  EXPECT_THROW(train(empty, *corpus_, TrainRecipe::Desk(Scheme::kTextOnly), {}),
               PreconditionError);
  EXPECT_THROW(train(pl, *corpus_, TrainRecipe::Desk(Scheme::kCurriculum), {}),
               PreconditionError);
}

TEST_F(TrainerTest, ExportManifestFields) {
  MixPlan pl = plan(Scheme::kCurriculum, 0.05);
  nlohmann::json m = export_manifest(pl, TrainRecipe::Full(Scheme::kCurriculum),
                                     "corpus.jsonl");
  EXPECT_EQ(m.at("manifest_version"), 1);
  EXPECT_EQ(m.at("scheme"), "curriculum");
  EXPECT_EQ(m.at("speech_budget"), pl.budget);
  EXPECT_EQ(m.at("per_device_batch_size"), 2);
  EXPECT_EQ(m.at("grad_accum"), 8);
  EXPECT_EQ(m.at("decode").at("beams"), 3);
  ASSERT_EQ(m.at("lr_phases").size(), 2u);
  EXPECT_EQ(m.at("lr_phases")[1].at("peak_lr"), 3e-6);
  EXPECT_EQ(m.at("plan").at("epochs").size(), 3u);
  EXPECT_TRUE(m.at("freeze").empty());
  MixPlan text = plan(Scheme::kTextOnly, 0.0);
  nlohmann::json t = export_manifest(text, TrainRecipe::Full(Scheme::kTextOnly), "c");
  EXPECT_EQ(t.at("freeze"), nlohmann::json({"audio_encoder", "adapter"}));
}

}  // namespace
}  // namespace slumix
