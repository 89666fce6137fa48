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

// Per-epoch text/speech mix plans for the three fine-tuning schemes.
//
// With N speech-label pairs, proportion p and E epochs the speech budget is
// N_p = round_half_up(p * N), and the per-epoch speech allocation a_e is
//
//   text_only:   a_e = 0
//   direct:      a_e = N_p                      for every epoch
//   curriculum:  a_e = 0 for e < E,  a_E = N_p * E
//
// so direct and curriculum see the same total speech exposure. The selected
// pool is always a prefix of one seeded permutation, which nests the pools of
// increasing p.

#ifndef SLUMIX_SCHEDULER_H_
#define SLUMIX_SCHEDULER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "slumix/corpus.h"

namespace slumix {

enum class Scheme { kTextOnly, kDirect, kCurriculum };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

struct SchedulerConfig {
  Scheme scheme = Scheme::kTextOnly;
  double p = 0.0;
  int epochs = 3;
  std::uint64_t seed = 0;
  // Leading entries of the speech ordering that are always selected on top
  // of the p-budget (few-shot target pairs in cross-lingual runs).
  std::size_t pinned = 0;
};

// Throws PreconditionError for p outside [0, 1] or epochs < 1.
void validate_config(const SchedulerConfig& config);

// round_half_up(p * n), clamped to [0, n]. Throws PreconditionError when p is
// outside [0, 1].
std::size_t speech_budget(std::size_t n, double p);

// Seeded permutation of `ids`. Throws DataError on duplicate ids.
std::vector<std::string> nested_permutation(std::span<const std::string> ids,
                                            std::uint64_t seed);

struct EpochPlan {
  int epoch = 1;  // 1-based
  std::vector<std::string> text_item_ids;
  std::vector<std::string> speech_item_ids;

  friend bool operator==(const EpochPlan&, const EpochPlan&) = default;
};

struct MixPlan {
  SchedulerConfig config;
  std::size_t n_speech = 0;  // N, the size of the speech ordering
  std::size_t budget = 0;    // N_p, including pinned items
  std::vector<std::string> permutation;
  std::vector<EpochPlan> epochs;

  friend bool operator==(const MixPlan& a, const MixPlan& b) {
    return a.config.scheme == b.config.scheme && a.config.p == b.config.p &&
           a.config.epochs == b.config.epochs &&
           a.config.seed == b.config.seed &&
           a.config.pinned == b.config.pinned && a.n_speech == b.n_speech &&
           a.budget == b.budget && a.permutation == b.permutation &&
           a.epochs == b.epochs;
  }
};

// Builds the plan. The selected pool is the first `budget` entries of
// `speech_ordering`; direct reshuffles it each epoch, curriculum cycles it E
// times in the last epoch (each cycle reshuffled). Throws PreconditionError
// when the budget exceeds the ordering.
MixPlan build_plan(const SchedulerConfig& config,
                   std::vector<std::string> text_ids,
                   std::vector<std::string> speech_ordering);

enum class Modality { kText, kSpeech };

struct ItemRef {
  Modality modality = Modality::kText;
  std::string id;

  friend bool operator==(const ItemRef&, const ItemRef&) = default;
};

using Batch = std::vector<ItemRef>;

// Jointly shuffles the epoch's text and speech items and chunks them; the
// final short batch is kept.
std::vector<Batch> epoch_batches(const MixPlan& plan, int epoch,
                                 std::size_t batch_size, std::uint64_t seed);

struct PlanTotals {
  std::vector<std::size_t> text_per_epoch;
  std::vector<std::size_t> speech_per_epoch;
  std::size_t text_total = 0;
  std::size_t speech_total = 0;
};

PlanTotals plan_totals(const MixPlan& plan);

// Text and speech items of a training split. Several recordings of one
// transcript contribute one text item (the first record of the group).
struct TrainingPool {
  std::vector<std::string> text_ids;
  std::vector<std::string> speech_ids;
};

TrainingPool training_pool(const Corpus& corpus, Split split = Split::kTrain);

nlohmann::json plan_to_json(const MixPlan& plan);
MixPlan plan_from_json(const nlohmann::json& j);
void write_plan(const MixPlan& plan, const std::filesystem::path& path);
MixPlan read_plan(const std::filesystem::path& path);

}  // namespace slumix

#endif  // SLUMIX_SCHEDULER_H_
