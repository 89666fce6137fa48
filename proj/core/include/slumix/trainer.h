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

// Desk-scale reference learner that executes a MixPlan end to end, the
// simulated speech channel it trains on, and manifests that hand the same
// plan to an external LALM trainer.

#ifndef SLUMIX_TRAINER_H_
#define SLUMIX_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "slumix/corpus.h"
#include "slumix/scheduler.h"

namespace slumix {

// ---------------------------------------------------------------------------
// Simulated speech.

struct SpeechSimConfig {
  double substitution_rate = 0.25;
  double deletion_rate = 0.05;
  std::uint64_t seed = 0;
};

void validate_sim(const SpeechSimConfig& cfg);

// Whitespace tokenization; no case folding.
std::vector<std::string> tokenize(std::string_view text);

// Per source token: the emitted token, or nullopt when deleted.
std::vector<std::optional<std::string>> simulate_speech_aligned(
    std::string_view text, const SpeechSimConfig& cfg);

// Seeded per-token deletion and substitution over whitespace tokens. A
// substituted word becomes one of two fixed "acoustic confusions" of itself,
// so repeated exposure to speech lets a learner pick the confusions up.
std::vector<std::string> simulate_speech(std::string_view text,
                                         const SpeechSimConfig& cfg);

// The i-th (0 or 1) confusion of a token. Deterministic.
std::string confusion_variant(std::string_view token, unsigned k);

// Simulator config for one recording: the seed is mixed with the speech
// reference so each recording has a fixed corruption.
SpeechSimConfig recording_sim(const SpeechSimConfig& base,
                              std::string_view speech_ref);

// ---------------------------------------------------------------------------
// Recipes and learning-rate schedule.

struct LrPhase {
  int phase = 1;
  double peak_lr = 0.0;
  double warmup_ratio = 0.0;
  std::vector<int> epochs;  // 1-based epochs covered by the phase
};

struct TrainRecipe {
  std::string schedule_kind = "cosine";
  double peak_lr = 5.0e-6;
  double warmup_ratio = 0.04;
  int epochs = 3;
  std::size_t batch_size = 2;
  int grad_accum = 8;
  int beams = 3;
  std::optional<double> phase2_peak_lr;
  std::optional<double> phase2_warmup_ratio;
  // Reference learner only.
  int hash_bits = 18;
  // Manifest-only hints.
  std::string optimizer = "adamw";
  std::string precision = "bfloat16";

  // Settings of the real fine-tuning runs: cosine schedule, 5e-6 peak with
  // 0.04 warmup, and for curriculum a 3e-6 / 0.02 final phase.
  static TrainRecipe Full(Scheme scheme);
  // Same shape scaled for plain SGD on the reference learner.
  static TrainRecipe Desk(Scheme scheme);
};

// Throws PreconditionError for out-of-range values or when the phase-2
// fields are present without curriculum (or missing with it).
void validate_recipe(const TrainRecipe& recipe, Scheme scheme);

// Phases of a recipe under a scheme: one phase over all epochs, or for
// curriculum phase 1 over epochs 1..E-1 and phase 2 over epoch E.
std::vector<LrPhase> lr_phases(const TrainRecipe& recipe, Scheme scheme,
                               int epochs);

// Linear warmup from 0 to the phase peak over ceil(warmup_ratio * total)
// steps, then cosine decay reaching 0 at total_steps. Each phase runs over
// its own step span. Throws PreconditionError when total_steps is 0 or
// step > total_steps.
double lr_at(const TrainRecipe& recipe, std::size_t step,
             std::size_t total_steps, int phase);

nlohmann::json recipe_to_json(const TrainRecipe& recipe);
TrainRecipe recipe_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Reference learner.

struct EpochLog {
  int epoch = 1;
  std::size_t text_items = 0;
  std::size_t speech_items = 0;
  std::size_t batches = 0;
  double mean_loss = 0.0;
  double train_accuracy = 0.0;

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

// (entity type, filler) learned for one surface string.
using LexiconSense = std::pair<std::string, std::string>;

struct ModelState {
  int hash_bits = 18;
  // Intent classes "scenario|action", sorted.
  std::vector<std::string> classes;
  // Hashed feature -> per-class weight.
  std::unordered_map<std::uint32_t, std::vector<double>> intent_weights;
  std::string prior_intent;
  // Lower-cased surface token sequence -> sense -> count.
  std::map<std::string, std::map<LexiconSense, std::size_t>> filler_lexicon;
  std::size_t max_filler_tokens = 0;
  std::vector<EpochLog> train_log;
  bool trained = false;

  friend bool operator==(const ModelState&, const ModelState&) = default;
};

// Runs the plan: every epoch's batches come from epoch_batches seeded with
// derive_seed(plan seed, "batches"); text items use the transcript, speech
// items the simulated recording. Intent is a softmax-linear model over hashed
// unigram and bigram features updated by SGD with lr_at step sizes.
// Throws DataError for ids missing from the corpus and PreconditionError for
// an empty plan.
ModelState train(const MixPlan& plan, const Corpus& corpus,
                 const TrainRecipe& recipe, const SpeechSimConfig& sim);

// Intent: argmax class, ties to the lexicographically smaller name; empty
// input yields the prior intent. Entities: left-to-right longest match
// against the lexicon, non-overlapping. Untrained models return an
// unparseable label.
SemanticLabel predict(const ModelState& model,
                      std::span<const std::string> tokens);

enum class InputMode { kText, kSpeech };

// Model input for an utterance: the transcript tokens, or in speech mode the
// simulated recording (falling back to the transcript when the utterance has
// no speech reference).
std::vector<std::string> model_input(const Utterance& u, InputMode mode,
                                     const SpeechSimConfig& sim);

nlohmann::json model_to_json(const ModelState& model);
ModelState model_from_json(const nlohmann::json& j);
void write_model(const ModelState& model, const std::filesystem::path& path);
ModelState read_model(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Manifests for external trainers (manifest_version 1).

nlohmann::json export_manifest(const MixPlan& plan, const TrainRecipe& recipe,
                               std::string_view corpus_ref);
void write_manifest(const nlohmann::json& manifest,
                    const std::filesystem::path& path);

}  // namespace slumix

#endif  // SLUMIX_TRAINER_H_
