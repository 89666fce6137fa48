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

// Experiment grids: monolingual and cross-lingual training sets, the
// plan -> train -> predict -> evaluate pipeline per cell, resumable result
// directories, and seed-level aggregation.
//
// Results layout:
//
//   <out>/runs/<cell_id>/plan.json      mix plan
//   <out>/runs/<cell_id>/model.json     reference learner state
//   <out>/runs/<cell_id>/preds.jsonl    predictions (one file per target in
//   <out>/runs/<cell_id>/report.json    cross-lingual runs: preds.<t>.jsonl,
//                                       report.<t>.json)
//   <out>/runs/<cell_id>/cell.json      written last; marks the cell complete
//   <out>/aggregate.csv, <out>/report.md, <out>/report.csv

#ifndef SLUMIX_EXPERIMENT_H_
#define SLUMIX_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "slumix/corpus.h"
#include "slumix/scheduler.h"
#include "slumix/stats.h"
#include "slumix/trainer.h"

namespace slumix {

enum class CrossLingualMode {
  kZeroShot,
  kT,
  kTS,
  kTM,
  kTSM,
  kNoSourceT,
  kNoSourceTS,
  kNoSourceTM,
  kNoSourceTSM,
};

std::string_view to_string(CrossLingualMode mode);
CrossLingualMode parse_crosslingual_mode(std::string_view name);

struct CrossLingualCorpus {
  Corpus corpus;  // train split only, tagged kMultilingual
  // Target speech pairs that every speech-bearing plan must include.
  std::vector<std::string> pinned_speech_ids;
  // Source-language speech ids (the pool the speech level applies to).
  std::vector<std::string> source_speech_ids;
};

// Builds the training corpus for one cross-lingual mode. Record ids are
// prefixed with "<lang>:" (and "<lang>:m:" for text-only target corpora) so
// languages cannot collide. Few-shot subsets are the first `fewshot_pairs`
// transcripts of nested_permutation(target train ids,
// derive_seed(seed, "fewshot:<lang>")). Throws DataError when the mode needs
// data that is absent or languages repeat.
CrossLingualCorpus make_crosslingual_corpus(
    const Corpus& source, std::span<const Corpus> targets,
    std::span<const Corpus> massive_text, CrossLingualMode mode,
    std::size_t fewshot_pairs, std::uint64_t seed);

struct CorpusSpec {
  std::filesystem::path path;
  Profile profile = Profile::kCanonical;
  LoadOptions options;
};

struct CrossLingualSpec {
  std::string source;                        // corpus name
  std::vector<std::string> targets;          // corpus names
  std::map<std::string, std::string> massive;  // target name -> corpus name
  CrossLingualMode mode = CrossLingualMode::kZeroShot;
  std::size_t fewshot_pairs = 115;
  std::uint64_t fewshot_seed = 0;
};

struct ExperimentManifest {
  std::map<std::string, CorpusSpec> corpora;
  std::vector<Scheme> schemes;
  std::vector<double> speech_levels;
  std::vector<std::uint64_t> seeds;
  int epochs = 3;
  // Phase-2 settings apply to curriculum cells only.
  TrainRecipe recipe = TrainRecipe::Desk(Scheme::kCurriculum);
  SpeechSimConfig sim;
  InputMode eval_input = InputMode::kSpeech;
  std::optional<CrossLingualSpec> crosslingual;
  std::size_t workers = 1;
};

// Default speech levels: 0, 2%, 5%, 10%, 25%, 50% and 100%.
const std::vector<double>& default_speech_levels();

// Relative corpus paths resolve against `base_dir`. Throws DataError.
ExperimentManifest manifest_from_json(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir);
nlohmann::json manifest_to_json(const ExperimentManifest& m);
ExperimentManifest read_experiment_manifest(const std::filesystem::path& path);

// FNV-1a over the canonical JSON dump of the manifest.
std::uint64_t manifest_hash(const ExperimentManifest& m);

// The recipe a cell of `scheme` trains with.
TrainRecipe recipe_for(const ExperimentManifest& m, Scheme scheme);

struct CellSpec {
  std::string corpus;  // corpus name, or "xl" for the cross-lingual set
  Scheme scheme = Scheme::kTextOnly;
  double level = 0.0;
  std::uint64_t seed = 0;
};

std::vector<CellSpec> grid_cells(const ExperimentManifest& m);
std::string cell_id(const ExperimentManifest& m, const CellSpec& cell);

struct GridSummary {
  std::size_t total = 0;
  std::size_t ran = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // "<cell_id>: <message>"
};

// Receives one structured event per cell ({"event": "cell_done", ...}).
using GridLogger = std::function<void(const nlohmann::json& event)>;

// Runs every missing cell (in parallel up to m.workers), then aggregates
// into aggregate.csv and report.{md,csv}. A failing cell is recorded and the
// grid continues.
GridSummary run_grid(const ExperimentManifest& m,
                     const std::filesystem::path& out_dir,
                     const GridLogger& log = {});

// Reads all completed cells under <out>/runs and aggregates them over seeds.
std::vector<AggregateRow> aggregate_runs(const std::filesystem::path& out_dir);

}  // namespace slumix

#endif  // SLUMIX_EXPERIMENT_H_
