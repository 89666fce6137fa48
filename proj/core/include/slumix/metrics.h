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

// Intent accuracy, micro entity F1 and SLU-F1.
//
// SLU-F1 convention: each utterance contributes a span set made of its
// entities plus two pseudo-spans (scenario:<value>, action:<value>).
// Predicted spans are matched to gold spans of the same type by an optimal
// assignment maximizing total credit, where a pair's credit is the overlap F1
// of the two fillers (over word multisets for Word-F1, over non-blank
// character multisets for Char-F1). Credits are summed as fractional true
// positives and micro-averaged; SLU-F1 = (Word-F1 + Char-F1) / 2.

#ifndef SLUMIX_METRICS_H_
#define SLUMIX_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "slumix/corpus.h"

namespace slumix {

struct PredictionRecord {
  std::string utt_id;
  SemanticLabel gold;
  SemanticLabel pred;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EntityCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct SluF1Detail {
  double word_tp = 0.0;  // summed fractional credit
  double char_tp = 0.0;
  std::size_t gold_spans = 0;
  std::size_t pred_spans = 0;
  Prf word;
  Prf chars;
  double slu_f1 = 0.0;
};

struct MetricReport {
  double intent_accuracy = 0.0;
  double entity_precision = 0.0;
  double entity_recall = 0.0;
  double entity_f1 = 0.0;
  double slu_f1 = 0.0;
  std::size_t n_utts = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double word_tp_frac = 0.0;
  double char_tp_frac = 0.0;
};

// All scoring functions throw PreconditionError("empty record list") on an
// empty input.
double intent_accuracy(std::span<const PredictionRecord> records);
EntityCounts entity_counts(std::span<const PredictionRecord> records);
Prf entity_prf(std::span<const PredictionRecord> records);
SluF1Detail slu_f1_detail(std::span<const PredictionRecord> records);
double slu_f1(std::span<const PredictionRecord> records);
MetricReport evaluate(std::span<const PredictionRecord> records);

// Overlap F1 of two strings over word multisets / non-blank byte multisets.
double word_overlap_f1(std::string_view gold, std::string_view pred);
double char_overlap_f1(std::string_view gold, std::string_view pred);

// P, R and their harmonic mean from fractional counts with the zero
// conventions used throughout: no predictions gives P = 0, and nothing to
// find with nothing predicted gives P = R = F1 = 1.
Prf prf_from_counts(double tp, double n_pred, double n_gold);

namespace detail {
// Maximum total credit of a one-to-one assignment between rows and columns
// of a (possibly rectangular) non-negative credit matrix.
double max_credit_exhaustive(const std::vector<std::vector<double>>& credit);
double max_credit_hungarian(const std::vector<std::vector<double>>& credit);
// Exhaustive up to 5x5, Hungarian beyond.
double max_credit(const std::vector<std::vector<double>>& credit);
}  // namespace detail

nlohmann::json report_to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& j);

// One line of a predictions file: {"utt_id", "gold"?, "pred_raw"}.
struct PredictionLine {
  std::string utt_id;
  std::optional<SemanticLabel> gold;
  std::string pred_raw;
};

std::vector<PredictionLine> read_predictions(std::istream& in);
std::vector<PredictionLine> read_predictions(const std::filesystem::path& path);
void write_predictions(std::span<const PredictionLine> lines, std::ostream& out);

// Parses pred_raw with the label codec and pairs it with the gold label from
// `gold` (or the line's own gold when the corpus lacks the id). Throws
// DataError for unknown ids and duplicate utt_ids.
std::vector<PredictionRecord> join_predictions(
    const Corpus& gold, std::span<const PredictionLine> lines);

}  // namespace slumix

#endif  // SLUMIX_METRICS_H_
