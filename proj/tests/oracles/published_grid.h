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

// Published monolingual results: mean and 95% half-width per (corpus, level,
// scheme, metric), with the significance mark as printed. Levels are
// percentages. Transcribed from the source tables; do not edit by hand.

#ifndef SLUMIX_TESTS_ORACLES_PUBLISHED_GRID_H_
#define SLUMIX_TESTS_ORACLES_PUBLISHED_GRID_H_

#include <array>

namespace slumix::oracle {

struct PublishedCell {
  const char* corpus;
  int level_percent;
  const char* scheme;
  const char* metric;
  double mean;
  double half_width;
  bool marked;
};

inline constexpr std::array<PublishedCell, 108> kPublishedGrid = {{
    {"slurp", 2, "direct", "intent_accuracy", 0.8345, 0.0082, false},
    {"slurp", 2, "direct", "entity_f1", 0.6354, 0.0038, false},
    {"slurp", 2, "direct", "slu_f1", 0.7167, 0.0038, false},
    {"italic", 2, "direct", "intent_accuracy", 0.8048, 0.0147, false},
    {"italic", 2, "direct", "entity_f1", 0.5644, 0.0152, false},
    {"italic", 2, "direct", "slu_f1", 0.6773, 0.0098, false},
    {"massive_fr", 2, "direct", "intent_accuracy", 0.8132, 0.0078, false},
    {"massive_fr", 2, "direct", "entity_f1", 0.5349, 0.0113, false},
    {"massive_fr", 2, "direct", "slu_f1", 0.6740, 0.0098, false},
    {"slurp", 2, "curriculum", "intent_accuracy", 0.8574, 0.0033, true},
    {"slurp", 2, "curriculum", "entity_f1", 0.6577, 0.0024, true},
    {"slurp", 2, "curriculum", "slu_f1", 0.7335, 0.0011, true},
    {"italic", 2, "curriculum", "intent_accuracy", 0.8272, 0.0029, true},
    {"italic", 2, "curriculum", "entity_f1", 0.6074, 0.0065, true},
    {"italic", 2, "curriculum", "slu_f1", 0.7088, 0.0044, true},
    {"massive_fr", 2, "curriculum", "intent_accuracy", 0.8287, 0.0077, false},
    {"massive_fr", 2, "curriculum", "entity_f1", 0.5590, 0.0063, true},
    {"massive_fr", 2, "curriculum", "slu_f1", 0.6919, 0.0048, true},
    {"slurp", 5, "direct", "intent_accuracy", 0.8558, 0.0050, false},
    {"slurp", 5, "direct", "entity_f1", 0.6617, 0.0054, false},
    {"slurp", 5, "direct", "slu_f1", 0.7373, 0.0042, false},
    {"italic", 5, "direct", "intent_accuracy", 0.8376, 0.0048, false},
    {"italic", 5, "direct", "entity_f1", 0.6190, 0.0070, false},
    {"italic", 5, "direct", "slu_f1", 0.7165, 0.0037, false},
    {"massive_fr", 5, "direct", "intent_accuracy", 0.8376, 0.0118, false},
    {"massive_fr", 5, "direct", "entity_f1", 0.5677, 0.0053, false},
    {"massive_fr", 5, "direct", "slu_f1", 0.6969, 0.0037, false},
    {"slurp", 5, "curriculum", "intent_accuracy", 0.8642, 0.0016, true},
    {"slurp", 5, "curriculum", "entity_f1", 0.6765, 0.0021, true},
    {"slurp", 5, "curriculum", "slu_f1", 0.7475, 0.0025, true},
    {"italic", 5, "curriculum", "intent_accuracy", 0.8412, 0.0032, false},
    {"italic", 5, "curriculum", "entity_f1", 0.6334, 0.0072, true},
    {"italic", 5, "curriculum", "slu_f1", 0.7271, 0.0041, true},
    {"massive_fr", 5, "curriculum", "intent_accuracy", 0.8423, 0.0023, false},
    {"massive_fr", 5, "curriculum", "entity_f1", 0.5802, 0.0035, true},
    {"massive_fr", 5, "curriculum", "slu_f1", 0.7048, 0.0044, false},
    {"slurp", 10, "direct", "intent_accuracy", 0.8618, 0.0023, false},
    {"slurp", 10, "direct", "entity_f1", 0.6740, 0.0031, false},
    {"slurp", 10, "direct", "slu_f1", 0.7482, 0.0022, false},
    {"italic", 10, "direct", "intent_accuracy", 0.8533, 0.0054, false},
    {"italic", 10, "direct", "entity_f1", 0.6387, 0.0060, false},
    {"italic", 10, "direct", "slu_f1", 0.7320, 0.0034, false},
    {"massive_fr", 10, "direct", "intent_accuracy", 0.8418, 0.0066, false},
    {"massive_fr", 10, "direct", "entity_f1", 0.5805, 0.0102, false},
    {"massive_fr", 10, "direct", "slu_f1", 0.7054, 0.0059, false},
    {"slurp", 10, "curriculum", "intent_accuracy", 0.8678, 0.0037, false},
    {"slurp", 10, "curriculum", "entity_f1", 0.6807, 0.0015, true},
    {"slurp", 10, "curriculum", "slu_f1", 0.7529, 0.0021, true},
    {"italic", 10, "curriculum", "intent_accuracy", 0.8490, 0.0034, false},
    {"italic", 10, "curriculum", "entity_f1", 0.6492, 0.0061, false},
    {"italic", 10, "curriculum", "slu_f1", 0.7406, 0.0022, true},
    {"massive_fr", 10, "curriculum", "intent_accuracy", 0.8493, 0.0017, false},
    {"massive_fr", 10, "curriculum", "entity_f1", 0.5994, 0.0072, true},
    {"massive_fr", 10, "curriculum", "slu_f1", 0.7174, 0.0056, true},
    {"slurp", 25, "direct", "intent_accuracy", 0.8689, 0.0028, false},
    {"slurp", 25, "direct", "entity_f1", 0.6779, 0.0040, false},
    {"slurp", 25, "direct", "slu_f1", 0.7515, 0.0043, false},
    {"italic", 25, "direct", "intent_accuracy", 0.8618, 0.0071, false},
    {"italic", 25, "direct", "entity_f1", 0.6650, 0.0041, false},
    {"italic", 25, "direct", "slu_f1", 0.7518, 0.0021, false},
    {"massive_fr", 25, "direct", "intent_accuracy", 0.8619, 0.0053, false},
    {"massive_fr", 25, "direct", "entity_f1", 0.6150, 0.0065, false},
    {"massive_fr", 25, "direct", "slu_f1", 0.7278, 0.0053, false},
    {"slurp", 25, "curriculum", "intent_accuracy", 0.8743, 0.0026, false},
    {"slurp", 25, "curriculum", "entity_f1", 0.6873, 0.0023, true},
    {"slurp", 25, "curriculum", "slu_f1", 0.7580, 0.0015, true},
    {"italic", 25, "curriculum", "intent_accuracy", 0.8622, 0.0017, false},
    {"italic", 25, "curriculum", "entity_f1", 0.6690, 0.0039, false},
    {"italic", 25, "curriculum", "slu_f1", 0.7529, 0.0040, false},
    {"massive_fr", 25, "curriculum", "intent_accuracy", 0.8634, 0.0024, false},
    {"massive_fr", 25, "curriculum", "entity_f1", 0.6176, 0.0050, false},
    {"massive_fr", 25, "curriculum", "slu_f1", 0.7285, 0.0037, false},
    {"slurp", 50, "direct", "intent_accuracy", 0.8779, 0.0027, false},
    {"slurp", 50, "direct", "entity_f1", 0.6891, 0.0028, false},
    {"slurp", 50, "direct", "slu_f1", 0.7618, 0.0012, false},
    {"italic", 50, "direct", "intent_accuracy", 0.8680, 0.0025, false},
    {"italic", 50, "direct", "entity_f1", 0.6827, 0.0072, false},
    {"italic", 50, "direct", "slu_f1", 0.7597, 0.0042, false},
    {"massive_fr", 50, "direct", "intent_accuracy", 0.8708, 0.0050, false},
    {"massive_fr", 50, "direct", "entity_f1", 0.6271, 0.0051, false},
    {"massive_fr", 50, "direct", "slu_f1", 0.7363, 0.0049, false},
    {"slurp", 50, "curriculum", "intent_accuracy", 0.8771, 0.0033, false},
    {"slurp", 50, "curriculum", "entity_f1", 0.6890, 0.0023, false},
    {"slurp", 50, "curriculum", "slu_f1", 0.7610, 0.0022, false},
    {"italic", 50, "curriculum", "intent_accuracy", 0.8687, 0.0040, false},
    {"italic", 50, "curriculum", "entity_f1", 0.6850, 0.0043, false},
    {"italic", 50, "curriculum", "slu_f1", 0.7616, 0.0033, false},
    {"massive_fr", 50, "curriculum", "intent_accuracy", 0.8682, 0.0034, false},
    {"massive_fr", 50, "curriculum", "entity_f1", 0.6311, 0.0033, false},
    {"massive_fr", 50, "curriculum", "slu_f1", 0.7381, 0.0024, false},
    {"slurp", 100, "direct", "intent_accuracy", 0.8813, 0.0035, false},
    {"slurp", 100, "direct", "entity_f1", 0.6959, 0.0030, false},
    {"slurp", 100, "direct", "slu_f1", 0.7675, 0.0022, false},
    {"italic", 100, "direct", "intent_accuracy", 0.8767, 0.0016, false},
    {"italic", 100, "direct", "entity_f1", 0.7022, 0.0054, false},
    {"italic", 100, "direct", "slu_f1", 0.7737, 0.0063, false},
    {"massive_fr", 100, "direct", "intent_accuracy", 0.8739, 0.0040, false},
    {"massive_fr", 100, "direct", "entity_f1", 0.6445, 0.0031, false},
    {"massive_fr", 100, "direct", "slu_f1", 0.7486, 0.0025, false},
    {"slurp", 100, "curriculum", "intent_accuracy", 0.8810, 0.0043, false},
    {"slurp", 100, "curriculum", "entity_f1", 0.6932, 0.0030, false},
    {"slurp", 100, "curriculum", "slu_f1", 0.7644, 0.0017, false},
    {"italic", 100, "curriculum", "intent_accuracy", 0.8735, 0.0034, false},
    {"italic", 100, "curriculum", "entity_f1", 0.7056, 0.0049, false},
    {"italic", 100, "curriculum", "slu_f1", 0.7766, 0.0032, false},
    {"massive_fr", 100, "curriculum", "intent_accuracy", 0.8718, 0.0036, false},
    {"massive_fr", 100, "curriculum", "entity_f1", 0.6463, 0.0075, false},
    {"massive_fr", 100, "curriculum", "slu_f1", 0.7492, 0.0067, false},
}};

inline constexpr int kPublishedMarks = 21;

// Few-shot SLU-F1 for the German target: text-only source at 0% speech, and
// curriculum at 100% source speech, transcripts-only target data.
inline constexpr double kFewShotDeBase = 0.6145;
inline constexpr double kFewShotDeVariant = 0.6739;

}  // namespace slumix::oracle

#endif  // SLUMIX_TESTS_ORACLES_PUBLISHED_GRID_H_
