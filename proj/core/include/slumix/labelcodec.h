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

// Label codec: one-line target strings for SemanticLabel, a tolerant parser
// for model output, and the instruction prompt.
//
// Canonical form (see docs/label_grammar.md for the EBNF):
//
//   scenario: alarm | action: set | entities: [time: seven am; date: today]

#ifndef SLUMIX_LABELCODEC_H_
#define SLUMIX_LABELCODEC_H_

#include <optional>
#include <string>
#include <string_view>

#include "slumix/corpus.h"

namespace slumix {

// Trims and collapses internal whitespace runs to one space.
std::string normalize_text(std::string_view s);
// normalize_text followed by ASCII lowercasing. Used for scenario, action and
// entity type; fillers keep their case.
std::string normalize_key(std::string_view s);

SemanticLabel normalize_label(const SemanticLabel& label);

// Describes why a (normalized) label cannot be serialized, or nullopt if it
// can. Scenario, action and type must be non-empty and free of | ; : [ ];
// fillers must be non-empty and free of | ; [ ].
std::optional<std::string> label_problem(const SemanticLabel& label);

// Normalizes then renders the canonical form. Throws DataError when the
// normalized label still contains a delimiter or an empty field.
std::string serialize_label(const SemanticLabel& label);

// Never throws. Keys are case-insensitive, whitespace is free, text before
// the scenario key and after the entity list is ignored, and "entity" or
// "slots" are accepted for "entities". Returns SemanticLabel::Unparseable()
// when no scenario/action pair can be recovered.
SemanticLabel parse_label(std::string_view text) noexcept;

inline constexpr std::string_view kInputPlaceholder = "{input}";
inline constexpr std::string_view kOutputPlaceholder = "{output}";
// Payload standing in for the audio clip in speech prompts.
inline constexpr std::string_view kSpeechPlaceholder = "<|audio|>";

struct PromptTemplate {
  std::string instruction_text;
  std::string output_contract;

  static PromptTemplate Default();
};

// Throws PreconditionError unless {input} occurs exactly once and the
// rendered instruction names scenario, action and entities once each.
void validate_template(const PromptTemplate& tmpl);

// Same instruction for text and speech inputs; only the payload differs.
std::string build_prompt(const PromptTemplate& tmpl, std::string_view payload);

}  // namespace slumix

#endif  // SLUMIX_LABELCODEC_H_
