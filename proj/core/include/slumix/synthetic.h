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

// Deterministic synthetic SLU corpora for desk-scale experiments.

#ifndef SLUMIX_SYNTHETIC_H_
#define SLUMIX_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "slumix/corpus.h"

namespace slumix {

struct SyntheticOptions {
  std::string name = "synthetic";
  std::string lang = "en";
  std::size_t transcripts = 2000;
  std::uint64_t seed = 1;
  // Fraction of the English vocabulary a pseudo-language keeps verbatim; the
  // remaining words are replaced by language-specific pseudo-words. Ignored
  // for "en".
  double shared_vocab = 1.0;
  double train_fraction = 0.7;
  double dev_fraction = 0.15;
  // Recordings attached to each transcript (0 = text only).
  std::size_t recordings_per_text = 1;
};

// Same options => byte-identical corpus.
Corpus make_synthetic_corpus(const SyntheticOptions& options);

// Word-level pseudo-translation used for non-English synthetic corpora.
std::string pseudo_translate(std::string_view text, std::string_view lang,
                             double shared_vocab);

}  // namespace slumix

#endif  // SLUMIX_SYNTHETIC_H_
