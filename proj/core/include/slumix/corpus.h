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

// Canonical SLU corpus records and the loaders that produce them.
//
// The canonical on-disk format is JSONL, one utterance per line:
//
//   {"id": "u1", "lang": "en", "split": "train", "text": "wake me at seven",
//    "speech_ref": "audio/u1.flac", "scenario": "alarm", "action": "set",
//    "entities": [{"type": "time", "filler": "seven"}]}
//
// "speech_ref" is optional; a record carrying one counts as a speech-label
// pair. "text_id" is optional and groups several recordings of one
// transcript (SLURP-style); it defaults to "id".

#ifndef SLUMIX_CORPUS_H_
#define SLUMIX_CORPUS_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace slumix {

enum class Split { kTrain = 0, kDev = 1, kTest = 2 };

std::string_view to_string(Split split);
// Throws PreconditionError on anything other than train/dev/test.
Split parse_split(std::string_view name);

struct Entity {
  std::string etype;
  std::string filler;

  friend bool operator==(const Entity&, const Entity&) = default;
  friend auto operator<=>(const Entity&, const Entity&) = default;
};

struct SemanticLabel {
  std::string scenario;
  std::string action;
  std::vector<Entity> entities;
  // Set only on predictions the codec could not parse. Such a label scores
  // as fully wrong.
  bool unparseable = false;

  static SemanticLabel Unparseable() {
    SemanticLabel label;
    label.unparseable = true;
    return label;
  }

  friend bool operator==(const SemanticLabel&, const SemanticLabel&) = default;
};

struct Utterance {
  std::string id;
  std::string text_id;  // equals id unless several recordings share a text
  std::string lang;
  Split split = Split::kTrain;
  std::string text;
  std::optional<std::string> speech_ref;
  SemanticLabel label;

  bool has_speech() const { return speech_ref.has_value(); }

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Language tag used by corpora that deliberately mix languages.
inline constexpr std::string_view kMultilingual = "mul";

struct Corpus {
  std::string name;
  std::string lang;
  std::vector<Utterance> records;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

enum class Profile { kSlurp, kMassive, kCanonical };

std::string_view to_string(Profile profile);
Profile parse_profile(std::string_view name);

// How SLURP-style records with several recordings become utterances.
enum class RecordingMode {
  kAll,  // one utterance per recording, all sharing the transcript's text_id
  kOne,  // only the first recording is attached
};

RecordingMode parse_recording_mode(std::string_view name);

struct LoadOptions {
  // Corpus name; defaults to the file stem.
  std::string name;
  // SLURP files carry neither language nor split.
  std::string default_lang = "en";
  Split default_split = Split::kTrain;
  RecordingMode recordings = RecordingMode::kAll;
};

// Loads and validates a corpus. Throws DataError naming the offending line
// for malformed records, duplicate ids, and empty input.
Corpus load_corpus(const std::filesystem::path& path, Profile profile,
                   const LoadOptions& options = {});
Corpus read_corpus(std::istream& in, Profile profile,
                   const LoadOptions& options);

void write_corpus(const Corpus& corpus, std::ostream& out);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Checks id uniqueness, non-empty text, a shared language (unless the corpus
// is tagged kMultilingual) and label validity. Throws DataError.
void validate_corpus(const Corpus& corpus);

struct SplitCounts {
  std::size_t text = 0;    // distinct transcripts
  std::size_t speech = 0;  // records with a speech reference

  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

struct CorpusStats {
  std::array<SplitCounts, 3> splits{};
  std::size_t records = 0;

  const SplitCounts& operator[](Split s) const {
    return splits[static_cast<std::size_t>(s)];
  }
};

CorpusStats corpus_stats(const Corpus& corpus);

// Records of one split, original order preserved.
Corpus filter_split(const Corpus& corpus, Split split);

// JSON conversions shared by the canonical format and prediction files.
nlohmann::json label_to_json(const SemanticLabel& label);
SemanticLabel label_from_json(const nlohmann::json& j);
nlohmann::json utterance_to_json(const Utterance& u);
Utterance utterance_from_json(const nlohmann::json& j);

}  // namespace slumix

#endif  // SLUMIX_CORPUS_H_
