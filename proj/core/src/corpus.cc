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

#include "slumix/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/labelcodec.h"

namespace slumix {

using nlohmann::json;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw PreconditionError(fmt::format("unknown split '{}'", name));
}

std::string_view to_string(Profile profile) {
  switch (profile) {
    case Profile::kSlurp: return "slurp";
    case Profile::kMassive: return "massive";
    case Profile::kCanonical: return "canonical";
  }
  return "canonical";
}

Profile parse_profile(std::string_view name) {
  if (name == "slurp") return Profile::kSlurp;
  if (name == "massive") return Profile::kMassive;
  if (name == "canonical") return Profile::kCanonical;
  throw PreconditionError(fmt::format(
      "unknown profile '{}' (expected slurp, massive or canonical)", name));
}

RecordingMode parse_recording_mode(std::string_view name) {
  if (name == "all") return RecordingMode::kAll;
  if (name == "one") return RecordingMode::kOne;
  throw PreconditionError(
      fmt::format("unknown recording mode '{}' (expected all or one)", name));
}

nlohmann::json label_to_json(const SemanticLabel& label) {
  json entities = json::array();
  for (const Entity& e : label.entities) {
    entities.push_back({{"type", e.etype}, {"filler", e.filler}});
  }
  return {{"scenario", label.scenario},
          {"action", label.action},
          {"entities", std::move(entities)}};
}

SemanticLabel label_from_json(const nlohmann::json& j) {
  SemanticLabel label;
  label.scenario = j.at("scenario").get<std::string>();
  label.action = j.at("action").get<std::string>();
  if (auto it = j.find("entities"); it != j.end() && !it->is_null()) {
    for (const json& e : *it) {
      label.entities.push_back(
          {e.at("type").get<std::string>(), e.at("filler").get<std::string>()});
    }
  }
  return label;
}

nlohmann::json utterance_to_json(const Utterance& u) {
  json j = {{"id", u.id},
            {"lang", u.lang},
            {"split", to_string(u.split)},
            {"text", u.text}};
  if (u.text_id != u.id) j["text_id"] = u.text_id;
  if (u.speech_ref) j["speech_ref"] = *u.speech_ref;
  json label = label_to_json(u.label);
  j["scenario"] = std::move(label["scenario"]);
  j["action"] = std::move(label["action"]);
  j["entities"] = std::move(label["entities"]);
  return j;
}

Utterance utterance_from_json(const nlohmann::json& j) {
  Utterance u;
  u.id = j.at("id").get<std::string>();
  u.text_id = j.value("text_id", u.id);
  u.lang = j.at("lang").get<std::string>();
  u.split = parse_split(j.at("split").get<std::string>());
  u.text = j.at("text").get<std::string>();
  if (auto it = j.find("speech_ref"); it != j.end() && !it->is_null()) {
    std::string ref = it->get<std::string>();
    if (!ref.empty()) u.speech_ref = std::move(ref);
  }
  u.label = label_from_json(j);
  return u;
}

namespace {

std::string id_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw DataError("id must be a string or an integer");
}

// Parses inline annotations of the form "wake me [time : seven am]".
std::vector<Entity> parse_bracket_annotation(std::string_view annot) {
  std::vector<Entity> out;
  std::size_t pos = 0;
  while ((pos = annot.find('[', pos)) != std::string_view::npos) {
    std::size_t close = annot.find(']', pos);
    if (close == std::string_view::npos) {
      throw DataError("unterminated '[' in annotation");
    }
    std::string_view inner = annot.substr(pos + 1, close - pos - 1);
    std::size_t colon = inner.find(':');
    if (colon == std::string_view::npos) {
      throw DataError("annotation span without ':' separator");
    }
    out.push_back({std::string(inner.substr(0, colon)),
                   std::string(inner.substr(colon + 1))});
    pos = close + 1;
  }
  return out;
}

Split massive_split(std::string_view partition) {
  if (partition == "train" || partition == "train_115") return Split::kTrain;
  if (partition == "dev" || partition == "validation") return Split::kDev;
  if (partition == "test") return Split::kTest;
  throw DataError(fmt::format("unknown partition '{}'", partition));
}

std::string action_from_intent(const std::string& scenario,
                               const std::string& intent) {
  if (intent.size() > scenario.size() + 1 &&
      intent.compare(0, scenario.size(), scenario) == 0 &&
      intent[scenario.size()] == '_') {
    return intent.substr(scenario.size() + 1);
  }
  return intent;
}

std::vector<Utterance> from_slurp(const json& j, const LoadOptions& opt) {
  Utterance base;
  base.id = id_string(j.at("slurp_id"));
  base.text_id = base.id;
  base.lang = opt.default_lang;
  base.split = opt.default_split;
  base.text = j.at("sentence").get<std::string>();
  base.label.scenario = j.at("scenario").get<std::string>();
  base.label.action = j.at("action").get<std::string>();
  if (auto it = j.find("sentence_annotation"); it != j.end()) {
    base.label.entities = parse_bracket_annotation(it->get<std::string>());
  } else if (auto ents = j.find("entities"); ents != j.end()) {
    const json& tokens = j.at("tokens");
    for (const json& e : *ents) {
      std::string filler;
      for (const json& idx : e.at("span")) {
        if (!filler.empty()) filler += ' ';
        filler += tokens.at(idx.get<std::size_t>()).at("surface")
                      .get<std::string>();
      }
      base.label.entities.push_back({e.at("type").get<std::string>(), filler});
    }
  }

  std::vector<Utterance> out;
  auto recs = j.find("recordings");
  if (recs == j.end() || recs->empty()) {
    out.push_back(std::move(base));
    return out;
  }
  std::size_t k = 0;
  for (const json& r : *recs) {
    Utterance u = base;
    u.id = fmt::format("{}/{}", base.id, k);
    u.speech_ref = r.at("file").get<std::string>();
    out.push_back(std::move(u));
    ++k;
    if (opt.recordings == RecordingMode::kOne) break;
  }
  return out;
}

Utterance from_massive(const json& j) {
  Utterance u;
  u.id = id_string(j.at("id"));
  u.text_id = u.id;
  u.lang = j.at("locale").get<std::string>();
  u.split = massive_split(j.at("partition").get<std::string>());
  u.text = j.at("utt").get<std::string>();
  u.label.scenario = j.at("scenario").get<std::string>();
  std::string intent = j.contains("intent_str")
                           ? j.at("intent_str").get<std::string>()
                           : j.at("intent").get<std::string>();
  u.label.action = action_from_intent(u.label.scenario, intent);
  if (auto it = j.find("annot_utt"); it != j.end()) {
    u.label.entities = parse_bracket_annotation(it->get<std::string>());
  }
  for (const char* key : {"speech_ref", "path", "audio_path"}) {
    if (auto it = j.find(key); it != j.end() && it->is_string() &&
                               !it->get<std::string>().empty()) {
      u.speech_ref = it->get<std::string>();
      break;
    }
  }
  return u;
}

void check_record(const Utterance& u) {
  if (u.id.empty()) throw DataError("empty id");
  if (normalize_text(u.text).empty()) throw DataError("empty text");
  if (u.lang.empty()) throw DataError("empty language code");
  if (auto problem = label_problem(u.label)) throw DataError(*problem);
}

}  // namespace

Corpus read_corpus(std::istream& in, Profile profile,
                   const LoadOptions& options) {
  Corpus corpus;
  corpus.name = options.name;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  bool any_line = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (normalize_text(line).empty()) continue;
    any_line = true;
    std::vector<Utterance> produced;
    try {
      json j = json::parse(line);
      switch (profile) {
        case Profile::kCanonical:
          produced.push_back(utterance_from_json(j));
          break;
        case Profile::kSlurp:
          produced = from_slurp(j, options);
          break;
        case Profile::kMassive:
          produced.push_back(from_massive(j));
          break;
      }
      for (Utterance& u : produced) {
        u.label = normalize_label(u.label);
        check_record(u);
      }
    } catch (const json::exception& e) {
      throw DataError(fmt::format("line {}: malformed record: {}", lineno,
                                  e.what()));
    } catch (const Error& e) {
      throw DataError(fmt::format("line {}: malformed record: {}", lineno,
                                  e.what()));
    }
    for (Utterance& u : produced) {
      if (!seen.insert(u.id).second) {
        throw DataError(
            fmt::format("line {}: duplicate id '{}'", lineno, u.id));
      }
      if (corpus.lang.empty()) {
        corpus.lang = u.lang;
      } else if (corpus.lang != u.lang && corpus.lang != kMultilingual) {
        corpus.lang = std::string(kMultilingual);
      }
      corpus.records.push_back(std::move(u));
    }
  }
  if (!any_line) throw DataError("empty corpus file");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, Profile profile,
                   const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  LoadOptions opt = options;
  if (opt.name.empty()) opt.name = path.stem().string();
  return read_corpus(in, profile, opt);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Utterance& u : corpus.records) {
    out << utterance_to_json(u).dump() << '\n';
  }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  write_corpus(corpus, out);
  if (!out) throw DataError(fmt::format("write failed for '{}'", path.string()));
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string_view> ids;
  for (const Utterance& u : corpus.records) {
    try {
      check_record(u);
    } catch (const DataError& e) {
      throw DataError(fmt::format("record '{}': {}", u.id, e.what()));
    }
    if (!ids.insert(u.id).second) {
      throw DataError(fmt::format("duplicate id '{}'", u.id));
    }
    if (corpus.lang != kMultilingual && u.lang != corpus.lang) {
      throw DataError(fmt::format("record '{}' has language '{}' in a '{}' corpus",
                                  u.id, u.lang, corpus.lang));
    }
  }
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  std::array<std::set<std::string_view>, 3> texts;
  for (const Utterance& u : corpus.records) {
    auto s = static_cast<std::size_t>(u.split);
    texts[s].insert(u.text_id);
    if (u.has_speech()) ++stats.splits[s].speech;
  }
  for (std::size_t s = 0; s < 3; ++s) stats.splits[s].text = texts[s].size();
  stats.records = corpus.records.size();
  return stats;
}

Corpus filter_split(const Corpus& corpus, Split split) {
  Corpus out;
  out.name = corpus.name;
  out.lang = corpus.lang;
  for (const Utterance& u : corpus.records) {
    if (u.split == split) out.records.push_back(u);
  }
  return out;
}

}  // namespace slumix
