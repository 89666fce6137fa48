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

#include "slumix/synthetic.h"

#include <map>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/labelcodec.h"
#include "slumix/random.h"
#include "slumix/trainer.h"

namespace slumix {
namespace {

struct IntentTemplates {
  std::string_view scenario;
  std::string_view action;
  std::vector<std::string_view> patterns;
};

// Slot placeholders are written {type}.
const std::vector<IntentTemplates>& templates() {
  static const std::vector<IntentTemplates> kTemplates = {
      {"alarm", "set",
       {"wake me up at {time}", "set an alarm for {time} {date}",
        "please set the alarm at {time}", "i need an alarm {date} at {time}",
        "alarm at {time} please"}},
      {"alarm", "query",
       {"what alarms do i have {date}", "show me my alarms",
        "is there an alarm at {time}", "which alarms are set for {date}"}},
      {"alarm", "remove",
       {"cancel the alarm at {time}", "remove my alarm for {date}",
        "delete all my alarms", "turn off the alarm for {time}"}},
      {"weather", "query",
       {"what is the weather in {place_name} {date}", "will it rain {date}",
        "how hot is it in {place_name}", "do i need an umbrella {date}",
        "is it cold in {place_name} {date}"}},
      {"music", "play",
       {"play {song_name} by {artist_name}", "put on some {music_genre}",
        "i want to hear {artist_name}", "play some {music_genre} music",
        "play the song {song_name}"}},
      {"play", "radio",
       {"play {radio_name}", "tune in to {radio_name} radio",
        "put the radio on {radio_name}", "i want to listen to {radio_name}"}},
      {"calendar", "set",
       {"add {event_name} to my calendar {date}",
        "schedule a {event_name} with {person} at {time}",
        "remind me about the {event_name} {date}",
        "put {event_name} in my calendar at {time}"}},
      {"calendar", "query",
       {"what is on my calendar {date}", "when is my {event_name}",
        "do i have any meetings with {person}",
        "what do i have {date} at {time}"}},
      {"iot", "hue_lightoff",
       {"turn off the lights in the {house_place}",
        "switch the {house_place} lights off", "lights off please",
        "turn the {house_place} light off"}},
      {"iot", "hue_lightup",
       {"make the {house_place} brighter",
        "turn the lights up in the {house_place}",
        "increase the brightness in the {house_place}", "brighter please"}},
      {"email", "sendemail",
       {"send an email to {person} about the {event_name}",
        "email {person} saying i am late", "write an email to {person}",
        "send {person} a message about {event_name}"}},
      {"email", "query",
       {"do i have new emails from {person}", "check my inbox",
        "any emails {date}", "did {person} email me {date}"}},
      {"transport", "taxi",
       {"book a taxi to {place_name} at {time}",
        "get me a cab to {place_name}", "i need a taxi {date}",
        "order a taxi for {time}"}},
      {"transport", "query",
       {"when is the next train to {place_name}",
        "train times to {place_name} {date}",
        "how long is the train to {place_name}"}},
      {"datetime", "query",
       {"what time is it in {place_name}", "what is the date {date}",
        "what day is it {date}", "tell me the time in {place_name}"}},
      {"lists", "createoradd",
       {"add {item} to my {list_name} list",
        "put {item} on the {list_name} list", "create a {list_name} list",
        "add {item} please"}},
      {"qa", "factoid",
       {"who is {person}", "how tall is {person}",
        "tell me about {place_name}", "what is the capital of {place_name}"}},
  };
  return kTemplates;
}

const std::map<std::string_view, std::vector<std::string_view>>& slot_values() {
  static const std::map<std::string_view, std::vector<std::string_view>>
      kValues = {
          {"time",
           {"seven am", "six thirty", "noon", "five pm", "eight fifteen",
            "ten o'clock", "midnight", "nine am", "four forty five pm",
            "half past two"}},
          {"date",
           {"tomorrow", "today", "on monday", "this weekend", "next friday",
            "tonight", "on the third", "next week"}},
          {"place_name",
           {"london", "paris", "new york", "york", "tokyo", "san francisco",
            "boston", "berlin", "madrid", "seoul"}},
          {"song_name",
           {"bohemian rhapsody", "yellow submarine", "hey jude", "thriller",
            "imagine", "let it be"}},
          {"artist_name",
           {"queen", "the beatles", "michael jackson", "adele", "taylor swift",
            "david bowie"}},
          {"music_genre", {"jazz", "rock", "classical", "hip hop", "country"}},
          {"radio_name",
           {"bbc one", "radio four", "kiss fm", "jazz fm", "capital radio"}},
          {"event_name",
           {"dentist appointment", "team meeting", "birthday party", "lunch",
            "gym session", "doctor visit"}},
          {"person",
           {"john", "mary", "my mother", "alice", "bob", "the boss",
            "barack obama"}},
          {"house_place",
           {"kitchen", "bedroom", "living room", "bathroom", "office",
            "hallway"}},
          {"item", {"milk", "eggs", "bread", "apples", "coffee", "batteries"}},
          {"list_name", {"shopping", "todo", "grocery", "packing"}},
      };
  return kValues;
}

std::string pseudo_word(std::string_view word, std::string_view lang) {
  static constexpr std::string_view kOnsets = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::uint64_t h = mix64(fnv1a64(word, fnv1a64(lang)));
  const std::size_t syllables = 1 + (word.size() + 1) / 3;
  std::string out;
  for (std::size_t i = 0; i < syllables; ++i) {
    out.push_back(kOnsets[h % kOnsets.size()]);
    h /= kOnsets.size();
    out.push_back(kVowels[h % kVowels.size()]);
    h /= kVowels.size();
    if (h == 0) h = mix64(i + 1);
  }
  return out;
}

}  // namespace

std::string pseudo_translate(std::string_view text, std::string_view lang,
                             double shared_vocab) {
  if (lang == "en") return normalize_text(text);
  std::string out;
  for (const std::string& w : tokenize(text)) {
    const std::uint64_t h = mix64(fnv1a64(w, fnv1a64(lang)) ^ 0x5eedULL);
    const bool keep =
        static_cast<double>(h % 10000) < shared_vocab * 10000.0;
    if (!out.empty()) out.push_back(' ');
    out += keep ? w : pseudo_word(w, lang);
  }
  return out;
}

Corpus make_synthetic_corpus(const SyntheticOptions& opt) {
  if (opt.transcripts == 0) throw PreconditionError("need at least one transcript");
  if (opt.train_fraction < 0.0 || opt.dev_fraction < 0.0 ||
      opt.train_fraction + opt.dev_fraction > 1.0) {
    throw PreconditionError("split fractions must be non-negative and sum to <= 1");
  }
  if (opt.lang.empty()) throw PreconditionError("language code must be non-empty");

  Corpus corpus;
  corpus.name = opt.name;
  corpus.lang = opt.lang;
  Rng rng(derive_seed(opt.seed, "synthetic"));
  const auto& tmpls = templates();
  const auto& values = slot_values();
  const auto n_train = static_cast<std::size_t>(
      static_cast<double>(opt.transcripts) * opt.train_fraction);
  const auto n_dev = static_cast<std::size_t>(
      static_cast<double>(opt.transcripts) * opt.dev_fraction);

  for (std::size_t i = 0; i < opt.transcripts; ++i) {
    const IntentTemplates& intent = tmpls[rng.below(tmpls.size())];
    std::string_view pattern = intent.patterns[rng.below(intent.patterns.size())];

    std::string text;
    std::vector<Entity> entities;
    std::size_t pos = 0;
    while (pos < pattern.size()) {
      std::size_t open = pattern.find('{', pos);
      if (open == std::string_view::npos) {
        text.append(pattern.substr(pos));
        break;
      }
      text.append(pattern.substr(pos, open - pos));
      std::size_t close = pattern.find('}', open);
      std::string_view type = pattern.substr(open + 1, close - open - 1);
      const auto& choices = values.at(type);
      std::string filler = pseudo_translate(
          choices[rng.below(choices.size())], opt.lang, opt.shared_vocab);
      text += filler;
      entities.push_back({std::string(type), std::move(filler)});
      pos = close + 1;
    }

    Utterance base;
    base.lang = opt.lang;
    base.split = i < n_train           ? Split::kTrain
                 : i < n_train + n_dev ? Split::kDev
                                       : Split::kTest;
    base.text = pseudo_translate(text, opt.lang, opt.shared_vocab);
    base.label = normalize_label(
        {std::string(intent.scenario), std::string(intent.action), entities});
    const std::string id = fmt::format("{}-{:05d}", opt.lang, i);

    if (opt.recordings_per_text <= 1) {
      base.id = id;
      base.text_id = id;
      if (opt.recordings_per_text == 1) {
        base.speech_ref = fmt::format("sim://{}/{}", opt.lang, id);
      }
      corpus.records.push_back(std::move(base));
      continue;
    }
    for (std::size_t k = 0; k < opt.recordings_per_text; ++k) {
      Utterance u = base;
      u.id = fmt::format("{}/{}", id, k);
      u.text_id = id;
      u.speech_ref = fmt::format("sim://{}/{}/{}", opt.lang, id, k);
      corpus.records.push_back(std::move(u));
    }
  }
  return corpus;
}

}  // namespace slumix
