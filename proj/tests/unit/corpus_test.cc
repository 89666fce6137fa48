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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "slumix/error.h"

namespace slumix {
namespace {

Corpus read(const std::string& text, Profile profile = Profile::kCanonical,
            LoadOptions opts = {}) {
  std::istringstream in(text);
  return read_corpus(in, profile, opts);
}

const char* kCanonical =
    R"({"id":"a1","lang":"en","split":"train","text":"wake me at seven am","speech_ref":"a1.wav","scenario":"alarm","action":"set","entities":[{"type":"time","filler":"seven am"}]})"
    "\n"
    R"({"id":"a2","lang":"en","split":"test","text":"what is the weather","scenario":" Weather ","action":"QUERY","entities":[]})"
    "\n";

TEST(Corpus, ReadsCanonicalAndNormalizesLabels) {
  Corpus c = read(kCanonical);
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.lang, "en");
  const Utterance& a = c.records[0];
  EXPECT_EQ(a.id, "a1");
  EXPECT_EQ(a.text_id, "a1");
  EXPECT_EQ(a.split, Split::kTrain);
  ASSERT_TRUE(a.speech_ref);
  EXPECT_EQ(*a.speech_ref, "a1.wav");
  ASSERT_EQ(a.label.entities.size(), 1u);
  EXPECT_EQ(a.label.entities[0].etype, "time");
  EXPECT_EQ(a.label.entities[0].filler, "seven am");
  EXPECT_EQ(c.records[1].label.scenario, "weather");
  EXPECT_EQ(c.records[1].label.action, "query");
  EXPECT_FALSE(c.records[1].has_speech());
}

TEST(Corpus, CanonicalRoundTrip) {
  Corpus c = read(kCanonical);
  c.records[1].text_id = "a1";
  std::ostringstream out;
  write_corpus(c, out);
  Corpus again = read(out.str());
  again.name = c.name;
  EXPECT_EQ(again, c);
  EXPECT_EQ(out.str().find("\"text_id\":\"a1\",\"text\""), std::string::npos);
}

TEST(Corpus, ErrorsReportLineNumbers) {
  try {
    read(std::string(kCanonical) + "{not json}\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(Corpus, RejectsDuplicateIds) {
  std::string line =
      R"({"id":"x","lang":"en","split":"train","text":"hi","scenario":"a","action":"b","entities":[]})";
  EXPECT_THROW(read(line + "\n" + line + "\n"), DataError);
}

TEST(Corpus, RejectsEmptyFileAndBlankLinesOnly) {
  EXPECT_THROW(read(""), DataError);
  EXPECT_THROW(read("\n  \n"), DataError);
}

TEST(Corpus, RejectsInvalidLabels) {
  EXPECT_THROW(
      read(R"({"id":"x","lang":"en","split":"train","text":"hi","scenario":"a|b","action":"b","entities":[]})"),
      DataError);
  EXPECT_THROW(
      read(R"({"id":"x","lang":"en","split":"train","text":"   ","scenario":"a","action":"b","entities":[]})"),
      DataError);
  EXPECT_THROW(
      read(R"({"id":"x","lang":"en","split":"nope","text":"hi","scenario":"a","action":"b","entities":[]})"),
      DataError);
}

TEST(Corpus, UnknownProfileIsAPreconditionError) {
  EXPECT_THROW(parse_profile("atis"), PreconditionError);
  EXPECT_EQ(parse_profile("slurp"), Profile::kSlurp);
}

const char* kSlurp =
    R"({"slurp_id": 13, "sentence": "wake me up at eight am", "scenario": "alarm", "action": "set", "sentence_annotation": "wake me up at [time : eight am]", "recordings": [{"file": "a.flac"}, {"file": "b.flac"}]})"
    "\n"
    R"({"slurp_id": 14, "sentence": "olly quiet", "scenario": "audio", "action": "volume_mute", "tokens": [{"surface": "olly"}, {"surface": "quiet"}], "entities": [], "recordings": []})"
    "\n";

TEST(Corpus, SlurpProfileExpandsRecordings) {
  Corpus c = read(kSlurp, Profile::kSlurp);
  ASSERT_EQ(c.records.size(), 3u);
  EXPECT_EQ(c.records[0].id, "13/0");
  EXPECT_EQ(c.records[1].id, "13/1");
  EXPECT_EQ(c.records[0].text_id, "13");
  EXPECT_EQ(*c.records[1].speech_ref, "b.flac");
  EXPECT_EQ(c.records[0].label.entities,
            (std::vector<Entity>{{"time", "eight am"}}));
  EXPECT_EQ(c.records[2].id, "14");
  EXPECT_FALSE(c.records[2].has_speech());

  CorpusStats s = corpus_stats(c);
  EXPECT_EQ(s[Split::kTrain].text, 2u);
  EXPECT_EQ(s[Split::kTrain].speech, 2u);
  EXPECT_EQ(s.records, 3u);
}

TEST(Corpus, SlurpOneRecordingMode) {
  LoadOptions opts;
  opts.recordings = RecordingMode::kOne;
  opts.default_split = Split::kTest;
  Corpus c = read(kSlurp, Profile::kSlurp, opts);
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.records[0].id, "13/0");
  EXPECT_EQ(c.records[0].split, Split::kTest);
}

TEST(Corpus, SlurpTokenEntities) {
  Corpus c = read(
      R"({"slurp_id": 1, "sentence": "play jazz music", "scenario": "play", "action": "music", "tokens": [{"surface": "play"}, {"surface": "jazz"}, {"surface": "music"}], "entities": [{"type": "music_genre", "span": [1]}]})",
      Profile::kSlurp);
  EXPECT_EQ(c.records[0].label.entities,
            (std::vector<Entity>{{"music_genre", "jazz"}}));
}

TEST(Corpus, MassiveProfile) {
  Corpus c = read(
      R"({"id": "1", "locale": "fr-FR", "partition": "train_115", "utt": "réveille-moi à sept heures", "scenario": "alarm", "intent": "alarm_set", "annot_utt": "réveille-moi à [time : sept heures]", "path": "fr/1.wav"})"
      "\n"
      R"({"id": 2, "locale": "fr-FR", "partition": "validation", "utt": "quel temps", "scenario": "weather", "intent_str": "weather_query", "annot_utt": "quel temps"})"
      "\n",
      Profile::kMassive);
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.lang, "fr-FR");
  EXPECT_EQ(c.records[0].split, Split::kTrain);
  EXPECT_EQ(c.records[0].label.action, "set");
  EXPECT_EQ(c.records[0].label.entities,
            (std::vector<Entity>{{"time", "sept heures"}}));
  EXPECT_EQ(*c.records[0].speech_ref, "fr/1.wav");
  EXPECT_EQ(c.records[1].id, "2");
  EXPECT_EQ(c.records[1].split, Split::kDev);
  EXPECT_EQ(c.records[1].label.action, "query");
}

TEST(Corpus, MassiveUnknownPartition) {
  EXPECT_THROW(
      read(R"({"id": "1", "locale": "fr-FR", "partition": "other", "utt": "x", "scenario": "a", "intent": "a_b"})",
           Profile::kMassive),
      DataError);
}

TEST(Corpus, MixedLanguagesBecomeMultilingual) {
  Corpus c = read(
      R"({"id":"a","lang":"en","split":"train","text":"hi","scenario":"a","action":"b","entities":[]})"
      "\n"
      R"({"id":"b","lang":"fr","split":"train","text":"salut","scenario":"a","action":"b","entities":[]})"
      "\n");
  EXPECT_EQ(c.lang, kMultilingual);
  EXPECT_NO_THROW(validate_corpus(c));
  c.lang = "en";
  EXPECT_THROW(validate_corpus(c), DataError);
}

TEST(Corpus, FilterSplit) {
  Corpus c = read(kCanonical);
  Corpus test = filter_split(c, Split::kTest);
  ASSERT_EQ(test.records.size(), 1u);
  EXPECT_EQ(test.records[0].id, "a2");
}

TEST(Corpus, LoadCorpusNamesByStem) {
  auto path = std::filesystem::temp_directory_path() / "slumix_corpus_stem.jsonl";
  {
    std::ofstream out(path);
    out << kCanonical;
  }
  Corpus c = load_corpus(path, Profile::kCanonical, {});
  EXPECT_EQ(c.name, "slumix_corpus_stem");
  std::filesystem::remove(path);
  EXPECT_THROW(load_corpus(path, Profile::kCanonical, {}), DataError);
}

TEST(Corpus, BundledSyntheticCorpusIsValid) {
  Corpus c = load_corpus(std::filesystem::path(SLUMIX_SOURCE_DIR) / "data" /
                             "synthetic_en.jsonl",
                         Profile::kCanonical, {});
  EXPECT_NO_THROW(validate_corpus(c));
  CorpusStats s = corpus_stats(c);
  EXPECT_EQ(s.records, 2000u);
  EXPECT_EQ(s[Split::kTrain].text, 1400u);
  EXPECT_EQ(s[Split::kTest].speech, 300u);
}

}  // namespace
}  // namespace slumix
