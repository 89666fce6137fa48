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

#include "slumix/report.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles/published_grid.h"

namespace slumix {
namespace {

AggregateRow row(std::string corpus, std::string mode, std::string scheme,
                 double level, std::string metric, double mean, double hw,
                 std::size_t n) {
  AggregateRow r;
  r.corpus = std::move(corpus);
  r.mode = std::move(mode);
  r.scheme = std::move(scheme);
  r.speech_level = level;
  r.cell = {std::move(metric), mean, hw, n, n > 1};
  return r;
}

std::vector<AggregateRow> published(std::string_view corpus) {
  std::vector<AggregateRow> rows;
  for (const auto& p : oracle::kPublishedGrid) {
    if (corpus != p.corpus) continue;
    AggregateRow r;
    r.corpus = p.corpus;
    r.scheme = p.scheme;
    r.speech_level = p.level_percent / 100.0;
    r.cell = {p.metric, p.mean, p.half_width, 5, true};
    rows.push_back(r);
  }
  mark_significance(rows);
  sort_rows(rows);
  return rows;
}

std::size_t count(const std::string& s, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos;
       pos = s.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string line_starting(const std::string& md, std::string_view prefix) {
  std::istringstream in(md);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) return line;
  }
  return {};
}

TEST(ReportStyle, Names) {
  for (auto s : {ReportStyle::kMonolingual, ReportStyle::kZeroShotRelative,
                 ReportStyle::kFewShot}) {
    EXPECT_EQ(parse_report_style(to_string(s)), s);
  }
  EXPECT_THROW(parse_report_style("table"), PreconditionError);
}

TEST(Monolingual, DaggersFollowSignificance) {
  auto rows = published("slurp");
  RenderedReport r = render_report(rows, ReportStyle::kMonolingual);
  const std::string low = line_starting(r.markdown, "| 2% | curriculum |");
  EXPECT_EQ(low,
            "| 2% | curriculum | 0.8574 ± 0.0033† | 0.6577 ± 0.0024† | "
            "0.7335 ± 0.0011† |");
  EXPECT_EQ(count(line_starting(r.markdown, "| 2% | direct |"), "†"), 0u);
  EXPECT_EQ(count(line_starting(r.markdown, "| 100% | direct |"), "†"), 0u);
  EXPECT_EQ(count(line_starting(r.markdown, "| 100% | curriculum |"), "†"), 0u);
  std::size_t marked = 0;
  for (const auto& p : oracle::kPublishedGrid) {
    if (std::string_view(p.corpus) == "slurp" && p.marked) ++marked;
  }
  EXPECT_EQ(count(r.markdown, "†"), marked);
  // Both rows of a significant pair carry the flag and the winner.
  EXPECT_EQ(count(r.csv, ",true,curriculum"), 2 * marked);
}

TEST(Monolingual, MeanOnlyCellsHaveNoInterval) {
  AggregateRow r = row("c", "mono", "direct", 0.5, "slu_f1", 0.25, 0.0, 1);
  std::vector<AggregateRow> rows{r};
  RenderedReport out = render_report(rows, ReportStyle::kMonolingual);
  EXPECT_NE(out.markdown.find("| 50% | direct | 0.2500 |"), std::string::npos);
  EXPECT_EQ(out.markdown.find("±"), std::string::npos);
}

std::vector<AggregateRow> relative_rows(double base, double variant) {
  return {
      row("de", "zero_shot", "text_only", 0.0, "slu_f1", base, 0.01, 3),
      row("de", "zero_shot", "direct", 0.1, "slu_f1", variant, 0.01, 3),
      row("de", "zero_shot", "direct", 0.1, "intent_accuracy", 0.9, 0.01, 3),
  };
}

TEST(ZeroShotRelative, Values) {
  auto rows = relative_rows(0.6145, 0.6739);
  RenderedReport r = render_report(rows, ReportStyle::kZeroShotRelative);
  EXPECT_NE(r.markdown.find("| 10% | direct | 0.6739 | +9.67% |"),
            std::string::npos)
      << r.markdown;
  EXPECT_NE(r.csv.find("de,0,text_only,0.6145000000,0.6145000000,0.0000000000"),
            std::string::npos);
  EXPECT_EQ(count(r.csv, "\n"), 3u);
}

TEST(ZeroShotRelative, EqualVariantIsZero) {
  auto rows = relative_rows(0.5, 0.5);
  RenderedReport r = render_report(rows, ReportStyle::kZeroShotRelative);
  EXPECT_EQ(count(r.markdown, "+0.00%"), 2u);
}

TEST(ZeroShotRelative, MissingOrZeroBaseline) {
  auto rows = relative_rows(0.5, 0.6);
  rows.erase(rows.begin());
  EXPECT_THROW(render_report(rows, ReportStyle::kZeroShotRelative),
               PreconditionError);
  auto zero = relative_rows(0.0, 0.6);
  EXPECT_THROW(render_report(zero, ReportStyle::kZeroShotRelative),
               PreconditionError);
}

TEST(FewShot, RowsByLevelSchemeMode) {
  std::vector<AggregateRow> rows = {
      row("de", "T", "text_only", 0.0, "slu_f1", 0.40, 0.0, 1),
      row("ko", "T", "text_only", 0.0, "slu_f1", 0.30, 0.0, 1),
      row("de", "T_S", "curriculum", 1.0, "slu_f1", 0.55, 0.0, 1),
      row("de", "T_S", "curriculum", 1.0, "entity_f1", 0.1, 0.0, 1),
  };
  RenderedReport r = render_report(rows, ReportStyle::kFewShot);
  EXPECT_NE(r.markdown.find("| source speech | scheme | target mode | de | ko |"),
            std::string::npos);
  EXPECT_NE(r.markdown.find("| 0% | text_only | T | 0.4000 | 0.3000 |"),
            std::string::npos);
  EXPECT_NE(r.markdown.find("| 100% | curriculum | T_S | 0.5500 | - |"),
            std::string::npos);
  EXPECT_EQ(r.csv,
            "speech_level,scheme,mode,de,ko\n"
            "0,text_only,T,0.4000000000,0.3000000000\n"
            "1,curriculum,T_S,0.5500000000,\n");
}

TEST(WriteReport, WritesBothFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "slumix_report_test";
  std::filesystem::create_directories(dir);
  write_report({"# md\n", "a,b\n"}, dir / "out");
  std::ifstream md(dir / "out.md"), csv(dir / "out.csv");
  std::string a, b;
  std::getline(md, a);
  std::getline(csv, b);
  EXPECT_EQ(a, "# md");
  EXPECT_EQ(b, "a,b");
  EXPECT_THROW(write_report({}, dir / "missing" / "out"), DataError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace slumix
