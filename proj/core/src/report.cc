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

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "slumix/error.h"

namespace slumix {

std::string_view to_string(ReportStyle style) {
  switch (style) {
    case ReportStyle::kMonolingual: return "monolingual";
    case ReportStyle::kZeroShotRelative: return "zeroshot_relative";
    case ReportStyle::kFewShot: return "fewshot";
  }
  return "monolingual";
}

ReportStyle parse_report_style(std::string_view name) {
  for (auto s : {ReportStyle::kMonolingual, ReportStyle::kZeroShotRelative,
                 ReportStyle::kFewShot}) {
    if (to_string(s) == name) return s;
  }
  throw PreconditionError(fmt::format("unknown report style '{}'", name));
}

namespace {

constexpr std::string_view kDagger = "†";
constexpr std::string_view kPlusMinus = "±";

std::string percent(double level) { return fmt::format("{:g}%", level * 100); }

int scheme_rank(std::string_view s) {
  if (s == "text_only") return 0;
  if (s == "direct") return 1;
  if (s == "curriculum") return 2;
  return 3;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string metric_cell(const AggregateRow& r) {
  std::string text = r.cell.has_ci
                         ? fmt::format("{:.4f} {} {:.4f}", r.cell.mean,
                                       kPlusMinus, r.cell.half_width)
                         : fmt::format("{:.4f}", r.cell.mean);
  if (r.significant && r.winner == r.scheme) text += kDagger;
  return text;
}

// (level, scheme rank, scheme) ordering used for all table rows.
using RowKey = std::tuple<double, int, std::string>;

RenderedReport monolingual(std::span<const AggregateRow> rows) {
  // (corpus, mode) -> row key -> metric -> row
  std::map<std::pair<std::string, std::string>,
           std::map<RowKey, std::map<std::string, const AggregateRow*>>>
      tables;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      metrics;
  for (const AggregateRow& r : rows) {
    auto table = std::make_pair(r.corpus, r.mode);
    tables[table][{r.speech_level, scheme_rank(r.scheme), r.scheme}]
          [r.cell.metric] = &r;
    auto& m = metrics[table];
    if (std::find(m.begin(), m.end(), r.cell.metric) == m.end()) {
      m.push_back(r.cell.metric);
    }
  }
  RenderedReport out;
  out.csv = "corpus,mode,speech_level,scheme,metric,mean,half_width,n,"
            "significant,winner\n";
  for (const auto& [table, by_row] : tables) {
    const auto& cols = metrics[table];
    out.markdown += fmt::format("## {} ({})\n\n| speech | scheme |",
                                table.first, table.second);
    for (const auto& c : cols) out.markdown += fmt::format(" {} |", c);
    out.markdown += "\n|---|---|";
    for (std::size_t i = 0; i < cols.size(); ++i) out.markdown += "---|";
    out.markdown += '\n';
    for (const auto& [key, by_metric] : by_row) {
      out.markdown += fmt::format("| {} | {} |", percent(std::get<0>(key)),
                                  std::get<2>(key));
      for (const auto& c : cols) {
        auto it = by_metric.find(c);
        out.markdown += fmt::format(
            " {} |", it == by_metric.end() ? "-" : metric_cell(*it->second));
      }
      out.markdown += '\n';
      for (const auto& c : cols) {
        auto it = by_metric.find(c);
        if (it == by_metric.end()) continue;
        const AggregateRow& r = *it->second;
        out.csv += fmt::format(
            "{},{},{:g},{},{},{:.10f},{:.10f},{},{},{}\n", csv_field(r.corpus),
            csv_field(r.mode), r.speech_level, r.scheme, r.cell.metric,
            r.cell.mean, r.cell.half_width, r.cell.n,
            r.significant ? "true" : "false", r.winner);
      }
    }
    out.markdown += '\n';
  }
  return out;
}

const AggregateRow* find_baseline(std::span<const AggregateRow> rows,
                                  const std::string& corpus) {
  for (const AggregateRow& r : rows) {
    if (r.corpus == corpus && r.scheme == "text_only" &&
        r.speech_level == 0.0 && r.cell.metric == "slu_f1") {
      return &r;
    }
  }
  return nullptr;
}

RenderedReport zeroshot_relative(std::span<const AggregateRow> rows) {
  std::set<std::string> corpora;
  for (const AggregateRow& r : rows) {
    if (r.cell.metric == "slu_f1") corpora.insert(r.corpus);
  }
  RenderedReport out;
  out.csv = "corpus,speech_level,scheme,slu_f1,baseline,relative_improvement\n";
  for (const std::string& corpus : corpora) {
    const AggregateRow* base = find_baseline(rows, corpus);
    if (!base) {
      throw PreconditionError(fmt::format(
          "no text_only 0% slu_f1 baseline for '{}'", corpus));
    }
    if (base->cell.mean == 0.0) {
      throw PreconditionError(
          fmt::format("zero slu_f1 baseline for '{}'", corpus));
    }
    std::map<RowKey, const AggregateRow*> ordered;
    for (const AggregateRow& r : rows) {
      if (r.corpus == corpus && r.cell.metric == "slu_f1") {
        ordered[{r.speech_level, scheme_rank(r.scheme), r.scheme}] = &r;
      }
    }
    out.markdown += fmt::format(
        "## {}: SLU-F1 relative to text_only 0% ({:.4f})\n\n"
        "| speech | scheme | slu_f1 | relative |\n|---|---|---|---|\n",
        corpus, base->cell.mean);
    for (const auto& [key, r] : ordered) {
      const double rel = relative_improvement(base->cell.mean, r->cell.mean);
      out.markdown += fmt::format("| {} | {} | {:.4f} | {:+.2f}% |\n",
                                  percent(r->speech_level), r->scheme,
                                  r->cell.mean, rel * 100);
      out.csv += fmt::format("{},{:g},{},{:.10f},{:.10f},{:.10f}\n",
                             csv_field(corpus), r->speech_level, r->scheme,
                             r->cell.mean, base->cell.mean, rel);
    }
    out.markdown += '\n';
  }
  return out;
}

RenderedReport fewshot(std::span<const AggregateRow> rows) {
  std::set<std::string> corpora;
  // (level, scheme rank, scheme, mode) -> corpus -> row
  std::map<std::tuple<double, int, std::string, std::string>,
           std::map<std::string, const AggregateRow*>>
      table;
  for (const AggregateRow& r : rows) {
    if (r.cell.metric != "slu_f1") continue;
    corpora.insert(r.corpus);
    table[{r.speech_level, scheme_rank(r.scheme), r.scheme, r.mode}]
         [r.corpus] = &r;
  }
  RenderedReport out;
  out.markdown = "| source speech | scheme | target mode |";
  out.csv = "speech_level,scheme,mode";
  for (const auto& c : corpora) {
    out.markdown += fmt::format(" {} |", c);
    out.csv += "," + csv_field(c);
  }
  out.markdown += "\n|---|---|---|";
  for (std::size_t i = 0; i < corpora.size(); ++i) out.markdown += "---|";
  out.markdown += '\n';
  out.csv += '\n';
  for (const auto& [key, by_corpus] : table) {
    const auto& [level, rank, scheme, mode] = key;
    out.markdown += fmt::format("| {} | {} | {} |", percent(level), scheme,
                                mode);
    out.csv += fmt::format("{:g},{},{}", level, scheme, mode);
    for (const auto& c : corpora) {
      auto it = by_corpus.find(c);
      if (it == by_corpus.end()) {
        out.markdown += " - |";
        out.csv += ",";
      } else {
        out.markdown += fmt::format(" {:.4f} |", it->second->cell.mean);
        out.csv += fmt::format(",{:.10f}", it->second->cell.mean);
      }
    }
    out.markdown += '\n';
    out.csv += '\n';
  }
  return out;
}

}  // namespace

RenderedReport render_report(std::span<const AggregateRow> rows,
                             ReportStyle style) {
  switch (style) {
    case ReportStyle::kMonolingual: return monolingual(rows);
    case ReportStyle::kZeroShotRelative: return zeroshot_relative(rows);
    case ReportStyle::kFewShot: return fewshot(rows);
  }
  return {};
}

void write_report(const RenderedReport& report,
                  const std::filesystem::path& prefix) {
  for (const auto& [ext, body] :
       {std::pair{".md", &report.markdown}, std::pair{".csv", &report.csv}}) {
    std::filesystem::path path = prefix;
    path += ext;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
    out << *body;
  }
}

}  // namespace slumix
