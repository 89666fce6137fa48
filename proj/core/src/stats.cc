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

#include "slumix/stats.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

namespace slumix {

double metric_value(const MetricReport& r, std::string_view metric) {
  if (metric == "intent_accuracy") return r.intent_accuracy;
  if (metric == "entity_precision") return r.entity_precision;
  if (metric == "entity_recall") return r.entity_recall;
  if (metric == "entity_f1") return r.entity_f1;
  if (metric == "slu_f1") return r.slu_f1;
  throw PreconditionError(fmt::format("unknown metric '{}'", metric));
}

const std::vector<std::string>& headline_metrics() {
  static const std::vector<std::string> kMetrics = {"intent_accuracy",
                                                    "entity_f1", "slu_f1"};
  return kMetrics;
}

AggregateCell summarize(std::span<const double> values,
                        std::string_view metric) {
  if (values.empty()) throw PreconditionError("no values to aggregate");
  AggregateCell cell;
  cell.metric = std::string(metric);
  cell.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  cell.mean = sum / static_cast<double>(cell.n);
  if (std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); })) {
    // Avoids a rounding residue in the mean and the spread.
    cell.mean = values.front();
  }
  if (cell.n < 2) {
    cell.has_ci = false;
    return cell;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - cell.mean) * (v - cell.mean);
  const double sd = std::sqrt(ss / static_cast<double>(cell.n - 1));
  cell.half_width = t_quantile_975(cell.n - 1) * sd /
                    std::sqrt(static_cast<double>(cell.n));
  return cell;
}

AggregateCell aggregate(std::span<const SeedRun> runs,
                        std::string_view metric) {
  if (runs.size() < 2) {
    throw PreconditionError(fmt::format(
        "confidence interval needs at least 2 runs (got {})", runs.size()));
  }
  std::set<std::uint64_t> seeds;
  std::vector<double> values;
  values.reserve(runs.size());
  for (const SeedRun& r : runs) {
    if (!seeds.insert(r.seed).second) {
      throw PreconditionError(fmt::format("duplicate seed {}", r.seed));
    }
    values.push_back(metric_value(r.report, metric));
  }
  return summarize(values, metric);
}

ComparisonMark significant(const AggregateCell& a, const AggregateCell& b) {
  if (a.metric != b.metric) {
    throw PreconditionError(fmt::format("cannot compare metric '{}' with '{}'",
                                        a.metric, b.metric));
  }
  ComparisonMark mark;
  if (!a.has_ci || !b.has_ci) return mark;
  const double a_lo = a.mean - a.half_width, a_hi = a.mean + a.half_width;
  const double b_lo = b.mean - b.half_width, b_hi = b.mean + b.half_width;
  if (a_lo - b_hi > kOverlapTolerance) {
    mark.significant = true;
    mark.winner = 0;
  } else if (b_lo - a_hi > kOverlapTolerance) {
    mark.significant = true;
    mark.winner = 1;
  }
  return mark;
}

double relative_improvement(double base, double variant) {
  if (!(base > 0.0)) {
    throw PreconditionError(
        fmt::format("relative improvement needs a positive base (got {})",
                    base));
  }
  return (variant - base) / base;
}

namespace {

int scheme_rank(std::string_view s) {
  if (s == "text_only") return 0;
  if (s == "direct") return 1;
  if (s == "curriculum") return 2;
  return 3;
}

int metric_rank(std::string_view m) {
  const auto& h = headline_metrics();
  auto it = std::find(h.begin(), h.end(), m);
  return it == h.end() ? static_cast<int>(h.size())
                       : static_cast<int>(it - h.begin());
}

void check_field(std::string_view v) {
  if (v.find_first_of(",\n\r") != std::string_view::npos) {
    throw DataError(fmt::format("CSV field '{}' contains a separator", v));
  }
}

constexpr std::string_view kHeader =
    "corpus,mode,scheme,speech_level,metric,mean,half_width,n,has_ci,"
    "significant,winner";

}  // namespace

void sort_rows(std::vector<AggregateRow>& rows) {
  auto key = [](const AggregateRow& r) {
    return std::make_tuple(std::cref(r.corpus), std::cref(r.mode),
                           r.speech_level, scheme_rank(r.scheme),
                           std::cref(r.scheme), metric_rank(r.cell.metric),
                           std::cref(r.cell.metric));
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const AggregateRow& a, const AggregateRow& b) {
                     return key(a) < key(b);
                   });
}

void mark_significance(std::vector<AggregateRow>& rows) {
  using Key = std::tuple<std::string, std::string, double, std::string>;
  std::map<Key, std::pair<AggregateRow*, AggregateRow*>> pairs;
  for (AggregateRow& r : rows) {
    r.significant = false;
    r.winner.clear();
    Key k{r.corpus, r.mode, r.speech_level, r.cell.metric};
    if (r.scheme == "direct") pairs[k].first = &r;
    if (r.scheme == "curriculum") pairs[k].second = &r;
  }
  for (auto& [k, pair] : pairs) {
    auto [direct, curr] = pair;
    if (!direct || !curr) continue;
    ComparisonMark m = significant(direct->cell, curr->cell);
    if (!m.significant) continue;
    const std::string winner = *m.winner == 0 ? "direct" : "curriculum";
    for (AggregateRow* r : {direct, curr}) {
      r->significant = true;
      r->winner = winner;
    }
  }
}

void write_aggregate_csv(std::span<const AggregateRow> rows,
                         std::ostream& out) {
  out << kHeader << '\n';
  for (const AggregateRow& r : rows) {
    for (std::string_view f : {std::string_view(r.corpus),
                               std::string_view(r.mode),
                               std::string_view(r.scheme),
                               std::string_view(r.cell.metric)}) {
      check_field(f);
    }
    out << fmt::format("{},{},{},{:g},{},{:.10f},{:.10f},{},{},{},{}\n",
                       r.corpus, r.mode, r.scheme, r.speech_level,
                       r.cell.metric, r.cell.mean, r.cell.half_width, r.cell.n,
                       r.cell.has_ci ? 1 : 0, r.significant ? 1 : 0, r.winner);
  }
}

void write_aggregate_csv(std::span<const AggregateRow> rows,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  write_aggregate_csv(rows, out);
}

std::vector<AggregateRow> read_aggregate_csv(std::istream& in) {
  std::vector<AggregateRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != kHeader) throw DataError("unexpected aggregate CSV header");
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) {
      throw DataError(fmt::format("line {}: expected 11 fields, got {}",
                                  lineno, f.size()));
    }
    try {
      AggregateRow r;
      r.corpus = f[0];
      r.mode = f[1];
      r.scheme = f[2];
      r.speech_level = std::stod(f[3]);
      r.cell.metric = f[4];
      r.cell.mean = std::stod(f[5]);
      r.cell.half_width = std::stod(f[6]);
      r.cell.n = std::stoul(f[7]);
      r.cell.has_ci = f[8] == "1";
      r.significant = f[9] == "1";
      r.winner = f[10];
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw DataError(fmt::format("line {}: bad number: {}", lineno, e.what()));
    }
  }
  return rows;
}

std::vector<AggregateRow> read_aggregate_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  return read_aggregate_csv(in);
}

}  // namespace slumix
