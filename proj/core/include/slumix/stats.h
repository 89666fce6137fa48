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

// Seed-level aggregation: means with Student-t 95% confidence intervals,
// significance by interval non-overlap, and relative improvements.

#ifndef SLUMIX_STATS_H_
#define SLUMIX_STATS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slumix/error.h"
#include "slumix/metrics.h"

namespace slumix {

struct SeedRun {
  std::uint64_t seed = 0;
  MetricReport report;
};

// Metric names accepted by aggregate(): intent_accuracy, entity_precision,
// entity_recall, entity_f1, slu_f1.
double metric_value(const MetricReport& report, std::string_view metric);
// The three headline metrics, in table order.
const std::vector<std::string>& headline_metrics();

struct AggregateCell {
  std::string metric;
  double mean = 0.0;
  // t_{0.975, n-1} * sd / sqrt(n); 0 when has_ci is false.
  double half_width = 0.0;
  std::size_t n = 0;
  // False for single-run cells, which carry a mean only.
  bool has_ci = true;
};

// t_{0.975, df} from a bundled table (df <= 200), normal quantile beyond.
double t_quantile_975(std::size_t df);

// Mean and CI over seeds. Throws PreconditionError when fewer than two runs
// are given or a seed repeats.
AggregateCell aggregate(std::span<const SeedRun> runs, std::string_view metric);
// Same over raw values; n == 1 yields a mean-only cell.
AggregateCell summarize(std::span<const double> values, std::string_view metric);

struct ComparisonMark {
  // 0 for the first argument, 1 for the second; set only when significant.
  std::optional<int> winner;
  bool significant = false;
};

// Absolute slack under which two interval endpoints count as touching.
inline constexpr double kOverlapTolerance = 1e-9;

// Significant iff [mean +- half_width] intervals are disjoint; touching
// intervals overlap. Mean-only cells are never significant. Throws
// PreconditionError on a metric mismatch.
ComparisonMark significant(const AggregateCell& a, const AggregateCell& b);

// (variant - base) / base. Throws PreconditionError when base <= 0.
double relative_improvement(double base, double variant);

// One row of the aggregate results table.
struct AggregateRow {
  std::string corpus;
  std::string mode = "mono";  // cross-lingual target mode, or "mono"
  std::string scheme;
  double speech_level = 0.0;
  AggregateCell cell;
  bool significant = false;
  std::string winner;  // scheme name when significant
};

void write_aggregate_csv(std::span<const AggregateRow> rows, std::ostream& out);
void write_aggregate_csv(std::span<const AggregateRow> rows,
                         const std::filesystem::path& path);
std::vector<AggregateRow> read_aggregate_csv(std::istream& in);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

// Fills significant/winner on rows: each direct/curriculum pair sharing
// (corpus, mode, level, metric) is compared.
void mark_significance(std::vector<AggregateRow>& rows);

// Canonical row order: corpus, mode, level, scheme, metric.
void sort_rows(std::vector<AggregateRow>& rows);

}  // namespace slumix

#endif  // SLUMIX_STATS_H_
