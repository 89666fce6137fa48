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

// Markdown and CSV tables from aggregate rows.

#ifndef SLUMIX_REPORT_H_
#define SLUMIX_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "slumix/stats.h"

namespace slumix {

enum class ReportStyle {
  // mean +- half-width per (level, scheme) row, dagger on the significant
  // winner of each direct/curriculum pair.
  kMonolingual,
  // Per-target relative SLU-F1 improvement over the text-only level-0 cell.
  kZeroShotRelative,
  // SLU-F1 means in (source speech level, scheme, target mode) rows.
  kFewShot,
};

std::string_view to_string(ReportStyle style);
ReportStyle parse_report_style(std::string_view name);

struct RenderedReport {
  std::string markdown;
  std::string csv;
};

// Throws PreconditionError when the relative style lacks a baseline cell.
RenderedReport render_report(std::span<const AggregateRow> rows,
                             ReportStyle style);

// Writes <prefix>.md and <prefix>.csv.
void write_report(const RenderedReport& report,
                  const std::filesystem::path& prefix);

}  // namespace slumix

#endif  // SLUMIX_REPORT_H_
