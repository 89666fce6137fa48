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

#include "slumix/metrics.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/labelcodec.h"

namespace slumix {

using nlohmann::json;

namespace {

void require_records(std::span<const PredictionRecord> records) {
  if (records.empty()) throw PreconditionError("empty record list");
}

bool intent_match(const SemanticLabel& gold, const SemanticLabel& pred) {
  if (pred.unparseable) return false;
  return normalize_key(gold.scenario) == normalize_key(pred.scenario) &&
         normalize_key(gold.action) == normalize_key(pred.action);
}

std::vector<Entity> normalized_entities(const SemanticLabel& label) {
  if (label.unparseable) return {};
  return normalize_label(label).entities;
}

struct Span {
  std::string type;
  std::string value;
};

// Entities plus the scenario/action pseudo-spans.
std::vector<Span> slu_spans(const SemanticLabel& label) {
  std::vector<Span> out;
  if (label.unparseable) return out;
  SemanticLabel norm = normalize_label(label);
  out.push_back({"scenario", norm.scenario});
  out.push_back({"action", norm.action});
  for (Entity& e : norm.entities) {
    // Pseudo-span types cannot collide with entity types.
    out.push_back({"entity:" + e.etype, std::move(e.filler)});
  }
  return out;
}

template <typename Tokens>
double multiset_f1(const Tokens& gold, const Tokens& pred) {
  if (gold.empty() || pred.empty()) return 0.0;
  std::map<typename Tokens::value_type, long> counts;
  for (const auto& g : gold) ++counts[g];
  long overlap = 0;
  for (const auto& p : pred) {
    auto it = counts.find(p);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(pred.size());
  const double recall = static_cast<double>(overlap) / static_cast<double>(gold.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string norm = normalize_text(s);
  std::size_t start = 0;
  while (start < norm.size()) {
    std::size_t stop = norm.find(' ', start);
    if (stop == std::string::npos) stop = norm.size();
    out.emplace_back(norm.substr(start, stop - start));
    start = stop + 1;
  }
  return out;
}

std::vector<char> chars(std::string_view s) {
  std::vector<char> out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' &&
        c != '\v') {
      out.push_back(c);
    }
  }
  return out;
}

using CreditFn = double (*)(std::string_view, std::string_view);

// Best total credit for one utterance with same-type matching only.
double utterance_credit(const std::vector<Span>& gold,
                        const std::vector<Span>& pred, CreditFn credit) {
  std::map<std::string_view, std::pair<std::vector<const Span*>,
                                       std::vector<const Span*>>> groups;
  for (const Span& s : gold) groups[s.type].first.push_back(&s);
  for (const Span& s : pred) groups[s.type].second.push_back(&s);
  double total = 0.0;
  for (const auto& [type, members] : groups) {
    const auto& [g, p] = members;
    if (g.empty() || p.empty()) continue;
    std::vector<std::vector<double>> m(g.size(), std::vector<double>(p.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        m[i][j] = credit(g[i]->value, p[j]->value);
      }
    }
    total += detail::max_credit(m);
  }
  return total;
}

}  // namespace

double word_overlap_f1(std::string_view gold, std::string_view pred) {
  return multiset_f1(words(gold), words(pred));
}

double char_overlap_f1(std::string_view gold, std::string_view pred) {
  return multiset_f1(chars(gold), chars(pred));
}

Prf prf_from_counts(double tp, double n_pred, double n_gold) {
  if (n_pred == 0.0 && n_gold == 0.0) return {1.0, 1.0, 1.0};
  Prf r;
  r.precision = n_pred > 0.0 ? tp / n_pred : 0.0;
  r.recall = n_gold > 0.0 ? tp / n_gold : 0.0;
  const double sum = r.precision + r.recall;
  r.f1 = sum > 0.0 ? 2.0 * r.precision * r.recall / sum : 0.0;
  return r;
}

namespace detail {

namespace {

void exhaustive(const std::vector<std::vector<double>>& credit,
                std::size_t row, std::vector<bool>& used, double acc,
                double& best) {
  if (row == credit.size()) {
    best = std::max(best, acc);
    return;
  }
  // Leave this row unassigned.
  exhaustive(credit, row + 1, used, acc, best);
  for (std::size_t j = 0; j < credit[row].size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    exhaustive(credit, row + 1, used, acc + credit[row][j], best);
    used[j] = false;
  }
}

}  // namespace

double max_credit_exhaustive(const std::vector<std::vector<double>>& credit) {
  if (credit.empty()) return 0.0;
  std::vector<bool> used(credit.front().size(), false);
  double best = 0.0;
  exhaustive(credit, 0, used, 0.0, best);
  return best;
}

double max_credit_hungarian(const std::vector<std::vector<double>>& credit) {
  const std::size_t rows = credit.size();
  const std::size_t cols = rows ? credit.front().size() : 0;
  const std::size_t n = std::max(rows, cols);
  if (n == 0) return 0.0;
  // Minimize negated credit on a zero-padded square matrix (1-based
  // potentials formulation).
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols) ? -credit[i][j] : 0.0;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = match[j];
    if (i >= 1 && i - 1 < rows && j - 1 < cols) total += credit[i - 1][j - 1];
  }
  return total;
}

double max_credit(const std::vector<std::vector<double>>& credit) {
  if (credit.empty() || credit.front().empty()) return 0.0;
  if (credit.size() <= 5 && credit.front().size() <= 5) {
    return max_credit_exhaustive(credit);
  }
  return max_credit_hungarian(credit);
}

}  // namespace detail

double intent_accuracy(std::span<const PredictionRecord> records) {
  require_records(records);
  std::size_t correct = 0;
  for (const PredictionRecord& r : records) {
    if (intent_match(r.gold, r.pred)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

EntityCounts entity_counts(std::span<const PredictionRecord> records) {
  require_records(records);
  EntityCounts c;
  for (const PredictionRecord& r : records) {
    std::vector<Entity> gold = normalized_entities(r.gold);
    std::vector<Entity> pred = normalized_entities(r.pred);
    std::map<Entity, long> pool;
    for (const Entity& e : gold) ++pool[e];
    std::size_t tp = 0;
    for (const Entity& e : pred) {
      auto it = pool.find(e);
      if (it != pool.end() && it->second > 0) {
        --it->second;
        ++tp;
      }
    }
    c.tp += tp;
    c.fp += pred.size() - tp;
    c.fn += gold.size() - tp;
  }
  return c;
}

Prf entity_prf(std::span<const PredictionRecord> records) {
  EntityCounts c = entity_counts(records);
  return prf_from_counts(static_cast<double>(c.tp),
                         static_cast<double>(c.tp + c.fp),
                         static_cast<double>(c.tp + c.fn));
}

SluF1Detail slu_f1_detail(std::span<const PredictionRecord> records) {
  require_records(records);
  SluF1Detail d;
  for (const PredictionRecord& r : records) {
    std::vector<Span> gold = slu_spans(r.gold);
    std::vector<Span> pred = slu_spans(r.pred);
    d.gold_spans += gold.size();
    d.pred_spans += pred.size();
    d.word_tp += utterance_credit(gold, pred, &word_overlap_f1);
    d.char_tp += utterance_credit(gold, pred, &char_overlap_f1);
  }
  const auto np = static_cast<double>(d.pred_spans);
  const auto ng = static_cast<double>(d.gold_spans);
  d.word = prf_from_counts(d.word_tp, np, ng);
  d.chars = prf_from_counts(d.char_tp, np, ng);
  d.slu_f1 = 0.5 * (d.word.f1 + d.chars.f1);
  return d;
}

double slu_f1(std::span<const PredictionRecord> records) {
  return slu_f1_detail(records).slu_f1;
}

MetricReport evaluate(std::span<const PredictionRecord> records) {
  require_records(records);
  std::unordered_set<std::string_view> ids;
  for (const PredictionRecord& r : records) {
    if (!ids.insert(r.utt_id).second) {
      throw DataError(fmt::format("duplicate utt_id '{}'", r.utt_id));
    }
  }
  MetricReport rep;
  rep.n_utts = records.size();
  rep.intent_accuracy = intent_accuracy(records);
  EntityCounts c = entity_counts(records);
  rep.tp = c.tp;
  rep.fp = c.fp;
  rep.fn = c.fn;
  Prf e = prf_from_counts(static_cast<double>(c.tp),
                          static_cast<double>(c.tp + c.fp),
                          static_cast<double>(c.tp + c.fn));
  rep.entity_precision = e.precision;
  rep.entity_recall = e.recall;
  rep.entity_f1 = e.f1;
  SluF1Detail s = slu_f1_detail(records);
  rep.slu_f1 = s.slu_f1;
  rep.word_tp_frac = s.word_tp;
  rep.char_tp_frac = s.char_tp;
  return rep;
}

json report_to_json(const MetricReport& r) {
  return {{"intent_accuracy", r.intent_accuracy},
          {"entity_precision", r.entity_precision},
          {"entity_recall", r.entity_recall},
          {"entity_f1", r.entity_f1},
          {"slu_f1", r.slu_f1},
          {"counts",
           {{"n_utts", r.n_utts},
            {"tp", r.tp},
            {"fp", r.fp},
            {"fn", r.fn},
            {"word_tp_frac", r.word_tp_frac},
            {"char_tp_frac", r.char_tp_frac}}}};
}

MetricReport report_from_json(const json& j) {
  try {
    MetricReport r;
    r.intent_accuracy = j.at("intent_accuracy").get<double>();
    r.entity_precision = j.at("entity_precision").get<double>();
    r.entity_recall = j.at("entity_recall").get<double>();
    r.entity_f1 = j.at("entity_f1").get<double>();
    r.slu_f1 = j.at("slu_f1").get<double>();
    const json& c = j.at("counts");
    r.n_utts = c.at("n_utts").get<std::size_t>();
    r.tp = c.at("tp").get<std::size_t>();
    r.fp = c.at("fp").get<std::size_t>();
    r.fn = c.at("fn").get<std::size_t>();
    r.word_tp_frac = c.at("word_tp_frac").get<double>();
    r.char_tp_frac = c.at("char_tp_frac").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed metric report: {}", e.what()));
  }
}

std::vector<PredictionLine> read_predictions(std::istream& in) {
  std::vector<PredictionLine> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (normalize_text(line).empty()) continue;
    try {
      json j = json::parse(line);
      PredictionLine p;
      p.utt_id = j.at("utt_id").get<std::string>();
      p.pred_raw = j.at("pred_raw").get<std::string>();
      if (auto it = j.find("gold"); it != j.end() && !it->is_null()) {
        p.gold = label_from_json(*it);
      }
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw DataError(fmt::format("line {}: malformed prediction: {}", lineno,
                                  e.what()));
    }
  }
  return out;
}

std::vector<PredictionLine> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  return read_predictions(in);
}

void write_predictions(std::span<const PredictionLine> lines, std::ostream& out) {
  for (const PredictionLine& p : lines) {
    json j = {{"utt_id", p.utt_id}};
    if (p.gold) j["gold"] = label_to_json(*p.gold);
    j["pred_raw"] = p.pred_raw;
    out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

std::vector<PredictionRecord> join_predictions(
    const Corpus& gold, std::span<const PredictionLine> lines) {
  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const Utterance& u : gold.records) by_id.emplace(u.id, &u);
  std::unordered_set<std::string_view> seen;
  std::vector<PredictionRecord> out;
  out.reserve(lines.size());
  for (const PredictionLine& p : lines) {
    if (!seen.insert(p.utt_id).second) {
      throw DataError(fmt::format("duplicate utt_id '{}'", p.utt_id));
    }
    PredictionRecord r;
    r.utt_id = p.utt_id;
    if (auto it = by_id.find(p.utt_id); it != by_id.end()) {
      r.gold = it->second->label;
    } else if (p.gold) {
      r.gold = *p.gold;
    } else {
      throw DataError(
          fmt::format("prediction '{}' has no gold label", p.utt_id));
    }
    r.pred = parse_label(p.pred_raw);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace slumix
