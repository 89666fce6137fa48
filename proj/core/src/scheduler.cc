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

#include "slumix/scheduler.h"

#include <cmath>
#include <fstream>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/random.h"

namespace slumix {

using nlohmann::json;

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kTextOnly: return "text_only";
    case Scheme::kDirect: return "direct";
    case Scheme::kCurriculum: return "curriculum";
  }
  return "text_only";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "text_only") return Scheme::kTextOnly;
  if (name == "direct") return Scheme::kDirect;
  if (name == "curriculum") return Scheme::kCurriculum;
  throw PreconditionError(fmt::format(
      "unknown scheme '{}' (expected text_only, direct or curriculum)", name));
}

void validate_config(const SchedulerConfig& config) {
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw PreconditionError(
        fmt::format("speech proportion {} outside [0, 1]", config.p));
  }
  if (config.epochs < 1) {
    throw PreconditionError(
        fmt::format("epoch count must be positive (got {})", config.epochs));
  }
}

std::size_t speech_budget(std::size_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError(
        fmt::format("speech proportion {} outside [0, 1]", p));
  }
  const double x = p * static_cast<double>(n);
  // The relative nudge absorbs representation error in p (0.15 * 10 must
  // round to 2, not to 1).
  const double rounded = std::floor(x + 0.5 + 1e-9 * std::max(1.0, x));
  return std::min(n, static_cast<std::size_t>(rounded));
}

std::vector<std::string> nested_permutation(std::span<const std::string> ids,
                                            std::uint64_t seed) {
  std::unordered_set<std::string_view> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) {
      throw DataError(fmt::format("duplicate speech id '{}'", id));
    }
  }
  std::vector<std::string> out(ids.begin(), ids.end());
  Rng rng(seed);
  rng.shuffle(std::span(out));
  return out;
}

MixPlan build_plan(const SchedulerConfig& config,
                   std::vector<std::string> text_ids,
                   std::vector<std::string> speech_ordering) {
  validate_config(config);
  MixPlan plan;
  plan.config = config;
  plan.n_speech = speech_ordering.size();
  if (config.pinned > plan.n_speech) {
    throw PreconditionError(fmt::format(
        "{} pinned speech items but only {} available", config.pinned,
        plan.n_speech));
  }
  if (config.scheme != Scheme::kTextOnly) {
    plan.budget = config.pinned +
                  speech_budget(plan.n_speech - config.pinned, config.p);
  }
  if (plan.budget > plan.n_speech) {
    throw PreconditionError(fmt::format(
        "speech budget {} exceeds the {} available speech items", plan.budget,
        plan.n_speech));
  }
  plan.permutation = std::move(speech_ordering);

  const std::vector<std::string> pool(
      plan.permutation.begin(),
      plan.permutation.begin() + static_cast<std::ptrdiff_t>(plan.budget));
  const std::uint64_t stream = derive_seed(config.seed, "plan");
  const int E = config.epochs;

  for (int e = 1; e <= E; ++e) {
    EpochPlan epoch;
    epoch.epoch = e;
    epoch.text_item_ids = text_ids;
    const std::uint64_t epoch_seed = derive_seed(stream, e);
    if (config.scheme == Scheme::kDirect) {
      epoch.speech_item_ids = pool;
      Rng rng(epoch_seed);
      rng.shuffle(std::span(epoch.speech_item_ids));
    } else if (config.scheme == Scheme::kCurriculum && e == E) {
      epoch.speech_item_ids.reserve(pool.size() * static_cast<std::size_t>(E));
      for (int cycle = 0; cycle < E; ++cycle) {
        std::vector<std::string> round = pool;
        Rng rng(derive_seed(epoch_seed, static_cast<std::uint64_t>(cycle)));
        rng.shuffle(std::span(round));
        epoch.speech_item_ids.insert(epoch.speech_item_ids.end(),
                                     round.begin(), round.end());
      }
    }
    plan.epochs.push_back(std::move(epoch));
  }
  return plan;
}

std::vector<Batch> epoch_batches(const MixPlan& plan, int epoch,
                                 std::size_t batch_size, std::uint64_t seed) {
  if (batch_size == 0) throw PreconditionError("batch size must be positive");
  if (epoch < 1 || epoch > static_cast<int>(plan.epochs.size())) {
    throw PreconditionError(fmt::format("epoch {} outside [1, {}]", epoch,
                                        plan.epochs.size()));
  }
  const EpochPlan& ep = plan.epochs[static_cast<std::size_t>(epoch - 1)];
  std::vector<ItemRef> items;
  items.reserve(ep.text_item_ids.size() + ep.speech_item_ids.size());
  for (const std::string& id : ep.text_item_ids) {
    items.push_back({Modality::kText, id});
  }
  for (const std::string& id : ep.speech_item_ids) {
    items.push_back({Modality::kSpeech, id});
  }
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch)));
  rng.shuffle(std::span(items));

  std::vector<Batch> batches;
  batches.reserve((items.size() + batch_size - 1) / batch_size);
  for (std::size_t i = 0; i < items.size(); i += batch_size) {
    std::size_t end = std::min(items.size(), i + batch_size);
    batches.emplace_back(std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(i)),
                         std::make_move_iterator(items.begin() + static_cast<std::ptrdiff_t>(end)));
  }
  return batches;
}

PlanTotals plan_totals(const MixPlan& plan) {
  PlanTotals totals;
  for (const EpochPlan& ep : plan.epochs) {
    totals.text_per_epoch.push_back(ep.text_item_ids.size());
    totals.speech_per_epoch.push_back(ep.speech_item_ids.size());
    totals.text_total += ep.text_item_ids.size();
    totals.speech_total += ep.speech_item_ids.size();
  }
  return totals;
}

TrainingPool training_pool(const Corpus& corpus, Split split) {
  TrainingPool pool;
  std::unordered_set<std::string_view> groups;
  for (const Utterance& u : corpus.records) {
    if (u.split != split) continue;
    if (groups.insert(u.text_id).second) pool.text_ids.push_back(u.id);
    if (u.has_speech()) pool.speech_ids.push_back(u.id);
  }
  return pool;
}

nlohmann::json plan_to_json(const MixPlan& plan) {
  json epochs = json::array();
  for (const EpochPlan& ep : plan.epochs) {
    epochs.push_back({{"epoch", ep.epoch},
                      {"text", ep.text_item_ids},
                      {"speech", ep.speech_item_ids}});
  }
  return {{"plan_version", 1},
          {"config",
           {{"scheme", to_string(plan.config.scheme)},
            {"p", plan.config.p},
            {"epochs", plan.config.epochs},
            {"seed", plan.config.seed},
            {"pinned", plan.config.pinned}}},
          {"n_speech", plan.n_speech},
          {"budget", plan.budget},
          {"permutation", plan.permutation},
          {"epochs", std::move(epochs)}};
}

MixPlan plan_from_json(const nlohmann::json& j) {
  try {
    if (j.at("plan_version").get<int>() != 1) {
      throw DataError("unsupported plan_version");
    }
    MixPlan plan;
    const json& c = j.at("config");
    plan.config.scheme = parse_scheme(c.at("scheme").get<std::string>());
    plan.config.p = c.at("p").get<double>();
    plan.config.epochs = c.at("epochs").get<int>();
    plan.config.seed = c.at("seed").get<std::uint64_t>();
    plan.config.pinned = c.value("pinned", std::size_t{0});
    plan.n_speech = j.at("n_speech").get<std::size_t>();
    plan.budget = j.at("budget").get<std::size_t>();
    plan.permutation = j.at("permutation").get<std::vector<std::string>>();
    for (const json& e : j.at("epochs")) {
      plan.epochs.push_back({e.at("epoch").get<int>(),
                             e.at("text").get<std::vector<std::string>>(),
                             e.at("speech").get<std::vector<std::string>>()});
    }
    if (static_cast<int>(plan.epochs.size()) != plan.config.epochs) {
      throw DataError("plan epoch list does not match config.epochs");
    }
    return plan;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed plan: {}", e.what()));
  }
}

void write_plan(const MixPlan& plan, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << plan_to_json(plan).dump() << '\n';
}

MixPlan read_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed plan '{}': {}", path.string(),
                                e.what()));
  }
  return plan_from_json(j);
}

}  // namespace slumix
