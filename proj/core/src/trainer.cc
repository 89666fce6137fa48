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

#include "slumix/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <unordered_map>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/labelcodec.h"
#include "slumix/random.h"

namespace slumix {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Recipes.

TrainRecipe TrainRecipe::Full(Scheme scheme) {
  TrainRecipe r;
  if (scheme == Scheme::kCurriculum) {
    r.phase2_peak_lr = 3.0e-6;
    r.phase2_warmup_ratio = 0.02;
  }
  return r;
}

TrainRecipe TrainRecipe::Desk(Scheme scheme) {
  TrainRecipe r;
  r.peak_lr = 0.5;
  r.batch_size = 16;
  r.grad_accum = 1;
  if (scheme == Scheme::kCurriculum) {
    // Keeps the 3:5 ratio between the final-phase and first-phase peaks.
    r.phase2_peak_lr = 0.3;
    r.phase2_warmup_ratio = 0.02;
  }
  return r;
}

void validate_recipe(const TrainRecipe& r, Scheme scheme) {
  if (r.schedule_kind != "cosine") {
    throw PreconditionError(
        fmt::format("unsupported schedule '{}'", r.schedule_kind));
  }
  if (!(r.peak_lr > 0.0)) throw PreconditionError("peak_lr must be positive");
  if (!(r.warmup_ratio >= 0.0 && r.warmup_ratio < 1.0)) {
    throw PreconditionError("warmup_ratio must lie in [0, 1)");
  }
  if (r.epochs < 1) throw PreconditionError("epochs must be positive");
  if (r.batch_size == 0) throw PreconditionError("batch_size must be positive");
  if (r.grad_accum < 1) throw PreconditionError("grad_accum must be positive");
  if (r.beams < 1) throw PreconditionError("beams must be positive");
  if (r.hash_bits < 1 || r.hash_bits > 30) {
    throw PreconditionError("hash_bits must lie in [1, 30]");
  }
  const bool has_phase2 =
      r.phase2_peak_lr.has_value() || r.phase2_warmup_ratio.has_value();
  if (scheme == Scheme::kCurriculum) {
    if (!r.phase2_peak_lr || !r.phase2_warmup_ratio) {
      throw PreconditionError("curriculum recipes need phase-2 lr settings");
    }
    if (!(*r.phase2_peak_lr > 0.0)) {
      throw PreconditionError("phase2_peak_lr must be positive");
    }
    if (!(*r.phase2_warmup_ratio >= 0.0 && *r.phase2_warmup_ratio < 1.0)) {
      throw PreconditionError("phase2_warmup_ratio must lie in [0, 1)");
    }
  } else if (has_phase2) {
    throw PreconditionError(fmt::format(
        "phase-2 lr settings are only valid for curriculum (scheme {})",
        to_string(scheme)));
  }
}

std::vector<LrPhase> lr_phases(const TrainRecipe& recipe, Scheme scheme,
                               int epochs) {
  std::vector<LrPhase> phases;
  if (scheme == Scheme::kCurriculum) {
    LrPhase first{1, recipe.peak_lr, recipe.warmup_ratio, {}};
    for (int e = 1; e < epochs; ++e) first.epochs.push_back(e);
    if (!first.epochs.empty()) phases.push_back(std::move(first));
    phases.push_back({2, recipe.phase2_peak_lr.value_or(recipe.peak_lr),
                      recipe.phase2_warmup_ratio.value_or(recipe.warmup_ratio),
                      {epochs}});
  } else {
    LrPhase only{1, recipe.peak_lr, recipe.warmup_ratio, {}};
    for (int e = 1; e <= epochs; ++e) only.epochs.push_back(e);
    phases.push_back(std::move(only));
  }
  return phases;
}

double lr_at(const TrainRecipe& recipe, std::size_t step,
             std::size_t total_steps, int phase) {
  if (total_steps == 0) throw PreconditionError("total_steps must be positive");
  if (step > total_steps) {
    throw PreconditionError(
        fmt::format("step {} beyond total_steps {}", step, total_steps));
  }
  double peak = recipe.peak_lr;
  double ratio = recipe.warmup_ratio;
  if (phase == 2) {
    if (!recipe.phase2_peak_lr || !recipe.phase2_warmup_ratio) {
      throw PreconditionError("recipe has no phase-2 settings");
    }
    peak = *recipe.phase2_peak_lr;
    ratio = *recipe.phase2_warmup_ratio;
  } else if (phase != 1) {
    throw PreconditionError(fmt::format("unknown lr phase {}", phase));
  }
  if (step >= total_steps) return 0.0;

  const double total = static_cast<double>(total_steps);
  auto warmup = static_cast<std::size_t>(std::ceil(ratio * total - 1e-9));
  warmup = std::min(warmup, total_steps);
  if (step < warmup) {
    return peak * static_cast<double>(step) / static_cast<double>(warmup);
  }
  const double span = static_cast<double>(total_steps - warmup);
  const double progress = static_cast<double>(step - warmup) / span;
  return peak * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

json recipe_to_json(const TrainRecipe& r) {
  json j = {{"schedule", r.schedule_kind},
            {"peak_lr", r.peak_lr},
            {"warmup_ratio", r.warmup_ratio},
            {"epochs", r.epochs},
            {"batch_size", r.batch_size},
            {"grad_accum", r.grad_accum},
            {"beams", r.beams},
            {"hash_bits", r.hash_bits},
            {"optimizer", r.optimizer},
            {"precision", r.precision}};
  if (r.phase2_peak_lr) j["phase2_peak_lr"] = *r.phase2_peak_lr;
  if (r.phase2_warmup_ratio) j["phase2_warmup_ratio"] = *r.phase2_warmup_ratio;
  return j;
}

TrainRecipe recipe_from_json(const json& j) {
  TrainRecipe r;
  r.schedule_kind = j.value("schedule", r.schedule_kind);
  r.peak_lr = j.value("peak_lr", r.peak_lr);
  r.warmup_ratio = j.value("warmup_ratio", r.warmup_ratio);
  r.epochs = j.value("epochs", r.epochs);
  r.batch_size = j.value("batch_size", r.batch_size);
  r.grad_accum = j.value("grad_accum", r.grad_accum);
  r.beams = j.value("beams", r.beams);
  r.hash_bits = j.value("hash_bits", r.hash_bits);
  r.optimizer = j.value("optimizer", r.optimizer);
  r.precision = j.value("precision", r.precision);
  if (j.contains("phase2_peak_lr")) {
    r.phase2_peak_lr = j.at("phase2_peak_lr").get<double>();
  }
  if (j.contains("phase2_warmup_ratio")) {
    r.phase2_warmup_ratio = j.at("phase2_warmup_ratio").get<double>();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Features.

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> lowered(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(lower_ascii(t));
  return out;
}

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Bias, unigram and bigram features hashed with FNV-1a into 2^bits slots.
std::vector<std::uint32_t> hashed_features(std::span<const std::string> lower,
                                           int bits) {
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::vector<std::uint32_t> out;
  out.reserve(2 * lower.size() + 1);
  out.push_back(static_cast<std::uint32_t>(fnv1a64("<bias>") & mask));
  for (std::size_t i = 0; i < lower.size(); ++i) {
    out.push_back(static_cast<std::uint32_t>(
        fnv1a64(lower[i], fnv1a64("u\x1f")) & mask));
    if (i + 1 < lower.size()) {
      std::uint64_t h = fnv1a64(lower[i], fnv1a64("b\x1f"));
      h = fnv1a64(" ", h);
      h = fnv1a64(lower[i + 1], h);
      out.push_back(static_cast<std::uint32_t>(h & mask));
    }
  }
  return out;
}

std::string intent_class(const SemanticLabel& label) {
  return label.scenario + "|" + label.action;
}

std::vector<double> class_scores(const ModelState& model,
                                 std::span<const std::uint32_t> features) {
  std::vector<double> scores(model.classes.size(), 0.0);
  for (std::uint32_t f : features) {
    auto it = model.intent_weights.find(f);
    if (it == model.intent_weights.end()) continue;
    for (std::size_t c = 0; c < scores.size(); ++c) scores[c] += it->second[c];
  }
  return scores;
}

std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

// Finds `needle` as a contiguous run inside `hay`.
std::optional<std::size_t> find_run(std::span<const std::string> hay,
                                    std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > hay.size()) return std::nullopt;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) return i;
  }
  return std::nullopt;
}

struct PreparedItem {
  std::vector<std::uint32_t> features;
  std::size_t klass = 0;
  // Lexicon keys (surface) paired with the gold sense.
  std::vector<std::pair<std::string, LexiconSense>> lexicon_hits;
};

PreparedItem prepare(const Utterance& u, Modality modality,
                     const SpeechSimConfig& sim, int bits,
                     const std::unordered_map<std::string, std::size_t>& class_index) {
  PreparedItem item;
  item.klass = class_index.at(intent_class(u.label));
  const std::vector<std::string> clean = lowered(tokenize(u.text));

  if (modality == Modality::kText || !u.has_speech()) {
    item.features = hashed_features(clean, bits);
    for (const Entity& e : u.label.entities) {
      std::string key = join(lowered(tokenize(e.filler)));
      item.lexicon_hits.push_back({std::move(key), {e.etype, e.filler}});
    }
    return item;
  }

  auto aligned =
      simulate_speech_aligned(u.text, recording_sim(sim, *u.speech_ref));
  std::vector<std::string> heard;
  for (const auto& tok : aligned) {
    if (tok) heard.push_back(lower_ascii(*tok));
  }
  item.features = hashed_features(heard, bits);

  // Map each gold filler through the simulated channel so the lexicon learns
  // how it sounds; fillers the channel erased entirely are skipped.
  for (const Entity& e : u.label.entities) {
    std::vector<std::string> filler = lowered(tokenize(e.filler));
    auto at = find_run(clean, filler);
    if (!at) {
      item.lexicon_hits.push_back({join(filler), {e.etype, e.filler}});
      continue;
    }
    std::vector<std::string> surface;
    for (std::size_t i = *at; i < *at + filler.size(); ++i) {
      if (aligned[i]) surface.push_back(lower_ascii(*aligned[i]));
    }
    if (!surface.empty()) {
      item.lexicon_hits.push_back({join(surface), {e.etype, e.filler}});
    }
  }
  return item;
}

}  // namespace

// ---------------------------------------------------------------------------
// Training.

ModelState train(const MixPlan& plan, const Corpus& corpus,
                 const TrainRecipe& recipe, const SpeechSimConfig& sim) {
  validate_recipe(recipe, plan.config.scheme);
  validate_sim(sim);
  const PlanTotals totals = plan_totals(plan);
  if (plan.epochs.empty() || totals.text_total + totals.speech_total == 0) {
    throw PreconditionError("empty plan");
  }

  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const Utterance& u : corpus.records) by_id.emplace(u.id, &u);
  auto resolve = [&](const std::string& id) -> const Utterance& {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw DataError(fmt::format("plan item '{}' not found in corpus", id));
    }
    return *it->second;
  };

  ModelState model;
  model.hash_bits = recipe.hash_bits;

  // Classes and prior over every exposure in the plan.
  std::map<std::string, std::size_t> class_counts;
  for (const EpochPlan& ep : plan.epochs) {
    for (const auto* ids : {&ep.text_item_ids, &ep.speech_item_ids}) {
      for (const std::string& id : *ids) {
        ++class_counts[intent_class(resolve(id).label)];
      }
    }
  }
  std::unordered_map<std::string, std::size_t> class_index;
  std::size_t prior_count = 0;
  for (const auto& [name, count] : class_counts) {
    class_index.emplace(name, model.classes.size());
    model.classes.push_back(name);
    if (count > prior_count) {
      prior_count = count;
      model.prior_intent = name;
    }
  }
  const std::size_t num_classes = model.classes.size();

  // Prepared items are cached; a recording's simulation is fixed.
  std::unordered_map<std::string, PreparedItem> text_cache;
  std::unordered_map<std::string, PreparedItem> speech_cache;
  auto prepared = [&](const ItemRef& ref) -> const PreparedItem& {
    auto& cache = ref.modality == Modality::kText ? text_cache : speech_cache;
    auto it = cache.find(ref.id);
    if (it != cache.end()) return it->second;
    return cache
        .emplace(ref.id, prepare(resolve(ref.id), ref.modality, sim,
                                 recipe.hash_bits, class_index))
        .first->second;
  };

  const std::uint64_t batch_seed = derive_seed(plan.config.seed, "batches");
  const int E = static_cast<int>(plan.epochs.size());
  std::vector<std::vector<Batch>> epoch_batch_lists;
  epoch_batch_lists.reserve(plan.epochs.size());
  for (int e = 1; e <= E; ++e) {
    epoch_batch_lists.push_back(
        epoch_batches(plan, e, recipe.batch_size, batch_seed));
  }

  const std::vector<LrPhase> phases =
      lr_phases(recipe, plan.config.scheme, E);
  std::vector<int> phase_of_epoch(static_cast<std::size_t>(E) + 1, 1);
  std::vector<std::size_t> phase_steps(3, 0);
  for (const LrPhase& ph : phases) {
    for (int e : ph.epochs) {
      phase_of_epoch[static_cast<std::size_t>(e)] = ph.phase;
      phase_steps[static_cast<std::size_t>(ph.phase)] +=
          epoch_batch_lists[static_cast<std::size_t>(e - 1)].size();
    }
  }
  std::vector<std::size_t> phase_cursor(3, 0);

  std::unordered_map<std::uint32_t, std::vector<double>> grad;
  std::vector<double> probs(num_classes);
  for (int e = 1; e <= E; ++e) {
    const int phase = phase_of_epoch[static_cast<std::size_t>(e)];
    EpochLog log;
    log.epoch = e;
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (const Batch& batch : epoch_batch_lists[static_cast<std::size_t>(e - 1)]) {
      const std::size_t step = phase_cursor[static_cast<std::size_t>(phase)]++;
      const double lr = lr_at(recipe, step,
                              phase_steps[static_cast<std::size_t>(phase)], phase);
      grad.clear();
      for (const ItemRef& ref : batch) {
        const PreparedItem& item = prepared(ref);
        if (ref.modality == Modality::kText) {
          ++log.text_items;
        } else {
          ++log.speech_items;
        }
        for (const auto& [key, sense] : item.lexicon_hits) {
          if (key.empty()) continue;
          ++model.filler_lexicon[key][sense];
          model.max_filler_tokens = std::max(
              model.max_filler_tokens,
              static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1);
        }

        std::vector<double> scores = class_scores(model, item.features);
        const double top = *std::max_element(scores.begin(), scores.end());
        double z = 0.0;
        for (std::size_t c = 0; c < num_classes; ++c) {
          probs[c] = std::exp(scores[c] - top);
          z += probs[c];
        }
        for (double& p : probs) p /= z;
        loss_sum += -std::log(std::max(probs[item.klass], 1e-300));
        if (argmax(scores) == item.klass) ++correct;

        for (std::uint32_t f : item.features) {
          auto& g = grad[f];
          if (g.empty()) g.assign(num_classes, 0.0);
          for (std::size_t c = 0; c < num_classes; ++c) {
            g[c] += probs[c] - (c == item.klass ? 1.0 : 0.0);
          }
        }
      }
      const double scale = lr / static_cast<double>(batch.size());
      if (scale != 0.0) {
        for (const auto& [f, g] : grad) {
          auto& w = model.intent_weights[f];
          if (w.empty()) w.assign(num_classes, 0.0);
          for (std::size_t c = 0; c < num_classes; ++c) w[c] -= scale * g[c];
        }
      }
      ++log.batches;
    }
    const std::size_t seen = log.text_items + log.speech_items;
    if (seen > 0) {
      log.mean_loss = loss_sum / static_cast<double>(seen);
      log.train_accuracy =
          static_cast<double>(correct) / static_cast<double>(seen);
    }
    model.train_log.push_back(log);
  }
  model.trained = true;
  return model;
}

// ---------------------------------------------------------------------------
// Prediction.

SemanticLabel predict(const ModelState& model,
                      std::span<const std::string> tokens) {
  if (!model.trained || model.classes.empty()) {
    return SemanticLabel::Unparseable();
  }
  const std::vector<std::string> lower = lowered(tokens);
  std::string klass = model.prior_intent;
  if (!lower.empty()) {
    klass = model.classes[argmax(
        class_scores(model, hashed_features(lower, model.hash_bits)))];
  }
  SemanticLabel label;
  const std::size_t bar = klass.find('|');
  label.scenario = klass.substr(0, bar);
  label.action = klass.substr(bar + 1);

  std::size_t i = 0;
  while (i < lower.size()) {
    bool matched = false;
    const std::size_t longest =
        std::min(model.max_filler_tokens, lower.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      auto it = model.filler_lexicon.find(
          join(std::span(lower).subspan(i, len)));
      if (it == model.filler_lexicon.end()) continue;
      // Most frequent sense; std::map order breaks ties lexicographically.
      const LexiconSense* best = nullptr;
      std::size_t best_count = 0;
      for (const auto& [sense, count] : it->second) {
        if (count > best_count) {
          best = &sense;
          best_count = count;
        }
      }
      label.entities.push_back({best->first, best->second});
      i += len;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  return label;
}

std::vector<std::string> model_input(const Utterance& u, InputMode mode,
                                     const SpeechSimConfig& sim) {
  if (mode == InputMode::kSpeech && u.has_speech()) {
    return simulate_speech(u.text, recording_sim(sim, *u.speech_ref));
  }
  return tokenize(u.text);
}

// ---------------------------------------------------------------------------
// Serialization.

json model_to_json(const ModelState& model) {
  std::vector<std::uint32_t> keys;
  keys.reserve(model.intent_weights.size());
  for (const auto& [f, w] : model.intent_weights) keys.push_back(f);
  std::sort(keys.begin(), keys.end());
  json weights = json::array();
  for (std::uint32_t f : keys) {
    weights.push_back({f, model.intent_weights.at(f)});
  }
  json lexicon = json::array();
  for (const auto& [surface, senses] : model.filler_lexicon) {
    for (const auto& [sense, count] : senses) {
      lexicon.push_back({{"surface", surface},
                         {"type", sense.first},
                         {"filler", sense.second},
                         {"count", count}});
    }
  }
  json log = json::array();
  for (const EpochLog& l : model.train_log) {
    log.push_back({{"epoch", l.epoch},
                   {"text_items", l.text_items},
                   {"speech_items", l.speech_items},
                   {"batches", l.batches},
                   {"mean_loss", l.mean_loss},
                   {"train_accuracy", l.train_accuracy}});
  }
  return {{"model_version", 1},
          {"trained", model.trained},
          {"hash_bits", model.hash_bits},
          {"classes", model.classes},
          {"prior_intent", model.prior_intent},
          {"max_filler_tokens", model.max_filler_tokens},
          {"intent_weights", std::move(weights)},
          {"filler_lexicon", std::move(lexicon)},
          {"train_log", std::move(log)}};
}

ModelState model_from_json(const json& j) {
  try {
    if (j.at("model_version").get<int>() != 1) {
      throw DataError("unsupported model_version");
    }
    ModelState m;
    m.trained = j.at("trained").get<bool>();
    m.hash_bits = j.at("hash_bits").get<int>();
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.prior_intent = j.at("prior_intent").get<std::string>();
    m.max_filler_tokens = j.at("max_filler_tokens").get<std::size_t>();
    for (const json& w : j.at("intent_weights")) {
      auto values = w.at(1).get<std::vector<double>>();
      if (values.size() != m.classes.size()) {
        throw DataError("weight row size does not match class count");
      }
      m.intent_weights.emplace(w.at(0).get<std::uint32_t>(), std::move(values));
    }
    for (const json& l : j.at("filler_lexicon")) {
      m.filler_lexicon[l.at("surface").get<std::string>()]
                      [{l.at("type").get<std::string>(),
                        l.at("filler").get<std::string>()}] =
          l.at("count").get<std::size_t>();
    }
    for (const json& l : j.at("train_log")) {
      m.train_log.push_back({l.at("epoch").get<int>(),
                             l.at("text_items").get<std::size_t>(),
                             l.at("speech_items").get<std::size_t>(),
                             l.at("batches").get<std::size_t>(),
                             l.at("mean_loss").get<double>(),
                             l.at("train_accuracy").get<double>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed model: {}", e.what()));
  }
}

void write_model(const ModelState& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << model_to_json(model).dump() << '\n';
  if (!out) throw DataError(fmt::format("write failed for '{}'", path.string()));
}

ModelState read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  try {
    return model_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed model '{}': {}", path.string(),
                                e.what()));
  }
}

// ---------------------------------------------------------------------------
// Manifests.

json export_manifest(const MixPlan& plan, const TrainRecipe& recipe,
                     std::string_view corpus_ref) {
  const Scheme scheme = plan.config.scheme;
  validate_recipe(recipe, scheme);
  json phases = json::array();
  for (const LrPhase& ph : lr_phases(recipe, scheme, plan.config.epochs)) {
    phases.push_back({{"phase", ph.phase},
                      {"schedule", recipe.schedule_kind},
                      {"peak_lr", ph.peak_lr},
                      {"warmup_ratio", ph.warmup_ratio},
                      {"epochs", ph.epochs}});
  }
  json freeze = json::array();
  if (scheme == Scheme::kTextOnly) freeze = {"audio_encoder", "adapter"};
  json epochs = json::array();
  for (const EpochPlan& ep : plan.epochs) {
    epochs.push_back({{"epoch", ep.epoch},
                      {"text", ep.text_item_ids},
                      {"speech", ep.speech_item_ids}});
  }
  return {{"manifest_version", 1},
          {"corpus", corpus_ref},
          {"scheme", to_string(scheme)},
          {"speech_proportion", plan.config.p},
          {"speech_budget", plan.budget},
          {"seed", plan.config.seed},
          {"epochs", plan.config.epochs},
          {"optimizer", recipe.optimizer},
          {"precision", recipe.precision},
          {"per_device_batch_size", recipe.batch_size},
          {"grad_accum", recipe.grad_accum},
          {"freeze", std::move(freeze)},
          {"lr_phases", std::move(phases)},
          {"decode", {{"strategy", "beam_search"}, {"beams", recipe.beams}}},
          {"plan", {{"epochs", std::move(epochs)}}}};
}

void write_manifest(const json& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << manifest.dump(2) << '\n';
  if (!out) throw DataError(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace slumix
