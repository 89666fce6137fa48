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

#include "slumix/experiment.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_set>

#include <fmt/format.h>

#include "slumix/error.h"
#include "slumix/labelcodec.h"
#include "slumix/metrics.h"
#include "slumix/random.h"
#include "slumix/report.h"

namespace slumix {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Cross-lingual training sets.

std::string_view to_string(CrossLingualMode mode) {
  switch (mode) {
    case CrossLingualMode::kZeroShot: return "zero_shot";
    case CrossLingualMode::kT: return "T";
    case CrossLingualMode::kTS: return "T_S";
    case CrossLingualMode::kTM: return "T_M";
    case CrossLingualMode::kTSM: return "T_S_M";
    case CrossLingualMode::kNoSourceT: return "no_source_T";
    case CrossLingualMode::kNoSourceTS: return "no_source_T_S";
    case CrossLingualMode::kNoSourceTM: return "no_source_T_M";
    case CrossLingualMode::kNoSourceTSM: return "no_source_T_S_M";
  }
  return "zero_shot";
}

CrossLingualMode parse_crosslingual_mode(std::string_view name) {
  for (auto mode :
       {CrossLingualMode::kZeroShot, CrossLingualMode::kT,
        CrossLingualMode::kTS, CrossLingualMode::kTM, CrossLingualMode::kTSM,
        CrossLingualMode::kNoSourceT, CrossLingualMode::kNoSourceTS,
        CrossLingualMode::kNoSourceTM, CrossLingualMode::kNoSourceTSM}) {
    if (to_string(mode) == name) return mode;
  }
  throw PreconditionError(fmt::format("unknown cross-lingual mode '{}'", name));
}

namespace {

struct ModeTraits {
  bool source = true;
  bool target_text = false;
  bool target_speech = false;
  bool massive = false;
};

ModeTraits traits(CrossLingualMode mode) {
  using M = CrossLingualMode;
  switch (mode) {
    case M::kZeroShot: return {true, false, false, false};
    case M::kT: return {true, true, false, false};
    case M::kTS: return {true, true, true, false};
    case M::kTM: return {true, true, false, true};
    case M::kTSM: return {true, true, true, true};
    case M::kNoSourceT: return {false, true, false, false};
    case M::kNoSourceTS: return {false, true, true, false};
    case M::kNoSourceTM: return {false, true, false, true};
    case M::kNoSourceTSM: return {false, true, true, true};
  }
  return {};
}

Utterance prefixed(const Utterance& u, std::string_view prefix,
                   bool keep_speech) {
  Utterance out = u;
  out.id = fmt::format("{}{}", prefix, u.id);
  out.text_id = fmt::format("{}{}", prefix, u.text_id);
  if (!keep_speech) out.speech_ref.reset();
  return out;
}

}  // namespace

CrossLingualCorpus make_crosslingual_corpus(
    const Corpus& source, std::span<const Corpus> targets,
    std::span<const Corpus> massive_text, CrossLingualMode mode,
    std::size_t fewshot_pairs, std::uint64_t seed) {
  const ModeTraits t = traits(mode);
  std::set<std::string> langs{source.lang};
  for (const Corpus& target : targets) {
    if (target.lang == kMultilingual || !langs.insert(target.lang).second) {
      throw DataError(fmt::format(
          "target language '{}' repeats or matches the source", target.lang));
    }
  }

  CrossLingualCorpus out;
  out.corpus.name = "crosslingual";
  out.corpus.lang = std::string(kMultilingual);

  if (t.source) {
    const std::string prefix = source.lang + ":";
    for (const Utterance& u : source.records) {
      if (u.split != Split::kTrain) continue;
      Utterance p = prefixed(u, prefix, true);
      if (p.has_speech()) out.source_speech_ids.push_back(p.id);
      out.corpus.records.push_back(std::move(p));
    }
  }
  if (!t.target_text) return out;

  for (const Corpus& target : targets) {
    const std::string prefix = target.lang + ":";
    TrainingPool pool = training_pool(target);
    if (pool.text_ids.size() < fewshot_pairs) {
      throw DataError(fmt::format(
          "target '{}' has {} training transcripts, {} few-shot pairs needed",
          target.lang, pool.text_ids.size(), fewshot_pairs));
    }
    std::vector<std::string> perm = nested_permutation(
        pool.text_ids, derive_seed(seed, "fewshot:" + target.lang));
    std::unordered_set<std::string_view> chosen(
        perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(fewshot_pairs));
    // Keep the permutation order so subsets nest across budgets.
    std::unordered_map<std::string_view, const Utterance*> by_id;
    for (const Utterance& u : target.records) by_id.emplace(u.id, &u);
    for (std::size_t i = 0; i < fewshot_pairs; ++i) {
      const Utterance& u = *by_id.at(perm[i]);
      if (t.target_speech && !u.has_speech()) {
        throw DataError(fmt::format(
            "mode {} needs speech for few-shot record '{}'", to_string(mode),
            u.id));
      }
      Utterance p = prefixed(u, prefix, t.target_speech);
      if (t.target_speech) out.pinned_speech_ids.push_back(p.id);
      out.corpus.records.push_back(std::move(p));
    }

    if (t.massive) {
      auto it = std::find_if(
          massive_text.begin(), massive_text.end(),
          [&](const Corpus& c) { return c.lang == target.lang; });
      if (it == massive_text.end()) {
        throw DataError(fmt::format(
            "mode {} needs target text-only data for '{}'", to_string(mode),
            target.lang));
      }
      const std::string mprefix = target.lang + ":m:";
      for (const Utterance& u : it->records) {
        if (u.split != Split::kTrain) continue;
        out.corpus.records.push_back(prefixed(u, mprefix, false));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifests.

const std::vector<double>& default_speech_levels() {
  static const std::vector<double> kLevels = {0.0,  0.02, 0.05, 0.10,
                                              0.25, 0.50, 1.0};
  return kLevels;
}

ExperimentManifest manifest_from_json(const json& j,
                                      const fs::path& base_dir) {
  try {
    if (j.value("manifest_version", 1) != 1) {
      throw DataError("unsupported manifest_version");
    }
    ExperimentManifest m;
    for (const auto& [name, spec] : j.at("corpora").items()) {
      CorpusSpec c;
      fs::path p = spec.at("path").get<std::string>();
      c.path = p.is_absolute() ? p : base_dir / p;
      c.profile = parse_profile(spec.value("profile", "canonical"));
      c.options.name = name;
      c.options.default_lang = spec.value("lang", "en");
      c.options.default_split = parse_split(spec.value("split", "train"));
      c.options.recordings =
          parse_recording_mode(spec.value("recordings", "all"));
      m.corpora.emplace(name, std::move(c));
    }
    for (const json& s : j.at("schemes")) {
      m.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    m.speech_levels = j.contains("speech_levels")
                          ? j.at("speech_levels").get<std::vector<double>>()
                          : default_speech_levels();
    for (double p : m.speech_levels) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw DataError(fmt::format("speech level {} outside [0, 1]", p));
      }
    }
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    m.epochs = j.value("epochs", 3);
    if (j.contains("recipe")) {
      // Missing keys keep their desk values.
      json r = recipe_to_json(m.recipe);
      r.merge_patch(j.at("recipe"));
      m.recipe = recipe_from_json(r);
    }
    if (j.contains("sim")) {
      const json& s = j.at("sim");
      m.sim.substitution_rate =
          s.value("substitution_rate", m.sim.substitution_rate);
      m.sim.deletion_rate = s.value("deletion_rate", m.sim.deletion_rate);
      m.sim.seed = s.value("seed", m.sim.seed);
    }
    std::string eval = j.value("eval_input", "speech");
    if (eval == "speech") {
      m.eval_input = InputMode::kSpeech;
    } else if (eval == "text") {
      m.eval_input = InputMode::kText;
    } else {
      throw DataError(fmt::format("eval_input must be speech or text, got '{}'",
                                  eval));
    }
    m.workers = j.value("workers", std::size_t{1});
    if (j.contains("crosslingual")) {
      const json& x = j.at("crosslingual");
      CrossLingualSpec c;
      c.source = x.at("source").get<std::string>();
      c.targets = x.at("targets").get<std::vector<std::string>>();
      if (x.contains("massive")) {
        c.massive = x.at("massive").get<std::map<std::string, std::string>>();
      }
      c.mode = parse_crosslingual_mode(x.at("mode").get<std::string>());
      c.fewshot_pairs = x.value("fewshot_pairs", std::size_t{115});
      c.fewshot_seed = x.value("fewshot_seed", std::uint64_t{0});
      auto known = [&](const std::string& name) {
        if (!m.corpora.count(name)) {
          throw DataError(fmt::format("unknown corpus '{}'", name));
        }
      };
      known(c.source);
      for (const auto& tname : c.targets) known(tname);
      for (const auto& [tname, mname] : c.massive) known(mname);
      m.crosslingual = std::move(c);
    }
    if (m.schemes.empty() || m.speech_levels.empty() || m.seeds.empty()) {
      throw DataError("manifest needs schemes, speech_levels and seeds");
    }
    std::set<std::uint64_t> unique(m.seeds.begin(), m.seeds.end());
    if (unique.size() != m.seeds.size()) throw DataError("duplicate seeds");
    if (m.epochs < 1) throw DataError("epochs must be positive");
    validate_sim(m.sim);
    for (Scheme s : m.schemes) validate_recipe(recipe_for(m, s), s);
    return m;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed manifest: {}", e.what()));
  } catch (const PreconditionError& e) {
    throw DataError(fmt::format("invalid manifest: {}", e.what()));
  }
}

json manifest_to_json(const ExperimentManifest& m) {
  json corpora = json::object();
  for (const auto& [name, c] : m.corpora) {
    corpora[name] = {
        {"path", c.path.string()},
        {"profile", to_string(c.profile)},
        {"lang", c.options.default_lang},
        {"split", to_string(c.options.default_split)},
        {"recordings",
         c.options.recordings == RecordingMode::kAll ? "all" : "one"}};
  }
  json schemes = json::array();
  for (Scheme s : m.schemes) schemes.push_back(to_string(s));
  json j = {{"manifest_version", 1},
            {"corpora", std::move(corpora)},
            {"schemes", std::move(schemes)},
            {"speech_levels", m.speech_levels},
            {"seeds", m.seeds},
            {"epochs", m.epochs},
            {"recipe", recipe_to_json(m.recipe)},
            {"sim",
             {{"substitution_rate", m.sim.substitution_rate},
              {"deletion_rate", m.sim.deletion_rate},
              {"seed", m.sim.seed}}},
            {"eval_input", m.eval_input == InputMode::kSpeech ? "speech" : "text"},
            {"workers", m.workers}};
  if (m.crosslingual) {
    const CrossLingualSpec& c = *m.crosslingual;
    j["crosslingual"] = {{"source", c.source},
                         {"targets", c.targets},
                         {"massive", c.massive},
                         {"mode", to_string(c.mode)},
                         {"fewshot_pairs", c.fewshot_pairs},
                         {"fewshot_seed", c.fewshot_seed}};
  }
  return j;
}

ExperimentManifest read_experiment_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed manifest '{}': {}", path.string(),
                                e.what()));
  }
  return manifest_from_json(j, path.parent_path());
}

std::uint64_t manifest_hash(const ExperimentManifest& m) {
  json j = manifest_to_json(m);
  j.erase("workers");  // scheduling only; results do not depend on it
  return fnv1a64(j.dump());
}

TrainRecipe recipe_for(const ExperimentManifest& m, Scheme scheme) {
  TrainRecipe r = m.recipe;
  r.epochs = m.epochs;
  if (scheme == Scheme::kCurriculum) {
    TrainRecipe desk = TrainRecipe::Desk(Scheme::kCurriculum);
    if (!r.phase2_peak_lr) r.phase2_peak_lr = desk.phase2_peak_lr;
    if (!r.phase2_warmup_ratio) r.phase2_warmup_ratio = desk.phase2_warmup_ratio;
  } else {
    r.phase2_peak_lr.reset();
    r.phase2_warmup_ratio.reset();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Grid.

std::vector<CellSpec> grid_cells(const ExperimentManifest& m) {
  std::vector<std::string> names;
  if (m.crosslingual) {
    names.push_back("xl");
  } else {
    for (const auto& [name, spec] : m.corpora) names.push_back(name);
  }
  std::vector<CellSpec> cells;
  for (const std::string& name : names) {
    for (Scheme s : m.schemes) {
      for (double level : m.speech_levels) {
        for (std::uint64_t seed : m.seeds) {
          cells.push_back({name, s, level, seed});
        }
      }
    }
  }
  return cells;
}

namespace {

std::uint64_t cell_hash(const ExperimentManifest& m, const CellSpec& c) {
  return fnv1a64(fmt::format("{:016x}|{}|{}|{:g}|{}", manifest_hash(m),
                             c.corpus, to_string(c.scheme), c.level, c.seed));
}

}  // namespace

std::string cell_id(const ExperimentManifest& m, const CellSpec& c) {
  return fmt::format("{}-{}-p{:g}-s{}-{:08x}", c.corpus, to_string(c.scheme),
                     c.level, c.seed, cell_hash(m, c) & 0xffffffffULL);
}

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out << j.dump(2) << '\n';
  if (!out) throw DataError(fmt::format("write failed for '{}'", path.string()));
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("malformed JSON '{}': {}", path.string(),
                                e.what()));
  }
}

struct LoadedData {
  std::map<std::string, Corpus> corpora;
  std::optional<CrossLingualCorpus> crosslingual;
};

LoadedData load_data(const ExperimentManifest& m) {
  LoadedData d;
  for (const auto& [name, spec] : m.corpora) {
    d.corpora.emplace(name, load_corpus(spec.path, spec.profile, spec.options));
  }
  if (m.crosslingual) {
    const CrossLingualSpec& x = *m.crosslingual;
    std::vector<Corpus> targets;
    std::vector<Corpus> massive;
    for (const std::string& t : x.targets) {
      targets.push_back(d.corpora.at(t));
      if (auto it = x.massive.find(t); it != x.massive.end()) {
        massive.push_back(d.corpora.at(it->second));
      }
    }
    d.crosslingual =
        make_crosslingual_corpus(d.corpora.at(x.source), targets, massive,
                                 x.mode, x.fewshot_pairs, x.fewshot_seed);
  }
  return d;
}

// Predicts every test utterance of `target` and writes preds/report files.
json evaluate_target(const ModelState& model, const Corpus& target,
                     const ExperimentManifest& m, const fs::path& dir,
                     const std::string& suffix, const std::string& label) {
  std::vector<PredictionLine> lines;
  for (const Utterance& u : target.records) {
    if (u.split != Split::kTest) continue;
    SemanticLabel pred = predict(model, model_input(u, m.eval_input, m.sim));
    PredictionLine line;
    line.utt_id = u.id;
    line.gold = u.label;
    if (!pred.unparseable && !label_problem(normalize_label(pred))) {
      line.pred_raw = serialize_label(pred);
    }
    lines.push_back(std::move(line));
  }
  if (lines.empty()) {
    throw DataError(fmt::format("corpus '{}' has no test records", target.name));
  }
  const std::string preds_name = "preds" + suffix + ".jsonl";
  const std::string report_name = "report" + suffix + ".json";
  {
    std::ofstream out(dir / preds_name);
    if (!out) throw DataError("cannot write predictions");
    write_predictions(lines, out);
  }
  MetricReport report = evaluate(join_predictions(target, lines));
  write_json(dir / report_name, report_to_json(report));
  return {{"corpus", label}, {"preds", preds_name}, {"report", report_name}};
}

void run_cell(const ExperimentManifest& m, const LoadedData& data,
              const CellSpec& cell, const fs::path& dir) {
  fs::create_directories(dir);
  fs::remove(dir / "cell.json");
  const TrainRecipe recipe = recipe_for(m, cell.scheme);
  SchedulerConfig cfg{cell.scheme, cell.level, m.epochs, cell.seed, 0};
  const std::uint64_t perm_seed = derive_seed(cell.seed, "speech");

  json evaluations = json::array();
  std::string mode = "mono";
  if (data.crosslingual) {
    const CrossLingualCorpus& xl = *data.crosslingual;
    std::vector<std::string> ordering = xl.pinned_speech_ids;
    for (std::string& id : nested_permutation(xl.source_speech_ids, perm_seed)) {
      ordering.push_back(std::move(id));
    }
    cfg.pinned = xl.pinned_speech_ids.size();
    if (cell.scheme == Scheme::kTextOnly && cfg.pinned > 0) {
      // No source speech, but the target pairs keep their recordings.
      cfg.scheme = Scheme::kDirect;
      cfg.p = 0.0;
    }
    TrainingPool pool = training_pool(xl.corpus);
    MixPlan plan = build_plan(cfg, pool.text_ids, std::move(ordering));
    write_plan(plan, dir / "plan.json");
    ModelState model = train(plan, xl.corpus, recipe, m.sim);
    write_model(model, dir / "model.json");
    for (const std::string& t : m.crosslingual->targets) {
      evaluations.push_back(evaluate_target(model, data.corpora.at(t), m, dir,
                                            "." + t, t));
    }
    mode = std::string(to_string(m.crosslingual->mode));
  } else {
    const Corpus& corpus = data.corpora.at(cell.corpus);
    TrainingPool pool = training_pool(corpus);
    MixPlan plan = build_plan(cfg, pool.text_ids,
                              nested_permutation(pool.speech_ids, perm_seed));
    write_plan(plan, dir / "plan.json");
    ModelState model = train(plan, corpus, recipe, m.sim);
    write_model(model, dir / "model.json");
    evaluations.push_back(evaluate_target(model, corpus, m, dir, "", cell.corpus));
  }
  write_json(dir / "cell.json",
             {{"cell_hash", fmt::format("{:016x}", cell_hash(m, cell))},
              {"corpus", cell.corpus},
              {"mode", mode},
              {"scheme", to_string(cell.scheme)},
              {"level", cell.level},
              {"seed", cell.seed},
              {"evaluations", std::move(evaluations)}});
}

bool cell_complete(const ExperimentManifest& m, const CellSpec& cell,
                   const fs::path& dir) {
  const fs::path marker = dir / "cell.json";
  if (!fs::exists(marker)) return false;
  try {
    json j = read_json(marker);
    return j.at("cell_hash").get<std::string>() ==
           fmt::format("{:016x}", cell_hash(m, cell));
  } catch (const std::exception&) {
    return false;
  }
}

ReportStyle default_style(const ExperimentManifest& m) {
  if (!m.crosslingual) return ReportStyle::kMonolingual;
  return m.crosslingual->mode == CrossLingualMode::kZeroShot
             ? ReportStyle::kZeroShotRelative
             : ReportStyle::kFewShot;
}

}  // namespace

GridSummary run_grid(const ExperimentManifest& m, const fs::path& out_dir,
                     const GridLogger& log) {
  const std::vector<CellSpec> cells = grid_cells(m);
  const fs::path runs = out_dir / "runs";
  fs::create_directories(runs);

  GridSummary summary;
  summary.total = cells.size();
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cell_complete(m, cells[i], runs / cell_id(m, cells[i]))) {
      ++summary.skipped;
      if (log) log({{"event", "cell_skipped"}, {"cell", cell_id(m, cells[i])}});
    } else {
      todo.push_back(i);
    }
  }

  std::optional<LoadedData> data;
  if (!todo.empty()) data = load_data(m);

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      const CellSpec& cell = cells[todo[k]];
      const std::string id = cell_id(m, cell);
      std::string error;
      try {
        run_cell(m, *data, cell, runs / id);
      } catch (const std::exception& e) {
        error = e.what();
      }
      std::lock_guard<std::mutex> lock(mu);
      if (error.empty()) {
        ++summary.ran;
        if (log) log({{"event", "cell_done"}, {"cell", id}});
      } else {
        ++summary.failed;
        summary.failures.push_back(id + ": " + error);
        if (log) log({{"event", "cell_failed"}, {"cell", id}, {"error", error}});
      }
    }
  };
  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min(m.workers, todo.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  std::sort(summary.failures.begin(), summary.failures.end());

  std::vector<AggregateRow> rows = aggregate_runs(out_dir);
  write_aggregate_csv(rows, out_dir / "aggregate.csv");
  try {
    write_report(render_report(rows, default_style(m)), out_dir / "report");
  } catch (const PreconditionError& e) {
    if (log) log({{"event", "report_skipped"}, {"reason", e.what()}});
  }
  return summary;
}

std::vector<AggregateRow> aggregate_runs(const fs::path& out_dir) {
  using Key = std::tuple<std::string, std::string, std::string, double>;
  // (corpus, mode, scheme, level) -> seed -> report
  std::map<Key, std::map<std::uint64_t, MetricReport>> groups;
  const fs::path runs = out_dir / "runs";
  if (!fs::exists(runs)) return {};
  for (const auto& entry : fs::directory_iterator(runs)) {
    const fs::path marker = entry.path() / "cell.json";
    if (!entry.is_directory() || !fs::exists(marker)) continue;
    json cell = read_json(marker);
    try {
      for (const json& ev : cell.at("evaluations")) {
        Key key{ev.at("corpus").get<std::string>(),
                cell.at("mode").get<std::string>(),
                cell.at("scheme").get<std::string>(),
                cell.at("level").get<double>()};
        groups[key][cell.at("seed").get<std::uint64_t>()] = report_from_json(
            read_json(entry.path() / ev.at("report").get<std::string>()));
      }
    } catch (const json::exception& e) {
      throw DataError(fmt::format("malformed cell '{}': {}",
                                  marker.string(), e.what()));
    }
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, by_seed] : groups) {
    for (const std::string& metric : headline_metrics()) {
      std::vector<double> values;
      for (const auto& [seed, report] : by_seed) {
        values.push_back(metric_value(report, metric));
      }
      AggregateRow row;
      std::tie(row.corpus, row.mode, row.scheme, row.speech_level) = key;
      row.cell = summarize(values, metric);
      rows.push_back(std::move(row));
    }
  }
  mark_significance(rows);
  sort_rows(rows);
  return rows;
}

}  // namespace slumix
