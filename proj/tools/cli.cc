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

#include "cli.h"

#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "slumix/corpus.h"
#include "slumix/error.h"
#include "slumix/experiment.h"
#include "slumix/labelcodec.h"
#include "slumix/metrics.h"
#include "slumix/random.h"
#include "slumix/report.h"
#include "slumix/scheduler.h"
#include "slumix/stats.h"
#include "slumix/synthetic.h"
#include "slumix/trainer.h"

namespace slumix::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Either human-readable lines or one JSON object per line.
class Log {
 public:
  Log(std::ostream& out, const bool& as_json) : out_(out), json_(as_json) {}

  void event(const json& j, const std::string& text) const {
    if (json_) {
      out_ << j.dump() << '\n';
    } else {
      out_ << text << '\n';
    }
  }

  bool json_mode() const { return json_; }

 private:
  std::ostream& out_;
  const bool& json_;
};

struct CorpusArgs {
  std::string path;
  std::string profile = "canonical";
  std::string lang = "en";
  std::string split = "train";
  std::string recordings = "all";
  std::string name;

  void add(CLI::App* cmd, const std::string& flag, const std::string& help) {
    cmd->add_option(flag, path, help)->required();
    cmd->add_option("--profile", profile, "canonical, slurp or massive")
        ->check(CLI::IsMember({"canonical", "slurp", "massive"}))
        ->capture_default_str();
    cmd->add_option("--lang", lang, "language for records without one")
        ->capture_default_str();
    cmd->add_option("--split", split, "split for records without one")
        ->check(CLI::IsMember({"train", "dev", "test"}))
        ->capture_default_str();
    cmd->add_option("--recordings", recordings,
                    "SLURP recordings per transcript: all or one")
        ->check(CLI::IsMember({"all", "one"}))
        ->capture_default_str();
    cmd->add_option("--name", name, "corpus name (default: file stem)");
  }

  Corpus load() const {
    LoadOptions opts;
    opts.name = name;
    opts.default_lang = lang;
    opts.default_split = parse_split(split);
    opts.recordings = parse_recording_mode(recordings);
    return load_corpus(path, parse_profile(profile), opts);
  }
};

json stats_json(const CorpusStats& s) {
  json splits = json::object();
  for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
    const SplitCounts& c = s[split];
    splits[std::string(to_string(split))] = {{"text", c.text},
                                             {"speech", c.speech}};
  }
  return {{"records", s.records}, {"splits", splits}};
}

std::string stats_text(const CorpusStats& s) {
  std::string out = fmt::format("{} records", s.records);
  for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
    const SplitCounts& c = s[split];
    out += fmt::format("; {}: {} text, {} speech", to_string(split), c.text,
                       c.speech);
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path));
  return out;
}

TrainRecipe named_recipe(const std::string& name, Scheme scheme) {
  if (name == "desk") return TrainRecipe::Desk(scheme);
  if (name == "full") return TrainRecipe::Full(scheme);
  throw PreconditionError(
      fmt::format("recipe must be desk or full, got '{}'", name));
}

InputMode parse_input(const std::string& name) {
  if (name == "speech") return InputMode::kSpeech;
  if (name == "text") return InputMode::kText;
  throw PreconditionError(
      fmt::format("input must be speech or text, got '{}'", name));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Text/speech mixing experiments for spoken language "
               "understanding"};
  app.name("slumix");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON-lines log")
      ->configurable(false);
  app.fallthrough();
  Log log(out, as_json);
  std::function<int()> action;

  // ingest
  CorpusArgs ingest_in;
  std::string ingest_out;
  {
    auto* cmd = app.add_subcommand("ingest", "convert a corpus to canonical JSONL");
    ingest_in.add(cmd, "--in", "source corpus file");
    cmd->add_option("--out", ingest_out, "canonical JSONL output")->required();
    cmd->callback([&] {
      action = [&] {
        Corpus c = ingest_in.load();
        write_corpus(c, fs::path(ingest_out));
        CorpusStats s = corpus_stats(c);
        json j = stats_json(s);
        j["event"] = "ingested";
        j["out"] = ingest_out;
        log.event(j, fmt::format("wrote {}: {}", ingest_out, stats_text(s)));
        return kExitOk;
      };
    });
  }

  // synth
  SyntheticOptions synth;
  std::string synth_out;
  {
    auto* cmd = app.add_subcommand("synth", "write the synthetic corpus");
    cmd->add_option("--out", synth_out, "canonical JSONL output")->required();
    cmd->add_option("--lang", synth.lang)->capture_default_str();
    cmd->add_option("--name", synth.name)->capture_default_str();
    cmd->add_option("--transcripts", synth.transcripts)->capture_default_str();
    cmd->add_option("--seed", synth.seed)->capture_default_str();
    cmd->add_option("--shared-vocab", synth.shared_vocab)
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--recordings-per-text", synth.recordings_per_text)
        ->capture_default_str();
    cmd->callback([&] {
      action = [&] {
        Corpus c = make_synthetic_corpus(synth);
        write_corpus(c, fs::path(synth_out));
        CorpusStats s = corpus_stats(c);
        json j = stats_json(s);
        j["event"] = "synthesized";
        j["out"] = synth_out;
        log.event(j, fmt::format("wrote {}: {}", synth_out, stats_text(s)));
        return kExitOk;
      };
    });
  }

  // plan
  CorpusArgs plan_corpus;
  SchedulerConfig plan_cfg;
  std::string plan_scheme = "direct";
  std::string plan_out;
  {
    auto* cmd = app.add_subcommand("plan", "build a text/speech mix plan");
    plan_corpus.add(cmd, "--corpus", "training corpus");
    cmd->add_option("--scheme", plan_scheme, "text_only, direct or curriculum")
        ->check(CLI::IsMember({"text_only", "direct", "curriculum"}))
        ->capture_default_str();
    cmd->add_option("--p", plan_cfg.p, "speech proportion")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--epochs", plan_cfg.epochs)->capture_default_str();
    cmd->add_option("--seed", plan_cfg.seed)->capture_default_str();
    cmd->add_option("--out", plan_out, "plan JSON")->required();
    cmd->callback([&] {
      action = [&] {
        plan_cfg.scheme = parse_scheme(plan_scheme);
        Corpus c = plan_corpus.load();
        TrainingPool pool = training_pool(c);
        MixPlan plan = build_plan(
            plan_cfg, pool.text_ids,
            nested_permutation(pool.speech_ids,
                               derive_seed(plan_cfg.seed, "speech")));
        write_plan(plan, plan_out);
        PlanTotals t = plan_totals(plan);
        log.event({{"event", "planned"},
                   {"out", plan_out},
                   {"n_speech", plan.n_speech},
                   {"budget", plan.budget},
                   {"speech_exposures", t.speech_total},
                   {"text_exposures", t.text_total}},
                  fmt::format("wrote {}: budget {} of {} speech items, {} "
                              "speech and {} text exposures",
                              plan_out, plan.budget, plan.n_speech, t.speech_total,
                              t.text_total));
        return kExitOk;
      };
    });
  }

  // train
  CorpusArgs train_corpus;
  std::string train_plan, train_out, train_recipe = "desk", train_config;
  SpeechSimConfig train_sim;
  {
    auto* cmd = app.add_subcommand("train", "train the reference learner");
    train_corpus.add(cmd, "--corpus", "training corpus");
    cmd->add_option("--plan", train_plan, "plan JSON")->required();
    cmd->add_option("--recipe", train_recipe, "desk or full")
        ->check(CLI::IsMember({"desk", "full"}))
        ->capture_default_str();
    cmd->add_option("--config", train_config,
                    "experiment manifest supplying recipe and simulator");
    cmd->add_option("--sim-seed", train_sim.seed)->capture_default_str();
    cmd->add_option("--out", train_out, "model JSON")->required();
    cmd->callback([&] {
      action = [&] {
        MixPlan plan = read_plan(train_plan);
        TrainRecipe recipe = named_recipe(train_recipe, plan.config.scheme);
        SpeechSimConfig sim = train_sim;
        if (!train_config.empty()) {
          ExperimentManifest m = read_experiment_manifest(train_config);
          recipe = recipe_for(m, plan.config.scheme);
          sim = m.sim;
        }
        recipe.epochs = plan.config.epochs;
        Corpus c = train_corpus.load();
        ModelState model = train(plan, c, recipe, sim);
        write_model(model, train_out);
        for (const EpochLog& e : model.train_log) {
          log.event({{"event", "epoch"},
                     {"epoch", e.epoch},
                     {"text_items", e.text_items},
                     {"speech_items", e.speech_items},
                     {"batches", e.batches},
                     {"mean_loss", e.mean_loss},
                     {"train_accuracy", e.train_accuracy}},
                    fmt::format("epoch {}: {} text, {} speech, loss {:.4f}, "
                                "accuracy {:.4f}",
                                e.epoch, e.text_items, e.speech_items,
                                e.mean_loss, e.train_accuracy));
        }
        log.event({{"event", "trained"}, {"out", train_out}},
                  fmt::format("wrote {}", train_out));
        return kExitOk;
      };
    });
  }

  // predict
  CorpusArgs pred_corpus;
  std::string pred_model, pred_out, pred_split = "test", pred_input = "speech";
  SpeechSimConfig pred_sim;
  {
    auto* cmd = app.add_subcommand("predict", "predict labels for a split");
    pred_corpus.add(cmd, "--corpus", "corpus with gold labels");
    cmd->add_option("--model", pred_model, "model JSON")->required();
    cmd->add_option("--eval-split", pred_split, "split to predict")
        ->check(CLI::IsMember({"train", "dev", "test"}))
        ->capture_default_str();
    cmd->add_option("--input", pred_input, "speech or text")
        ->check(CLI::IsMember({"speech", "text"}))
        ->capture_default_str();
    cmd->add_option("--sim-seed", pred_sim.seed)->capture_default_str();
    cmd->add_option("--out", pred_out, "predictions JSONL")->required();
    cmd->callback([&] {
      action = [&] {
        ModelState model = read_model(pred_model);
        Corpus c = pred_corpus.load();
        const Split split = parse_split(pred_split);
        const InputMode mode = parse_input(pred_input);
        validate_sim(pred_sim);
        std::vector<PredictionLine> lines;
        for (const Utterance& u : c.records) {
          if (u.split != split) continue;
          SemanticLabel pred = predict(model, model_input(u, mode, pred_sim));
          PredictionLine line{u.id, u.label, ""};
          if (!pred.unparseable && !label_problem(pred)) {
            line.pred_raw = serialize_label(pred);
          }
          lines.push_back(std::move(line));
        }
        auto os = open_out(pred_out);
        write_predictions(lines, os);
        log.event({{"event", "predicted"},
                   {"out", pred_out},
                   {"n", lines.size()}},
                  fmt::format("wrote {} predictions to {}", lines.size(),
                              pred_out));
        return kExitOk;
      };
    });
  }

  // evaluate
  std::string eval_gold, eval_pred, eval_out, eval_profile = "canonical";
  {
    auto* cmd = app.add_subcommand("evaluate", "score predictions");
    cmd->add_option("--gold", eval_gold,
                    "gold corpus (default: gold labels inside --pred)");
    cmd->add_option("--profile", eval_profile)
        ->check(CLI::IsMember({"canonical", "slurp", "massive"}))->capture_default_str();
    cmd->add_option("--pred", eval_pred, "predictions JSONL")->required();
    cmd->add_option("--out", eval_out, "report JSON");
    cmd->callback([&] {
      action = [&] {
        Corpus gold;
        if (!eval_gold.empty()) {
          gold = load_corpus(eval_gold, parse_profile(eval_profile), {});
        }
        std::vector<PredictionLine> lines = read_predictions(fs::path(eval_pred));
        MetricReport r = evaluate(join_predictions(gold, lines));
        json j = report_to_json(r);
        if (!eval_out.empty()) open_out(eval_out) << j.dump(2) << '\n';
        json ev = j;
        ev["event"] = "evaluated";
        log.event(ev, fmt::format("n={} intent_accuracy={:.4f} entity_f1={:.4f} "
                                  "slu_f1={:.4f}",
                                  r.n_utts, r.intent_accuracy, r.entity_f1,
                                  r.slu_f1));
        return kExitOk;
      };
    });
  }

  // aggregate
  std::string agg_runs, agg_out;
  {
    auto* cmd = app.add_subcommand("aggregate",
                                   "aggregate finished grid cells into a CSV");
    cmd->add_option("--runs", agg_runs, "grid output directory")->required();
    cmd->add_option("--out", agg_out, "aggregate CSV")->required();
    cmd->callback([&] {
      action = [&] {
        std::vector<AggregateRow> rows = aggregate_runs(agg_runs);
        if (rows.empty()) {
          throw DataError(fmt::format("no finished cells under '{}'", agg_runs));
        }
        write_aggregate_csv(rows, fs::path(agg_out));
        log.event({{"event", "aggregated"},
                   {"out", agg_out},
                   {"rows", rows.size()}},
                  fmt::format("wrote {} rows to {}", rows.size(), agg_out));
        return kExitOk;
      };
    });
  }

  // report
  std::string rep_in, rep_out, rep_style = "monolingual";
  {
    auto* cmd = app.add_subcommand("report", "render Markdown and CSV tables");
    cmd->add_option("--in", rep_in, "aggregate CSV")->required();
    cmd->add_option("--style", rep_style,
                    "monolingual, zeroshot_relative or fewshot")
        ->check(CLI::IsMember({"monolingual", "zeroshot_relative", "fewshot"}))
        ->capture_default_str();
    cmd->add_option("--out", rep_out, "output prefix (.md and .csv)")
        ->required();
    cmd->callback([&] {
      action = [&] {
        const ReportStyle style = parse_report_style(rep_style);
        std::vector<AggregateRow> rows = read_aggregate_csv(fs::path(rep_in));
        write_report(render_report(rows, style), rep_out);
        log.event({{"event", "reported"}, {"out", rep_out}},
                  fmt::format("wrote {}.md and {}.csv", rep_out, rep_out));
        return kExitOk;
      };
    });
  }

  // grid
  std::string grid_config, grid_out;
  std::size_t grid_workers = 0;
  {
    auto* cmd = app.add_subcommand("grid", "run an experiment grid");
    cmd->add_option("--config", grid_config, "experiment manifest")->required();
    cmd->add_option("--out", grid_out, "output directory")->required();
    cmd->add_option("--workers", grid_workers,
                    "parallel cells (default: manifest value)");
    cmd->callback([&] {
      action = [&] {
        ExperimentManifest m = read_experiment_manifest(grid_config);
        if (grid_workers > 0) m.workers = grid_workers;
        GridSummary s = run_grid(m, grid_out, [&](const json& ev) {
          std::string text = ev.value("event", "");
          if (ev.contains("cell")) text += " " + ev["cell"].get<std::string>();
          if (ev.contains("error")) text += ": " + ev["error"].get<std::string>();
          if (ev.contains("reason")) text += ": " + ev["reason"].get<std::string>();
          log.event(ev, text);
        });
        log.event({{"event", "grid_done"},
                   {"total", s.total},
                   {"ran", s.ran},
                   {"skipped", s.skipped},
                   {"failed", s.failed}},
                  fmt::format("{} cells: {} ran, {} skipped, {} failed",
                              s.total, s.ran, s.skipped, s.failed));
        return s.failed == 0 ? kExitOk : kExitDataError;
      };
    });
  }

  // export-manifest
  std::string exp_plan, exp_out, exp_recipe = "full", exp_ref;
  {
    auto* cmd = app.add_subcommand(
        "export-manifest", "describe a plan and recipe for an external trainer");
    cmd->add_option("--plan", exp_plan, "plan JSON")->required();
    cmd->add_option("--recipe", exp_recipe, "full or desk")
        ->check(CLI::IsMember({"full", "desk"}))
        ->capture_default_str();
    cmd->add_option("--corpus-ref", exp_ref,
                    "corpus reference recorded in the manifest");
    cmd->add_option("--out", exp_out, "manifest JSON")->required();
    cmd->callback([&] {
      action = [&] {
        MixPlan plan = read_plan(exp_plan);
        TrainRecipe recipe = named_recipe(exp_recipe, plan.config.scheme);
        recipe.epochs = plan.config.epochs;
        if (plan.config.scheme != Scheme::kCurriculum) {
          recipe.phase2_peak_lr.reset();
          recipe.phase2_warmup_ratio.reset();
        }
        write_manifest(export_manifest(plan, recipe,
                                       exp_ref.empty() ? exp_plan : exp_ref),
                       exp_out);
        log.event({{"event", "exported"}, {"out", exp_out}},
                  fmt::format("wrote {}", exp_out));
        return kExitOk;
      };
    });
  }

  for (const std::string& a : args) {
    if (a.empty() || a[0] == '-') continue;
    if (!app.get_subcommand_no_throw(a)) {
      err << "unknown subcommand '" << a << "'\n" << app.help();
      return kExitUsage;
    }
    break;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action) return kExitUsage;
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace slumix::cli
