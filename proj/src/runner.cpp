// Copyright 2026 The idiomdetect Authors
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

#include "idiom/runner.hpp"

#include <filesystem>
#include <fstream>

#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

TrainHarness make_harness(const RunConfig& cfg, const std::string& run_dir) {
  if (cfg.data.train_paths.empty()) {
    throw ConfigError("at 'data.train': required for training");
  }
  if (cfg.data.dev_path.empty()) {
    throw ConfigError("at 'data.dev': required for training");
  }
  TrainHarness harness;
  harness.model_factory = [cfg](std::mt19937_64& rng) {
    return build_model(cfg, rng);
  };
  harness.tokenizer = build_tokenizer(cfg);
  harness.variant = cfg.variant;
  harness.train_data = load_train_instances(cfg);
  harness.dev_data = load_instances(cfg, cfg.data.dev_path);
  harness.run_dir = run_dir;
  harness.checkpoint_meta = checkpoint_meta_for(cfg);
  return harness;
}

json run_result_to_json(const RunResult& run) {
  json j = {{"seed", run.seed},
            {"failed", run.failed},
            {"per_epoch_dev_f1", run.per_epoch_dev_f1},
            {"best_epoch", run.best_epoch},
            {"selected_checkpoint", run.selected_checkpoint_id},
            {"wall_time_sec", run.wall_time_sec}};
  if (!run.per_epoch_train_f1.empty()) {
    j["per_epoch_train_f1"] = run.per_epoch_train_f1;
  }
  if (run.failed) j["error"] = run.error;
  return j;
}

}  // namespace

nlohmann::json report_metadata(const RunConfig& cfg, std::uint64_t seed) {
  return {{"variant", to_string(cfg.variant.variant)},
          {"form_mode", to_string(cfg.variant.form_mode)},
          {"selection",
           cfg.train.selection.mode == SelectionMode::kBestDevF1
               ? "best_dev_f1"
               : "epoch:" + std::to_string(cfg.train.selection.fixed_epoch)},
          {"setting", to_string(cfg.setting)},
          {"seed", seed}};
}

std::unique_ptr<IdiomaticityModel> load_model_for(
    const RunConfig& cfg, const std::string& checkpoint_path) {
  const std::string path = resolve_checkpoint_path(checkpoint_path);
  const CheckpointMeta meta = read_checkpoint_meta(path);
  const std::string expected = model_fingerprint(cfg);
  if (meta.fingerprint != expected) {
    throw FingerprintMismatchError(
        "checkpoint fingerprint " + meta.fingerprint +
        " does not match the config (" + expected +
        "); encoder/variant/form settings differ");
  }
  std::mt19937_64 rng(0);  // overwritten by the load
  auto model = build_model(cfg, rng);
  load_checkpoint(path, model->parameters());
  return model;
}

SweepArtifacts run_training(const RunConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_text(out_dir + "/config.json", run_config_to_json(cfg).dump(2));

  TrainHarness harness = make_harness(cfg, out_dir);

  const auto coverage = one_shot_coverage(harness.train_data, harness.dev_data);
  if (coverage.eval_mwes > 0) {
    log_info("one-shot coverage: " + std::to_string(coverage.covered) + "/" +
             std::to_string(coverage.eval_mwes) + " dev MWEs covered, " +
             std::to_string(coverage.paired) +
             " with a full idiomatic/literal pair");
  }

  SweepArtifacts artifacts;
  artifacts.summary = sweep(harness, cfg.train);

  json summary_json;
  summary_json["dev_mean"] = artifacts.summary.dev_mean;
  summary_json["dev_std"] = artifacts.summary.dev_std;
  summary_json["selected_dev_f1"] = artifacts.summary.selected_dev_f1;
  if (coverage.eval_mwes > 0) {
    summary_json["one_shot_coverage"] = {{"eval_mwes", coverage.eval_mwes},
                                         {"covered", coverage.covered},
                                         {"paired", coverage.paired}};
  }
  json runs = json::array();
  for (const auto& run : artifacts.summary.runs) {
    runs.push_back(run_result_to_json(run));
  }
  summary_json["runs"] = runs;

  if (!cfg.data.test_path.empty()) {
    const auto test_data = load_instances(cfg, cfg.data.test_path);
    const bool labeled =
        !test_data.empty() && test_data.front().label != Label::kUnlabeled;
    if (labeled) {
      json test_json = json::array();
      for (const auto& run : artifacts.summary.runs) {
        if (run.failed) continue;
        const std::string ckpt = out_dir + "/seed_" +
                                 std::to_string(run.seed) + "/checkpoints/" +
                                 run.selected_checkpoint_id + ".ckpt";
        auto model = load_model_for(cfg, ckpt);
        const auto preds =
            predict_instances(*model, test_data, cfg.variant,
                              *harness.tokenizer, cfg.train.max_len);
        auto report =
            build_report(preds, test_data, report_metadata(cfg, run.seed));
        test_json.push_back(report_to_json(report));
        artifacts.test_reports.push_back(std::move(report));
      }
      summary_json["test_reports"] = test_json;
    }
  }

  artifacts.summary_json = summary_json;
  write_text(out_dir + "/summary.json", summary_json.dump(2));
  return artifacts;
}

EvalReport run_evaluate(const RunConfig& cfg,
                        const std::string& checkpoint_path,
                        const std::string& data_path) {
  std::string path = data_path.empty() ? cfg.data.test_path : data_path;
  if (path.empty()) {
    throw ConfigError(
        "at 'data.test': no evaluation data configured or given via --data");
  }
  auto model = load_model_for(cfg, checkpoint_path);
  const auto data = load_instances(cfg, path);
  const auto tokenizer = build_tokenizer(cfg);
  const auto preds = predict_instances(*model, data, cfg.variant, *tokenizer,
                                       cfg.train.max_len);
  return build_report(preds, data, report_metadata(cfg, 0));
}

std::size_t run_predict(const RunConfig& cfg,
                        const std::string& checkpoint_path,
                        const std::string& data_path,
                        const std::string& out_path) {
  if (cfg.data.label_encoding.empty()) {
    throw ConfigError(
        "at 'data.label_values': required to encode submission labels");
  }
  auto model = load_model_for(cfg, checkpoint_path);
  const auto data = load_instances(cfg, data_path);
  const auto tokenizer = build_tokenizer(cfg);
  const auto preds = predict_instances(*model, data, cfg.variant, *tokenizer,
                                       cfg.train.max_len);
  write_submission(out_path, preds, cfg.data.label_encoding);
  return preds.size();
}

AblationArtifacts run_ablation(const RunConfig& base_cfg,
                               const std::vector<std::string>& variants) {
  if (variants.empty()) {
    throw ConfigError("at 'variants': must name at least one variant");
  }
  fs::create_directories(base_cfg.output_dir);

  AblationArtifacts artifacts;
  std::vector<EvalReport> reports;
  for (const std::string& name : variants) {
    Variant variant;
    try {
      variant = parse_variant(name);
    } catch (const UnknownVariantError& e) {
      throw ConfigError(std::string("at 'variants': ") + e.what());
    }
    RunConfig cfg = base_cfg;
    cfg.variant.variant = variant;
    cfg.model.variant = variant;
    const std::string dir =
        base_cfg.output_dir + "/variant_" + to_string(variant);
    try {
      auto sweep_artifacts = run_training(cfg, dir);
      if (!sweep_artifacts.test_reports.empty()) {
        for (auto& r : sweep_artifacts.test_reports) {
          reports.push_back(std::move(r));
        }
      } else {
        // No labeled test data: group the dev scores of the selected
        // checkpoints instead.
        for (const auto& run : sweep_artifacts.summary.runs) {
          if (run.failed) continue;
          const int idx =
              std::stoi(run.selected_checkpoint_id.substr(6)) - 1;
          EvalReport report = report_from_scores(
              {}, run.per_epoch_dev_f1[static_cast<std::size_t>(idx)] * 100.0);
          report.metadata = report_metadata(cfg, run.seed);
          reports.push_back(std::move(report));
        }
      }
    } catch (const Error& e) {
      ++artifacts.failed_variants;
      log_error("variant " + to_string(variant) + " failed: " + e.what());
    }
  }
  if (reports.empty()) {
    throw Error("ablation_failed", "every variant failed");
  }
  artifacts.table = compare_runs(reports, GroupBy::kVariant);
  artifacts.rendered = render_comparison(artifacts.table);
  artifacts.plot_csv = comparison_plot_data(artifacts.table);
  write_text(base_cfg.output_dir + "/ablation_table.txt", artifacts.rendered);
  write_text(base_cfg.output_dir + "/ablation_plot.csv", artifacts.plot_csv);
  return artifacts;
}

}  // namespace idiom
