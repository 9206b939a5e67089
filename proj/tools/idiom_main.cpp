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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "idiom/errors.hpp"
#include "idiom/runner.hpp"
#include "idiom/util.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

idiom::RunConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
  return idiom::load_run_config(path, overrides);
}

int cmd_train(const std::string& config_path,
              const std::vector<std::string>& overrides) {
  const idiom::RunConfig cfg = load_config(config_path, overrides);
  const auto artifacts = idiom::run_training(cfg, cfg.output_dir);
  std::cout << "sweep finished: dev macro-F1 mean "
            << artifacts.summary.dev_mean * 100.0 << " +/- "
            << artifacts.summary.dev_std * 100.0 << " over "
            << artifacts.summary.selected_dev_f1.size() << " seed(s)\n";
  for (const auto& report : artifacts.test_reports) {
    std::cout << "seed " << report.metadata["seed"]
              << " test: " << idiom::render_report_row(report) << "\n";
  }
  std::cout << "run directory: " << cfg.output_dir << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& config_path,
                 const std::vector<std::string>& overrides,
                 const std::string& checkpoint, const std::string& data_path,
                 const std::string& out_path) {
  const idiom::RunConfig cfg = load_config(config_path, overrides);
  const auto report = idiom::run_evaluate(cfg, checkpoint, data_path);
  std::cout << idiom::render_report_table(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw idiom::IoError("cannot write " + out_path);
    out << idiom::report_to_json(report).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_predict(const std::string& config_path,
                const std::vector<std::string>& overrides,
                const std::string& checkpoint, const std::string& data_path,
                const std::string& out_path) {
  const idiom::RunConfig cfg = load_config(config_path, overrides);
  const std::size_t n = idiom::run_predict(cfg, checkpoint, data_path, out_path);
  std::cout << "wrote " << n << " predictions to " << out_path << "\n";
  return kExitOk;
}

int cmd_ablate(const std::string& config_path,
               const std::vector<std::string>& overrides,
               const std::vector<std::string>& variants) {
  const idiom::RunConfig cfg = load_config(config_path, overrides);
  const auto artifacts = idiom::run_ablation(cfg, variants);
  std::cout << artifacts.rendered;
  if (artifacts.failed_variants > 0) {
    std::cout << artifacts.failed_variants << " variant(s) failed; see log\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idiomaticity detection toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string checkpoint;
  std::string data_path;
  std::string out_path;
  std::vector<std::string> variants{"Full", "A", "B", "C", "D", "E", "F"};
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "debug logging");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "run config (JSON)")
        ->required();
    cmd->add_option("-s,--set", overrides,
                    "scalar override, e.g. train.epochs=5");
  };

  CLI::App* train = app.add_subcommand("train", "multi-seed fine-tuning run");
  add_common(train);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a checkpoint on labeled data");
  add_common(evaluate);
  evaluate->add_option("--checkpoint", checkpoint, "checkpoint file")
      ->required();
  evaluate->add_option("--data", data_path, "labeled data file");
  evaluate->add_option("-o,--out", out_path, "report JSON output");

  CLI::App* predict = app.add_subcommand("predict", "write a submission file");
  add_common(predict);
  predict->add_option("--checkpoint", checkpoint, "checkpoint file")
      ->required();
  predict->add_option("--data", data_path, "data file")->required();
  predict->add_option("-o,--out", out_path, "submission output path")
      ->required();

  CLI::App* ablate =
      app.add_subcommand("ablate", "compare variants over the seed sweep");
  add_common(ablate);
  ablate->add_option("--variants", variants, "variant list")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  idiom::set_log_level(verbose ? idiom::LogLevel::kDebug
                               : idiom::LogLevel::kInfo);

  try {
    if (app.got_subcommand(train)) return cmd_train(config_path, overrides);
    if (app.got_subcommand(evaluate)) {
      return cmd_evaluate(config_path, overrides, checkpoint, data_path,
                          out_path);
    }
    if (app.got_subcommand(predict)) {
      return cmd_predict(config_path, overrides, checkpoint, data_path,
                         out_path);
    }
    if (app.got_subcommand(ablate)) {
      return cmd_ablate(config_path, overrides, variants);
    }
  } catch (const idiom::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const idiom::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
