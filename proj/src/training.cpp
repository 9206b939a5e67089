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

#include "idiom/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

double lr_at(std::int64_t step, std::int64_t total_steps,
             std::int64_t steps_per_epoch, double base_lr) {
  if (step < 0 || step >= total_steps) {
    throw std::invalid_argument("lr_at: step out of range");
  }
  const std::int64_t constant_steps =
      std::min<std::int64_t>(2 * steps_per_epoch, total_steps);
  if (step < constant_steps || total_steps == constant_steps) {
    return base_lr;
  }
  const double remaining =
      static_cast<double>(total_steps - step) /
      static_cast<double>(total_steps - constant_steps);
  return base_lr * remaining;
}

std::string select_checkpoint(const RunResult& run,
                              const Selection& selection) {
  if (run.per_epoch_dev_f1.empty()) {
    throw MissingCheckpointError("run has no recorded epochs");
  }
  const int epochs = static_cast<int>(run.per_epoch_dev_f1.size());
  if (selection.mode == SelectionMode::kFixedEpoch) {
    if (selection.fixed_epoch < 1 || selection.fixed_epoch > epochs) {
      throw MissingCheckpointError(
          "fixed epoch " + std::to_string(selection.fixed_epoch) +
          " outside the trained range 1.." + std::to_string(epochs));
    }
    return "epoch_" + std::to_string(selection.fixed_epoch);
  }
  int best = 0;
  for (int e = 1; e < epochs; ++e) {
    if (run.per_epoch_dev_f1[e] > run.per_epoch_dev_f1[best]) best = e;
  }
  return "epoch_" + std::to_string(best + 1);
}

namespace {

// Distinct deterministic rng streams per concern, all derived from the seed.
std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(seed * 0x9E3779B97F4A7C15ull + stream);
}

}  // namespace

RunResult train_one(const TrainHarness& harness, const TrainConfig& config,
                    std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  if (harness.train_data.empty() || harness.dev_data.empty()) {
    throw ConfigError("train_one requires non-empty train and dev sets");
  }
  if (config.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (config.lr <= 0) throw ConfigError("lr must be > 0");

  std::mt19937_64 init_rng = derive_rng(seed, 1);
  std::mt19937_64 shuffle_rng = derive_rng(seed, 2);
  std::mt19937_64 dropout_rng = derive_rng(seed, 3);

  std::unique_ptr<IdiomaticityModel> model = harness.model_factory(init_rng);

  // Views depend only on (instance, variant, form mode): encode once.
  std::vector<std::vector<EncodedInput>> train_enc;
  std::vector<int> train_labels;
  train_enc.reserve(harness.train_data.size());
  for (const Instance& inst : harness.train_data) {
    if (inst.label == Label::kUnlabeled) {
      throw ConfigError("training instance '" + inst.id + "' is unlabeled");
    }
    train_enc.push_back(encode_instance(inst, harness.variant,
                                        *harness.tokenizer, config.max_len));
    train_labels.push_back(inst.label == Label::kIdiomatic ? kLogitIdiomatic
                                                           : kLogitNonIdiomatic);
  }

  const auto n = static_cast<std::int64_t>(train_enc.size());
  const std::int64_t steps_per_epoch =
      (n + config.train_batch - 1) / config.train_batch;
  const std::int64_t total_steps = steps_per_epoch * config.epochs;

  nn::AdamWConfig opt_cfg;
  opt_cfg.weight_decay = config.weight_decay;
  nn::AdamW optimizer(model->parameters(), opt_cfg);

  std::string run_dir = harness.run_dir;
  if (!run_dir.empty()) {
    std::filesystem::create_directories(run_dir + "/checkpoints");
  }
  std::ofstream metrics;
  if (!run_dir.empty()) {
    metrics.open(run_dir + "/metrics.jsonl", std::ios::trunc);
  }

  RunResult result;
  result.seed = seed;

  std::vector<int> order(train_enc.size());
  std::iota(order.begin(), order.end(), 0);

  std::int64_t step = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double loss_sum = 0.0;
    std::int64_t loss_count = 0;
    double last_lr = config.lr;
    for (std::int64_t b = 0; b < steps_per_epoch; ++b) {
      optimizer.zero_grad();
      const std::size_t lo = static_cast<std::size_t>(b) * config.train_batch;
      const std::size_t hi =
          std::min(order.size(), lo + static_cast<std::size_t>(config.train_batch));
      const double inv_batch = 1.0 / static_cast<double>(hi - lo);
      for (std::size_t i = lo; i < hi; ++i) {
        nn::Tape tape;
        nn::Value logits = model->forward(tape, train_enc[order[i]],
                                          /*train=*/true, dropout_rng);
        nn::Value loss = model->loss(tape, logits, train_labels[order[i]]);
        const double loss_value = loss->value(0, 0);
        if (!std::isfinite(loss_value)) {
          throw DivergenceError("non-finite loss at step " +
                                std::to_string(step) + " (epoch " +
                                std::to_string(epoch) + ")");
        }
        loss_sum += loss_value;
        ++loss_count;
        tape.backward(tape.mul_scalar(loss, inv_batch));
      }
      last_lr = lr_at(step, total_steps, steps_per_epoch, config.lr);
      optimizer.step(last_lr);
      ++step;
    }

    const double dev_f1 =
        evaluate_macro_f1(*model, harness.dev_data, harness.variant,
                          *harness.tokenizer, config.max_len);
    result.per_epoch_dev_f1.push_back(dev_f1);
    double train_f1 = -1.0;
    if (config.eval_train) {
      train_f1 = evaluate_macro_f1(*model, harness.train_data, harness.variant,
                                   *harness.tokenizer, config.max_len);
      result.per_epoch_train_f1.push_back(train_f1);
    }

    // Storage-constrained mode keeps only checkpoints that improve dev F1.
    const bool best_so_far =
        dev_f1 >= *std::max_element(result.per_epoch_dev_f1.begin(),
                                    result.per_epoch_dev_f1.end());
    if (!run_dir.empty() && (config.keep_all_checkpoints || best_so_far)) {
      save_checkpoint(run_dir + "/checkpoints/epoch_" + std::to_string(epoch) +
                          ".ckpt",
                      model->parameters(), harness.checkpoint_meta);
    }
    if (metrics.is_open()) {
      nlohmann::json line = {{"epoch", epoch},
                             {"dev_macro_f1", dev_f1},
                             {"mean_loss", loss_sum / std::max<std::int64_t>(
                                                          1, loss_count)},
                             {"lr_end", last_lr},
                             {"seed", seed}};
      if (config.eval_train) line["train_macro_f1"] = train_f1;
      metrics << line.dump() << "\n";
      metrics.flush();
    }
  }

  int best = 0;
  for (std::size_t e = 1; e < result.per_epoch_dev_f1.size(); ++e) {
    if (result.per_epoch_dev_f1[e] > result.per_epoch_dev_f1[best]) {
      best = static_cast<int>(e);
    }
  }
  result.best_epoch = best + 1;
  result.selected_checkpoint_id = select_checkpoint(result, config.selection);
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

SweepSummary sweep(const TrainHarness& harness, const TrainConfig& config) {
  if (config.seeds.empty()) {
    throw ConfigError("sweep requires at least one seed");
  }
  SweepSummary summary;
  for (std::uint64_t seed : config.seeds) {
    TrainHarness seed_harness = harness;
    if (!harness.run_dir.empty()) {
      seed_harness.run_dir = harness.run_dir + "/seed_" + std::to_string(seed);
    }
    RunResult result;
    try {
      result = train_one(seed_harness, config, seed);
    } catch (const Error& e) {
      result.seed = seed;
      result.failed = true;
      result.error = e.what();
      log_error("seed " + std::to_string(seed) + " failed: " + e.what());
    }
    summary.runs.push_back(std::move(result));
  }
  for (const RunResult& run : summary.runs) {
    if (run.failed) continue;
    const int idx = std::stoi(run.selected_checkpoint_id.substr(6)) - 1;
    summary.selected_dev_f1.push_back(run.per_epoch_dev_f1[idx]);
  }
  if (!summary.selected_dev_f1.empty()) {
    std::tie(summary.dev_mean, summary.dev_std) =
        mean_and_population_std(summary.selected_dev_f1);
  }
  return summary;
}

std::pair<double, double> mean_and_population_std(
    const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

}  // namespace idiom
