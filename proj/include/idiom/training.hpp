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

#ifndef IDIOM_TRAINING_HPP_
#define IDIOM_TRAINING_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "idiom/checkpoint.hpp"
#include "idiom/model.hpp"
#include "idiom/pipeline.hpp"

namespace idiom {

enum class SelectionMode { kBestDevF1, kFixedEpoch };

struct Selection {
  SelectionMode mode = SelectionMode::kBestDevF1;
  int fixed_epoch = 9;  // 1-based; the post-eval protocol uses epoch 9
};

struct TrainConfig {
  std::vector<std::uint64_t> seeds{42, 360, 2578, 5925, 9463};
  int epochs = 10;
  double lr = 3e-5;
  int train_batch = 16;
  int eval_batch = 8;
  int max_len = 300;
  double weight_decay = 0.01;
  double dropout = 0.1;
  Selection selection;
  bool eval_train = false;      // also score the training set each epoch
  bool keep_all_checkpoints = true;
};

// Learning-rate schedule: constant through the first two epochs, then a
// linear ramp from base_lr at the start of epoch 3 down to 0 at the last
// step. With <= 2 epochs the rate stays constant.
double lr_at(std::int64_t step, std::int64_t total_steps,
             std::int64_t steps_per_epoch, double base_lr);

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<double> per_epoch_dev_f1;
  std::vector<double> per_epoch_train_f1;  // only when eval_train
  int best_epoch = 0;  // 1-based argmax of dev F1, earliest on ties
  std::string selected_checkpoint_id;
  double wall_time_sec = 0.0;
  bool failed = false;
  std::string error;
};

// "epoch_<k>" per the run's selection mode. BestDevF1 takes the argmax of
// the dev curve (earliest on ties); FixedEpoch(k) ignores dev scores.
std::string select_checkpoint(const RunResult& run, const Selection& selection);

// Mean and population standard deviation, as reported by sweep().
std::pair<double, double> mean_and_population_std(
    const std::vector<double>& values);

// Everything one seed's run needs. The model factory must perform all
// parameter initialization from the rng it is handed, so a run is fully
// determined by (seed, config, data).
struct TrainHarness {
  std::function<std::unique_ptr<IdiomaticityModel>(std::mt19937_64&)>
      model_factory;
  std::shared_ptr<TokenizerContract> tokenizer;
  VariantConfig variant;
  std::vector<Instance> train_data;
  std::vector<Instance> dev_data;
  std::string run_dir;  // empty: keep checkpoints in memory only (tests)
  CheckpointMeta checkpoint_meta;  // fingerprint etc. stamped on checkpoints
};

RunResult train_one(const TrainHarness& harness, const TrainConfig& config,
                    std::uint64_t seed);

struct SweepSummary {
  std::vector<RunResult> runs;
  double dev_mean = 0.0;
  double dev_std = 0.0;  // population, across the selected checkpoints
  std::vector<double> selected_dev_f1;
};

// One run per seed; per-seed failures are recorded, not fatal.
SweepSummary sweep(const TrainHarness& harness, const TrainConfig& config);

}  // namespace idiom

#endif  // IDIOM_TRAINING_HPP_
