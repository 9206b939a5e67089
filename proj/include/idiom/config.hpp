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

#ifndef IDIOM_CONFIG_HPP_
#define IDIOM_CONFIG_HPP_

#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "idiom/corpus.hpp"
#include "idiom/encoder.hpp"
#include "idiom/model.hpp"
#include "idiom/tokenizer.hpp"
#include "idiom/training.hpp"

namespace idiom {

struct DataConfig {
  std::vector<std::string> train_paths;
  std::string dev_path;
  std::string test_path;
  ColumnMapping columns;
  std::map<Label, std::string> label_encoding;  // submission output values
};

// Declarative run configuration. Loaded from a JSON file; every field is
// validated up front with the offending field named in the error.
struct RunConfig {
  DataConfig data;
  std::string encoder_id = "toy";
  ToyEncoderConfig encoder;  // dims for the toy family
  ModelConfig model;         // variant comes from `variant` below
  VariantConfig variant;
  TrainConfig train;
  Setting setting = Setting::kZeroShot;  // training regime, for reports
  std::string output_dir;
  bool deterministic = true;
};

// Parses and validates. Relative paths resolve against the config file's
// directory. Throws ConfigError with a field-level message.
RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides = {});
RunConfig parse_run_config(const nlohmann::json& j,
                           const std::string& base_dir);

// Scalar overrides from the command line, applied before validation:
// "train.epochs=5", "variant=F", "train.selection=epoch:9", ...
nlohmann::json apply_overrides(nlohmann::json config,
                               const std::vector<std::string>& overrides);

// A reproducible snapshot of the effective configuration.
nlohmann::json run_config_to_json(const RunConfig& config);

// Hash of everything that must match between a checkpoint and the config
// used to load it: encoder architecture, tokenizer, head sizes, variant,
// form mode, mask token and length budget.
std::string model_fingerprint(const RunConfig& config);

std::shared_ptr<TokenizerContract> build_tokenizer(const RunConfig& config);
std::unique_ptr<IdiomaticityModel> build_model(const RunConfig& config,
                                               std::mt19937_64& init_rng);
CheckpointMeta checkpoint_meta_for(const RunConfig& config);

// Loads the configured datasets (train files are concatenated in order).
std::vector<Instance> load_train_instances(const RunConfig& config);
std::vector<Instance> load_instances(const RunConfig& config,
                                     const std::string& path);

// Resolves a checkpoint path, trying the cache directory named by the
// IDIOM_CACHE_DIR environment variable when the path does not exist as
// given.
std::string resolve_checkpoint_path(const std::string& path);

}  // namespace idiom

#endif  // IDIOM_CONFIG_HPP_
