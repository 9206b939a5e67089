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

#ifndef IDIOM_RUNNER_HPP_
#define IDIOM_RUNNER_HPP_

#include <memory>
#include <string>
#include <vector>

#include "idiom/config.hpp"
#include "idiom/evaluation.hpp"
#include "idiom/training.hpp"

namespace idiom {

// End-to-end commands shared by the CLI and the Python bindings.

struct SweepArtifacts {
  SweepSummary summary;
  std::vector<EvalReport> test_reports;  // per seed, when labeled test data
  nlohmann::json summary_json;
};

// Runs the configured seed sweep, writes the run directory (config
// snapshot, per-seed metrics/checkpoints, summary.json) and evaluates the
// selected checkpoints on labeled test data when configured.
SweepArtifacts run_training(const RunConfig& config,
                            const std::string& out_dir);

// Builds the model for `config` and loads a checkpoint into it, verifying
// the fingerprint first.
std::unique_ptr<IdiomaticityModel> load_model_for(
    const RunConfig& config, const std::string& checkpoint_path);

nlohmann::json report_metadata(const RunConfig& config, std::uint64_t seed);

EvalReport run_evaluate(const RunConfig& config,
                        const std::string& checkpoint_path,
                        const std::string& data_path);

// Writes the submission file; returns the number of predictions.
std::size_t run_predict(const RunConfig& config,
                        const std::string& checkpoint_path,
                        const std::string& data_path,
                        const std::string& out_path);

struct AblationArtifacts {
  ComparisonTable table;
  std::string rendered;
  std::string plot_csv;
  int failed_variants = 0;
};

// Sweeps each variant with the shared seed list and aggregates the results
// per group; writes ablation_table.txt and ablation_plot.csv under the
// config's output directory. Per-variant failures are isolated.
AblationArtifacts run_ablation(const RunConfig& config,
                               const std::vector<std::string>& variants);

}  // namespace idiom

#endif  // IDIOM_RUNNER_HPP_
