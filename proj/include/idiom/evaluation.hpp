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

#ifndef IDIOM_EVALUATION_HPP_
#define IDIOM_EVALUATION_HPP_

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "idiom/corpus.hpp"

namespace idiom {

// One scored instance. predicted is Idiomatic iff prob_idiomatic >= 0.5
// (ties resolve to Idiomatic).
struct Prediction {
  std::string instance_id;
  Lang lang = Lang::kOther;
  std::string lang_raw;
  Setting setting = Setting::kZeroShot;
  double prob_idiomatic = 0.0;
  Label predicted = Label::kNonIdiomatic;
};

Label predicted_label(double prob_idiomatic);

// Unweighted mean of the per-class F1 of both classes. A class absent from
// both golds and predictions contributes F1 = 0 with a warning.
// Labels are 0 (non-idiomatic) / 1 (idiomatic).
double macro_f1(const std::vector<int>& golds, const std::vector<int>& preds);

// Per-language and pooled scores. `overall` is the macro-F1 of the pooled
// prediction set; `overall_language_mean` is the unweighted mean of the
// per-language scores, reported alongside because the two differ on
// imbalanced splits.
struct EvalReport {
  std::vector<std::pair<std::string, double>> per_language;  // code -> F1
  double overall = 0.0;
  double overall_language_mean = 0.0;
  std::map<std::string, int> n_per_language;
  nlohmann::json metadata;  // seed, variant, selection mode, form mode, ...
};

// Matches predictions to golds by instance id (UnmatchedIdError when a
// prediction has no labeled gold).
EvalReport build_report(const std::vector<Prediction>& predictions,
                        const std::vector<Instance>& golds,
                        nlohmann::json metadata = {});

// Builds a report directly from known scores (in percent), e.g. to render
// published numbers; no predictions involved.
EvalReport report_from_scores(
    const std::vector<std::pair<std::string, double>>& per_language_percent,
    double overall_percent);

// "91.59 84.57 82.87 87.50": per-language columns in EN/PT/GL order (other
// languages appended), then the overall column, percent with 2 decimals.
std::string render_report_row(const EvalReport& report);
std::string render_report_table(const EvalReport& report);
nlohmann::json report_to_json(const EvalReport& report);

// Grouping key for run comparisons.
enum class GroupBy { kVariant, kFormMode, kSelection };

struct ComparisonRow {
  std::string group;
  std::string setting;  // "zero_shot" / "one_shot" / "all"
  double mean = 0.0;
  double stddev = 0.0;  // population
  int n = 0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

// Groups reports by the requested metadata field and aggregates their
// overall scores per setting: mean +/- population standard deviation across
// seeds. Requires at least two groups.
ComparisonTable compare_runs(const std::vector<EvalReport>& reports,
                             GroupBy group_by);

std::string render_comparison(const ComparisonTable& table);
// Plot-ready rows: group,setting,mean,std (CSV with header).
std::string comparison_plot_data(const ComparisonTable& table);

// Submission file: ID,Language,Setting,Label with the configured label
// encoding. Written atomically (temp file + rename).
void write_submission(const std::string& path,
                      const std::vector<Prediction>& predictions,
                      const std::map<Label, std::string>& label_encoding);

}  // namespace idiom

#endif  // IDIOM_EVALUATION_HPP_
