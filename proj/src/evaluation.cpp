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

#include "idiom/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "idiom/csv.hpp"
#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

Label predicted_label(double prob_idiomatic) {
  return prob_idiomatic >= 0.5 ? Label::kIdiomatic : Label::kNonIdiomatic;
}

double macro_f1(const std::vector<int>& golds, const std::vector<int>& preds) {
  if (golds.size() != preds.size()) {
    throw LengthMismatchError("macro_f1: " + std::to_string(golds.size()) +
                              " golds vs " + std::to_string(preds.size()) +
                              " predictions");
  }
  if (golds.empty()) {
    throw LengthMismatchError("macro_f1 on empty inputs");
  }
  double f1_sum = 0.0;
  for (int cls = 0; cls <= 1; ++cls) {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    bool seen = false;
    for (std::size_t i = 0; i < golds.size(); ++i) {
      const bool g = golds[i] == cls;
      const bool p = preds[i] == cls;
      seen |= g || p;
      if (g && p) ++tp;
      if (!g && p) ++fp;
      if (g && !p) ++fn;
    }
    if (!seen) {
      log_warn("macro_f1: class " + std::to_string(cls) +
               " absent from both golds and predictions; its F1 counts as 0");
      continue;
    }
    const double denom = 2.0 * tp + fp + fn;
    f1_sum += denom > 0.0 ? (2.0 * tp) / denom : 0.0;
  }
  return f1_sum / 2.0;
}

namespace {

double macro_f1_of(const std::vector<const Prediction*>& preds,
                   const std::unordered_map<std::string, Label>& gold_by_id) {
  std::vector<int> g;
  std::vector<int> p;
  g.reserve(preds.size());
  p.reserve(preds.size());
  for (const Prediction* pr : preds) {
    g.push_back(gold_by_id.at(pr->instance_id) == Label::kIdiomatic ? 1 : 0);
    p.push_back(pr->predicted == Label::kIdiomatic ? 1 : 0);
  }
  return macro_f1(g, p);
}

// EN, PT, GL first in the published column order, anything else after.
int lang_rank(const std::string& code) {
  if (code == "EN") return 0;
  if (code == "PT") return 1;
  if (code == "GL") return 2;
  return 3;
}

std::string format_pct(double value_percent) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << value_percent;
  return s.str();
}

}  // namespace

EvalReport build_report(const std::vector<Prediction>& predictions,
                        const std::vector<Instance>& golds,
                        nlohmann::json metadata) {
  std::unordered_map<std::string, Label> gold_by_id;
  for (const auto& inst : golds) gold_by_id[inst.id] = inst.label;

  std::map<std::string, std::vector<const Prediction*>> by_lang;
  std::vector<const Prediction*> pooled;
  for (const auto& pred : predictions) {
    auto it = gold_by_id.find(pred.instance_id);
    if (it == gold_by_id.end()) {
      throw UnmatchedIdError("prediction id '" + pred.instance_id +
                             "' has no gold instance");
    }
    if (it->second == Label::kUnlabeled) {
      throw UnmatchedIdError("gold instance '" + pred.instance_id +
                             "' is unlabeled");
    }
    const std::string code =
        pred.lang == Lang::kOther ? pred.lang_raw : lang_code(pred.lang);
    by_lang[code].push_back(&pred);
    pooled.push_back(&pred);
  }
  if (pooled.empty()) {
    throw LengthMismatchError("build_report with no predictions");
  }

  EvalReport report;
  report.metadata = std::move(metadata);
  std::vector<std::string> codes;
  for (const auto& [code, _] : by_lang) codes.push_back(code);
  std::sort(codes.begin(), codes.end(), [](const auto& a, const auto& b) {
    const int ra = lang_rank(a);
    const int rb = lang_rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  double lang_sum = 0.0;
  for (const auto& code : codes) {
    const double f1 = macro_f1_of(by_lang[code], gold_by_id);
    report.per_language.emplace_back(code, f1 * 100.0);
    report.n_per_language[code] = static_cast<int>(by_lang[code].size());
    lang_sum += f1 * 100.0;
  }
  report.overall = macro_f1_of(pooled, gold_by_id) * 100.0;
  report.overall_language_mean = lang_sum / static_cast<double>(codes.size());
  return report;
}

EvalReport report_from_scores(
    const std::vector<std::pair<std::string, double>>& per_language_percent,
    double overall_percent) {
  EvalReport report;
  report.per_language = per_language_percent;
  report.overall = overall_percent;
  double sum = 0.0;
  for (const auto& [_, v] : per_language_percent) sum += v;
  report.overall_language_mean =
      per_language_percent.empty()
          ? 0.0
          : sum / static_cast<double>(per_language_percent.size());
  return report;
}

std::string render_report_row(const EvalReport& report) {
  std::ostringstream s;
  for (const auto& [code, f1] : report.per_language) {
    s << format_pct(f1) << " ";
  }
  s << format_pct(report.overall);
  return s.str();
}

std::string render_report_table(const EvalReport& report) {
  std::ostringstream s;
  for (const auto& [code, _] : report.per_language) {
    Lang lang = parse_lang(code);
    s << (lang == Lang::kOther ? code : lang_display(lang)) << " ";
  }
  s << "Overall\n" << render_report_row(report) << "\n";
  return s.str();
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  nlohmann::json langs = nlohmann::json::object();
  for (const auto& [code, f1] : report.per_language) langs[code] = f1;
  j["per_language_macro_f1"] = langs;
  j["overall_macro_f1_pooled"] = report.overall;
  j["overall_macro_f1_language_mean"] = report.overall_language_mean;
  j["n_per_language"] = report.n_per_language;
  j["metadata"] = report.metadata;
  return j;
}

namespace {

std::string group_key(const EvalReport& report, GroupBy group_by) {
  const char* field = nullptr;
  switch (group_by) {
    case GroupBy::kVariant: field = "variant"; break;
    case GroupBy::kFormMode: field = "form_mode"; break;
    case GroupBy::kSelection: field = "selection"; break;
  }
  if (!report.metadata.contains(field)) {
    throw InconsistentGroupingError(
        std::string("report metadata lacks the grouping field '") + field +
        "'");
  }
  return report.metadata[field].get<std::string>();
}

}  // namespace

ComparisonTable compare_runs(const std::vector<EvalReport>& reports,
                             GroupBy group_by) {
  // (group, setting) -> overall scores across seeds
  std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
  for (const auto& report : reports) {
    const std::string group = group_key(report, group_by);
    const std::string setting = report.metadata.contains("setting")
                                    ? report.metadata["setting"].get<std::string>()
                                    : "all";
    cells[{group, setting}].push_back(report.overall);
  }
  std::vector<std::string> groups;
  for (const auto& [key, _] : cells) {
    if (std::find(groups.begin(), groups.end(), key.first) == groups.end()) {
      groups.push_back(key.first);
    }
  }
  if (groups.size() < 2) {
    throw InconsistentGroupingError(
        "compare_runs needs at least 2 groups, got " +
        std::to_string(groups.size()));
  }
  ComparisonTable table;
  for (const auto& [key, scores] : cells) {
    ComparisonRow row;
    row.group = key.first;
    row.setting = key.second;
    row.n = static_cast<int>(scores.size());
    double sum = 0.0;
    for (double s : scores) sum += s;
    row.mean = sum / scores.size();
    double ss = 0.0;
    for (double s : scores) ss += (s - row.mean) * (s - row.mean);
    row.stddev = std::sqrt(ss / scores.size());
    table.rows.push_back(row);
  }
  return table;
}

std::string render_comparison(const ComparisonTable& table) {
  std::ostringstream s;
  s << std::left << std::setw(12) << "group" << std::setw(12) << "setting"
    << std::setw(10) << "mean" << std::setw(10) << "std" << "n\n";
  for (const auto& row : table.rows) {
    s << std::left << std::setw(12) << row.group << std::setw(12)
      << row.setting << std::setw(10) << format_pct(row.mean) << std::setw(10)
      << format_pct(row.stddev) << row.n << "\n";
  }
  return s.str();
}

std::string comparison_plot_data(const ComparisonTable& table) {
  std::ostringstream s;
  s << "group,setting,mean,std\n";
  for (const auto& row : table.rows) {
    s << row.group << "," << row.setting << "," << format_pct(row.mean) << ","
      << format_pct(row.stddev) << "\n";
  }
  return s.str();
}

void write_submission(const std::string& path,
                      const std::vector<Prediction>& predictions,
                      const std::map<Label, std::string>& label_encoding) {
  const auto idio = label_encoding.find(Label::kIdiomatic);
  const auto nonidio = label_encoding.find(Label::kNonIdiomatic);
  if (idio == label_encoding.end() || nonidio == label_encoding.end()) {
    throw ConfigError("label encoding must map both classes");
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write submission file: " + path);
    write_delimited_row(out, {"ID", "Language", "Setting", "Label"});
    for (const auto& pred : predictions) {
      const std::string& label = pred.predicted == Label::kIdiomatic
                                     ? idio->second
                                     : nonidio->second;
      const std::string lang =
          pred.lang == Lang::kOther ? pred.lang_raw : lang_code(pred.lang);
      write_delimited_row(out,
                          {pred.instance_id, lang, to_string(pred.setting),
                           label});
    }
    if (!out) throw IoError("failed writing submission file: " + path);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace idiom
