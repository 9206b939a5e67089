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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "idiom/errors.hpp"
#include "idiom/evaluation.hpp"
#include "test_helpers.hpp"

using namespace idiom;

namespace {

// Independent confusion-matrix oracle.
double oracle_macro_f1(const std::vector<int>& golds,
                       const std::vector<int>& preds) {
  double total = 0.0;
  for (int cls : {0, 1}) {
    double tp = 0;
    double fp = 0;
    double fn = 0;
    double support = 0;
    for (std::size_t i = 0; i < golds.size(); ++i) {
      if (golds[i] == cls) ++support;
      if (preds[i] == cls && golds[i] == cls) ++tp;
      if (preds[i] == cls && golds[i] != cls) ++fp;
      if (preds[i] != cls && golds[i] == cls) ++fn;
    }
    const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f1 = precision + recall > 0
                          ? 2 * precision * recall / (precision + recall)
                          : 0.0;
    (void)support;
    total += f1;
  }
  return total / 2.0;
}

Prediction make_pred(const std::string& id, Lang lang, double prob) {
  Prediction p;
  p.instance_id = id;
  p.lang = lang;
  p.lang_raw = lang_code(lang);
  p.setting = Setting::kOneShot;
  p.prob_idiomatic = prob;
  p.predicted = predicted_label(prob);
  return p;
}

Instance gold(const std::string& id, Lang lang, Label label) {
  Instance inst = test::make_instance("the wet blanket here", "wet blanket");
  inst.id = id;
  inst.lang = lang;
  inst.lang_raw = lang_code(lang);
  inst.label = label;
  return inst;
}

}  // namespace

TEST_CASE("macro_f1: hand-computed confusion matrix") {
  CHECK(macro_f1({1, 1, 0, 0}, {1, 0, 1, 0}) == doctest::Approx(0.5));
  CHECK(macro_f1({1, 0, 1, 0}, {1, 0, 1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("macro_f1 matches the oracle on random vectors") {
  std::mt19937_64 rng(20260809);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    std::vector<int> g(n);
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) {
      g[i] = coin(rng) ? 1 : 0;
      p[i] = coin(rng) ? 1 : 0;
    }
    CHECK(std::abs(macro_f1(g, p) - oracle_macro_f1(g, p)) < 1e-9);
  }
}

TEST_CASE("macro_f1 is symmetric under class relabeling") {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> g(20);
    std::vector<int> p(20);
    for (int i = 0; i < 20; ++i) {
      g[i] = coin(rng) ? 1 : 0;
      p[i] = coin(rng) ? 1 : 0;
    }
    std::vector<int> g2(20);
    std::vector<int> p2(20);
    for (int i = 0; i < 20; ++i) {
      g2[i] = 1 - g[i];
      p2[i] = 1 - p[i];
    }
    CHECK(macro_f1(g, p) == doctest::Approx(macro_f1(g2, p2)).epsilon(1e-12));
  }
}

TEST_CASE("macro_f1 bounds and the perfect-iff condition") {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> g(12);
    std::vector<int> p(12);
    bool has0 = false;
    bool has1 = false;
    for (int i = 0; i < 12; ++i) {
      g[i] = coin(rng) ? 1 : 0;
      p[i] = coin(rng) ? 1 : 0;
      has0 |= g[i] == 0;
      has1 |= g[i] == 1;
    }
    const double f1 = macro_f1(g, p);
    CHECK(f1 >= 0.0);
    CHECK(f1 <= 1.0);
    if (has0 && has1) {
      CHECK((f1 == doctest::Approx(1.0)) == (g == p));
    }
  }
}

TEST_CASE("macro_f1: errors and the absent-class warning") {
  CHECK_THROWS_AS(macro_f1({1, 0}, {1}), LengthMismatchError);
  CHECK_THROWS_AS(macro_f1({}, {}), LengthMismatchError);
  std::string captured;
  set_log_capture(&captured);
  const double f1 = macro_f1({1, 1}, {1, 1});  // class 0 absent everywhere
  set_log_capture(nullptr);
  CHECK(f1 == doctest::Approx(0.5));  // class1 F1=1, class0 contributes 0
  CHECK(captured.find("absent") != std::string::npos);
}

TEST_CASE("build_report: all-correct across three languages") {
  std::vector<Prediction> preds;
  std::vector<Instance> golds;
  int k = 0;
  for (Lang lang : {Lang::kEN, Lang::kPT, Lang::kGL}) {
    for (int i = 0; i < 4; ++i) {
      const std::string id = "i" + std::to_string(k++);
      const Label label = i % 2 == 0 ? Label::kIdiomatic : Label::kNonIdiomatic;
      golds.push_back(gold(id, lang, label));
      preds.push_back(make_pred(id, lang, label == Label::kIdiomatic ? .9 : .1));
    }
  }
  const EvalReport report = build_report(preds, golds);
  REQUIRE(report.per_language.size() == 3);
  CHECK(report.per_language[0].first == "EN");
  CHECK(report.per_language[1].first == "PT");
  CHECK(report.per_language[2].first == "GL");
  for (const auto& [code, f1] : report.per_language) {
    CHECK(f1 == doctest::Approx(100.0));
  }
  CHECK(report.overall == doctest::Approx(100.0));
  CHECK(report.n_per_language.at("EN") == 4);
  CHECK(render_report_row(report) == "100.00 100.00 100.00 100.00");
}

TEST_CASE("build_report: single-language pool degenerates to that column") {
  std::vector<Prediction> preds = {make_pred("a", Lang::kPT, .9),
                                   make_pred("b", Lang::kPT, .2)};
  std::vector<Instance> golds = {gold("a", Lang::kPT, Label::kIdiomatic),
                                 gold("b", Lang::kPT, Label::kNonIdiomatic)};
  const EvalReport report = build_report(preds, golds);
  REQUIRE(report.per_language.size() == 1);
  CHECK(report.per_language[0].first == "PT");
  CHECK(report.overall == doctest::Approx(report.per_language[0].second));
}

TEST_CASE("build_report: pooled overall differs from the language mean") {
  // EN: large and mostly right; GL: tiny and all wrong.
  std::vector<Prediction> preds;
  std::vector<Instance> golds;
  for (int i = 0; i < 10; ++i) {
    const std::string id = "en" + std::to_string(i);
    const Label label = i % 2 == 0 ? Label::kIdiomatic : Label::kNonIdiomatic;
    golds.push_back(gold(id, Lang::kEN, label));
    preds.push_back(
        make_pred(id, Lang::kEN, label == Label::kIdiomatic ? .9 : .1));
  }
  for (int i = 0; i < 2; ++i) {
    const std::string id = "gl" + std::to_string(i);
    const Label label = i % 2 == 0 ? Label::kIdiomatic : Label::kNonIdiomatic;
    golds.push_back(gold(id, Lang::kGL, label));
    preds.push_back(
        make_pred(id, Lang::kGL, label == Label::kIdiomatic ? .1 : .9));
  }
  const EvalReport report = build_report(preds, golds);
  CHECK(report.overall != doctest::Approx(report.overall_language_mean));
  // Pooled: 10/12 correct dominates; language mean: (100 + 0) / 2.
  CHECK(report.overall_language_mean == doctest::Approx(50.0));
  CHECK(report.overall > 75.0);
}

TEST_CASE("build_report: unmatched or unlabeled ids are rejected") {
  std::vector<Prediction> preds = {make_pred("missing", Lang::kEN, .9)};
  std::vector<Instance> golds = {gold("other", Lang::kEN, Label::kIdiomatic)};
  CHECK_THROWS_AS(build_report(preds, golds), UnmatchedIdError);
  golds[0].id = "missing";
  golds[0].label = Label::kUnlabeled;
  CHECK_THROWS_AS(build_report(preds, golds), UnmatchedIdError);
}

TEST_CASE("report renders the published one-shot row when fed those values") {
  const EvalReport report = report_from_scores(
      {{"EN", 91.59}, {"PT", 84.57}, {"GL", 82.87}}, 87.50);
  CHECK(render_report_row(report) == "91.59 84.57 82.87 87.50");
  const std::string table = render_report_table(report);
  CHECK(table.find("English Portuguese Galician Overall") == 0);
}

TEST_CASE("prediction threshold: ties go to idiomatic") {
  CHECK(predicted_label(0.5) == Label::kIdiomatic);
  CHECK(predicted_label(0.4999) == Label::kNonIdiomatic);
  CHECK(predicted_label(1.0) == Label::kIdiomatic);
}

TEST_CASE("compare_runs groups by variant with mean and population std") {
  std::vector<EvalReport> reports;
  const auto add = [&](const std::string& variant, double overall,
                       std::uint64_t seed) {
    EvalReport r = report_from_scores({}, overall);
    r.metadata = {{"variant", variant},
                  {"seed", seed},
                  {"setting", "one_shot"},
                  {"form_mode", "inflectional"},
                  {"selection", "best_dev_f1"}};
    reports.push_back(r);
  };
  add("Full", 80.0, 42);
  add("Full", 90.0, 360);
  add("F", 70.0, 42);
  add("F", 70.0, 360);
  const ComparisonTable table = compare_runs(reports, GroupBy::kVariant);
  REQUIRE(table.rows.size() == 2);
  double full_mean = 0;
  double full_std = 0;
  double f_std = -1;
  for (const auto& row : table.rows) {
    if (row.group == "Full") {
      full_mean = row.mean;
      full_std = row.stddev;
    }
    if (row.group == "F") f_std = row.stddev;
    CHECK(row.n == 2);
  }
  CHECK(full_mean == doctest::Approx(85.0));
  CHECK(full_std == doctest::Approx(5.0));
  CHECK(f_std == doctest::Approx(0.0));
  const std::string plot = comparison_plot_data(table);
  CHECK(plot.find("group,setting,mean,std") == 0);
  CHECK(plot.find("Full,one_shot,85.00,5.00") != std::string::npos);
}

TEST_CASE("compare_runs: form-mode grouping yields the 2x2 layout") {
  std::vector<EvalReport> reports;
  const auto add = [&](const std::string& form, const std::string& setting,
                       double overall) {
    EvalReport r = report_from_scores({}, overall);
    r.metadata = {{"variant", "Full"},
                  {"form_mode", form},
                  {"setting", setting},
                  {"selection", "best_dev_f1"},
                  {"seed", 42}};
    reports.push_back(r);
  };
  add("original", "zero_shot", 76.34);
  add("inflectional", "zero_shot", 76.36);
  add("original", "one_shot", 88.14);
  add("inflectional", "one_shot", 89.33);
  const ComparisonTable table = compare_runs(reports, GroupBy::kFormMode);
  CHECK(table.rows.size() == 4);  // 2 form modes x 2 settings
}

TEST_CASE("compare_runs preconditions") {
  std::vector<EvalReport> reports;
  EvalReport r = report_from_scores({}, 50.0);
  r.metadata = {{"variant", "Full"}};
  reports.push_back(r);
  CHECK_THROWS_AS(compare_runs(reports, GroupBy::kVariant),
                  InconsistentGroupingError);
  EvalReport no_field = report_from_scores({}, 60.0);
  reports.push_back(no_field);
  CHECK_THROWS_AS(compare_runs(reports, GroupBy::kVariant),
                  InconsistentGroupingError);
}

TEST_CASE("submission file format and label encoding") {
  namespace fs = std::filesystem;
  const std::string path =
      (fs::temp_directory_path() / "idiom_test_submission.csv").string();
  std::vector<Prediction> preds = {make_pred("a1", Lang::kEN, .9),
                                   make_pred("a2", Lang::kGL, .1)};
  preds[1].setting = Setting::kZeroShot;
  write_submission(path, preds, {{Label::kIdiomatic, "1"},
                                 {Label::kNonIdiomatic, "0"}});
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "ID,Language,Setting,Label");
  std::getline(in, line);
  CHECK(line == "a1,EN,one_shot,1");
  std::getline(in, line);
  CHECK(line == "a2,GL,zero_shot,0");
  fs::remove(path);

  CHECK_THROWS_AS(
      write_submission(path, preds, {{Label::kIdiomatic, "1"}}), ConfigError);
  CHECK_FALSE(fs::exists(path));
}
