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

#include "idiom/corpus.hpp"
#include "idiom/csv.hpp"
#include "idiom/errors.hpp"
#include "idiom/util.hpp"
#include "test_helpers.hpp"

using namespace idiom;

namespace {

ColumnMapping toy_schema() {
  ColumnMapping m;
  m.label_values = {{"1", Label::kIdiomatic}, {"0", Label::kNonIdiomatic}};
  return m;
}

constexpr const char* kSmallCsv =
    "ID,Language,MWE,Previous,Target,Next,Label\n"
    "a1,EN,wet blanket,Before.,\"He was a wet blanket, as usual.\",After.,1\n";

}  // namespace

TEST_CASE("parse_dataset maps all fields of a well-formed row") {
  const auto instances = parse_dataset_string(kSmallCsv, toy_schema());
  REQUIRE(instances.size() == 1);
  const Instance& inst = instances[0];
  CHECK(inst.id == "a1");
  CHECK(inst.lang == Lang::kEN);
  CHECK(inst.mwe_lemma == "wet blanket");
  CHECK(inst.previous == "Before.");
  CHECK(inst.target == "He was a wet blanket, as usual.");
  CHECK(inst.next == "After.");
  CHECK(inst.label == Label::kIdiomatic);
}

TEST_CASE("parse_dataset: absent optional label column means unlabeled") {
  const std::string csv =
      "ID,Language,MWE,Previous,Target,Next\n"
      "a1,EN,wet blanket,,He was a wet blanket.,\n";
  auto schema = toy_schema();
  schema.label_required = false;
  const auto instances = parse_dataset_string(csv, schema);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].label == Label::kUnlabeled);
  CHECK(instances[0].previous.empty());
  CHECK(instances[0].next.empty());

  schema.label_required = true;
  CHECK_THROWS_AS(parse_dataset_string(csv, schema), MissingColumnError);
}

TEST_CASE("parse_dataset: empty target names the row id") {
  const std::string csv =
      "ID,Language,MWE,Previous,Target,Next,Label\n"
      "bad7,EN,wet blanket,x,,y,1\n";
  try {
    parse_dataset_string(csv, toy_schema());
    FAIL("expected EmptyTargetError");
  } catch (const EmptyTargetError& e) {
    CHECK(std::string(e.what()).find("bad7") != std::string::npos);
  }
}

TEST_CASE("parse_dataset errors") {
  auto schema = toy_schema();
  SUBCASE("missing required column") {
    const std::string csv = "ID,Language,Previous,Target,Next,Label\nx,EN,a,b,c,1\n";
    CHECK_THROWS_AS(parse_dataset_string(csv, schema), MissingColumnError);
  }
  SUBCASE("wrong arity") {
    const std::string csv =
        "ID,Language,MWE,Previous,Target,Next,Label\nx,EN,wet blanket,b,c\n";
    CHECK_THROWS_AS(parse_dataset_string(csv, schema), MalformedRowError);
  }
  SUBCASE("single word MWE") {
    const std::string csv =
        "ID,Language,MWE,Previous,Target,Next,Label\nx,EN,blanket,p,t,n,1\n";
    CHECK_THROWS_AS(parse_dataset_string(csv, schema), MalformedRowError);
  }
  SUBCASE("unmapped label value") {
    const std::string csv =
        "ID,Language,MWE,Previous,Target,Next,Label\nx,EN,wet blanket,p,t,n,7\n";
    CHECK_THROWS_AS(parse_dataset_string(csv, schema), MalformedRowError);
  }
  SUBCASE("label column without a mapping is a config error") {
    schema.label_values.clear();
    CHECK_THROWS_AS(parse_dataset_string(kSmallCsv, schema), ConfigError);
  }
}

TEST_CASE("parse_dataset is total over well-formed files") {
  std::string csv = "ID,Language,MWE,Previous,Target,Next,Label\n";
  const int n = 37;
  for (int i = 0; i < n; ++i) {
    csv += "r" + std::to_string(i) +
           ",PT,casa azul,antes,A casa azul fica ali.,depois,0\n";
  }
  CHECK(parse_dataset_string(csv, toy_schema()).size() == n);
}

TEST_CASE("parse_dataset sniffs tab-delimited files") {
  const std::string tsv =
      "ID\tLanguage\tMWE\tPrevious\tTarget\tNext\tLabel\n"
      "t1\tGL\tcorvo branco\tp\tUn corvo branco, disque.\tn\t1\n";
  const auto instances = parse_dataset_string(tsv, toy_schema());
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].lang == Lang::kGL);
  CHECK(instances[0].target == "Un corvo branco, disque.");
}

TEST_CASE("localize_mwe: paper sentence with a literal occurrence") {
  const std::string target =
      "And finally, the snow falls again, this time in a thick, wet blanket "
      "that encapsulates everything.";
  const MweSpan span = localize_mwe(target, "wet blanket");
  CHECK(span.surface == "wet blanket");
  CHECK(utf8_substr(target, span.char_start, span.char_end) == span.surface);
}

TEST_CASE("localize_mwe: inflected plural resolves to the inflected surface") {
  const MweSpan span =
      localize_mwe("They handed out wet blankets to everyone", "wet blanket");
  CHECK(span.surface == "wet blankets");
  const auto oracle =
      test::oracle_localize("They handed out wet blankets to everyone",
                            "wet blanket");
  REQUIRE(oracle.has_value());
  CHECK(oracle->surface == span.surface);
  CHECK(oracle->char_start == span.char_start);
}

TEST_CASE("localize_mwe: no candidate window") {
  CHECK_THROWS_AS(localize_mwe("Nothing relevant here", "wet blanket"),
                  MweNotFoundError);
  CHECK_FALSE(try_localize_mwe("Nothing relevant here", "wet blanket")
                  .has_value());
}

TEST_CASE("localize_mwe: case-insensitive and punctuation-tolerant") {
  CHECK(localize_mwe("A WET BLANKET!", "wet blanket").surface == "WET BLANKET");
  CHECK(localize_mwe("(wet blanket)", "wet blanket").surface == "wet blanket");
  CHECK(localize_mwe("the, wet blankets, here", "wet blanket").surface ==
        "wet blankets");
}

TEST_CASE("localize_mwe: accented characters and code-point spans") {
  const std::string target = "O meu tio é um pão duro incorrigível.";
  const MweSpan span = localize_mwe(target, "pão duro");
  CHECK(span.surface == "pão duro");
  // Spans are code points, not bytes: the prefix holds multi-byte letters.
  CHECK(utf8_substr(target, span.char_start, span.char_end) == "pão duro");
}

TEST_CASE("localize_mwe: leftmost occurrence wins") {
  const MweSpan span = localize_mwe(
      "A wet blanket met another wet blanket.", "wet blanket");
  CHECK(span.char_start == 2);
}

TEST_CASE("localize_mwe: both words inflected still match by prefix") {
  CHECK(localize_mwe("Veñen corvos brancos a este val", "corvo branco")
            .surface == "corvos brancos");
}

TEST_CASE("localize_mwe: suffix longer than 4 code points does not match") {
  CHECK_FALSE(
      try_localize_mwe("He was wet blanketalike", "wet blanket").has_value());
}

TEST_CASE("localize_mwe: mid-word substring is not an occurrence") {
  CHECK_FALSE(try_localize_mwe("showet blanket", "wet blanket").has_value());
}

TEST_CASE("localize_mwe agrees with the brute-force oracle on an inflection corpus") {
  const auto corpus = test::make_inflection_corpus(500);
  REQUIRE(corpus.size() == 500);
  int checked = 0;
  for (const auto& c : corpus) {
    const auto got = try_localize_mwe(c.target, c.lemma);
    const auto expected = test::oracle_localize(c.target, c.lemma);
    REQUIRE(got.has_value() == expected.has_value());
    if (got) {
      CHECK(got->char_start == expected->char_start);
      CHECK(got->char_end == expected->char_end);
      CHECK(got->surface == expected->surface);
      // round trip: the span indexes the raw target
      CHECK(utf8_substr(c.target, got->char_start, got->char_end) ==
            got->surface);
      ++checked;
    }
  }
  CHECK(checked == 500);
}

TEST_CASE("localize_mwe round-trip property on verbatim lemmas") {
  const auto corpus = test::make_inflection_corpus(60);
  for (const auto& c : corpus) {
    const std::string plain = "x " + c.lemma + " y";
    const MweSpan span = localize_mwe(plain, c.lemma);
    CHECK(fold_case_utf8(span.surface) == fold_case_utf8(c.lemma));
  }
}

TEST_CASE("surface_form modes") {
  auto inst = test::make_instance("They handed out wet blankets to everyone",
                                  "wet blanket");
  CHECK(surface_form(inst, FormMode::kInflectional) == "wet blankets");
  CHECK(surface_form(inst, FormMode::kOriginal) == "wet blanket");

  auto verbatim = test::make_instance("A wet blanket indeed", "wet blanket");
  CHECK(surface_form(verbatim, FormMode::kInflectional) ==
        surface_form(verbatim, FormMode::kOriginal));

  auto missing = test::make_instance("Nothing here", "wet blanket");
  CHECK_THROWS_AS(surface_form(missing, FormMode::kInflectional),
                  MweNotFoundError);
  CHECK(surface_form(missing, FormMode::kOriginal) == "wet blanket");
}

TEST_CASE("surface_form_or_lemma logs and falls back") {
  auto missing = test::make_instance("Nothing here", "wet blanket");
  std::string captured;
  set_log_capture(&captured);
  CHECK(surface_form_or_lemma(missing, FormMode::kInflectional) ==
        "wet blanket");
  set_log_capture(nullptr);
  CHECK(captured.find("falling back") != std::string::npos);
}

TEST_CASE("one_shot_coverage counts coverage and pairing") {
  std::vector<Instance> train = {
      test::make_instance("a wet blanket here", "wet blanket", "", "",
                          Label::kIdiomatic),
      test::make_instance("a wet blanket there", "wet blanket", "", "",
                          Label::kNonIdiomatic),
      test::make_instance("the night bus came", "night bus", "", "",
                          Label::kNonIdiomatic),
  };
  std::vector<Instance> eval = {
      test::make_instance("wet blanket again", "wet blanket"),
      test::make_instance("night bus again", "night bus"),
      test::make_instance("cold feet again", "cold feet"),
  };
  for (auto& e : eval) e.setting = Setting::kOneShot;
  const auto cov = one_shot_coverage(train, eval);
  CHECK(cov.eval_mwes == 3);
  CHECK(cov.covered == 2);
  CHECK(cov.paired == 1);
  REQUIRE(cov.uncovered.size() == 1);
  CHECK(cov.uncovered[0] == "cold feet");
}

TEST_CASE("csv reader handles quotes, embedded delimiters and newlines") {
  const std::string csv =
      "A,B\n"
      "\"x, y\",\"line1\nline2\"\n"
      "plain,\"he said \"\"hi\"\"\"\n";
  const Table t = read_delimited_string(csv);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "x, y");
  CHECK(t.rows[0][1] == "line1\nline2");
  CHECK(t.rows[1][1] == "he said \"hi\"");
}
