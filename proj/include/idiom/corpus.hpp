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

#ifndef IDIOM_CORPUS_HPP_
#define IDIOM_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace idiom {

struct Table;  // csv.hpp

enum class Lang { kEN, kPT, kGL, kOther };

// Parses a language column value; recognizes EN/PT/GL codes and full names
// case-insensitively, anything else maps to kOther.
Lang parse_lang(const std::string& raw);
std::string lang_code(Lang lang);           // "EN" / "PT" / "GL" / "??"
std::string lang_display(Lang lang);        // "English" / ...

enum class Label { kNonIdiomatic = 0, kIdiomatic = 1, kUnlabeled = 2 };
enum class Setting { kZeroShot, kOneShot };
enum class FormMode { kInflectional, kOriginal };

std::string to_string(Label label);
std::string to_string(Setting setting);
std::string to_string(FormMode mode);
Setting parse_setting(const std::string& raw);   // tolerant: "zero_shot", "one-shot", ...
FormMode parse_form_mode(const std::string& raw);

// One dataset row. Sentences are stored trimmed but otherwise verbatim;
// spans index into `target` in Unicode code points.
struct Instance {
  std::string id;
  Lang lang = Lang::kOther;
  std::string lang_raw;  // original column value
  std::string mwe_lemma;  // >= 2 whitespace-separated constituents
  std::string previous;   // may be empty
  std::string target;     // non-empty
  std::string next;       // may be empty
  Label label = Label::kUnlabeled;
  Setting setting = Setting::kZeroShot;
};

// The located occurrence of an MWE inside the target sentence.
// Invariant: surface == target[char_start:char_end] (code points).
struct MweSpan {
  std::int32_t char_start = 0;  // inclusive
  std::int32_t char_end = 0;    // exclusive
  std::string surface;
};

// Maps logical fields to column names. A column marked optional may be
// absent from the header; a required one that is absent raises
// MissingColumnError.
struct ColumnMapping {
  std::string id = "ID";
  std::string language = "Language";
  std::string mwe = "MWE";
  std::string previous = "Previous";
  std::string target = "Target";
  std::string next = "Next";
  std::string label = "Label";
  std::string setting = "Setting";
  bool label_required = false;    // absent column => all rows Unlabeled
  bool setting_required = false;  // absent column => default_setting
  Setting default_setting = Setting::kZeroShot;
  // Raw label cell value -> class. Required whenever a label column is
  // present; the task files do not document their polarity, so it must be
  // spelled out.
  std::map<std::string, Label> label_values;
};

// Parses a delimited table (see csv.hpp for the accepted format) into
// validated instances, one per data row, in file order.
std::vector<Instance> parse_dataset(const Table& table,
                                    const ColumnMapping& schema);
std::vector<Instance> parse_dataset_string(const std::string& text,
                                           const ColumnMapping& schema);
std::vector<Instance> parse_dataset_file(const std::string& path,
                                         const ColumnMapping& schema);

// Locates the leftmost occurrence of the MWE in `target`.
//
// Two stages: first an exact case-insensitive match of the lemma aligned on
// word boundaries, then inflection-tolerant matching over windows of
// consecutive words where every lemma word must be a prefix of the
// corresponding sentence word (after case folding and stripping punctuation
// at word edges) and at most 4 code points shorter than it.
//
// Throws MweNotFoundError when no window matches.
MweSpan localize_mwe(const std::string& target, const std::string& mwe_lemma);

// Non-throwing variant; nullopt when not found.
std::optional<MweSpan> try_localize_mwe(const std::string& target,
                                        const std::string& mwe_lemma);

// The MWE string a downstream view should embed: the inflected occurrence
// copied from the target sentence, or the lemma verbatim.
// Inflectional mode propagates MweNotFoundError.
std::string surface_form(const Instance& instance, FormMode mode);

// Like surface_form, but unlocalizable rows fall back to the lemma with a
// warning instead of failing a run.
std::string surface_form_or_lemma(const Instance& instance, FormMode mode);

// Data-quality diagnostic for the one-shot protocol: for every MWE in the
// one-shot portion of `eval`, counts training instances and whether the
// idiomatic/non-idiomatic pair is present. Reported, never enforced.
struct OneShotCoverage {
  int eval_mwes = 0;
  int covered = 0;        // >= 1 training instance
  int paired = 0;         // has both an idiomatic and a non-idiomatic one
  std::vector<std::string> uncovered;
};
OneShotCoverage one_shot_coverage(const std::vector<Instance>& train,
                                  const std::vector<Instance>& eval);

}  // namespace idiom

#endif  // IDIOM_CORPUS_HPP_
