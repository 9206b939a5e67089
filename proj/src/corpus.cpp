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

#include "idiom/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "idiom/csv.hpp"
#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

Lang parse_lang(const std::string& raw) {
  std::string k = fold_case_utf8(trim(raw));
  if (k == "en" || k == "english") return Lang::kEN;
  if (k == "pt" || k == "portuguese") return Lang::kPT;
  if (k == "gl" || k == "galician") return Lang::kGL;
  return Lang::kOther;
}

std::string lang_code(Lang lang) {
  switch (lang) {
    case Lang::kEN: return "EN";
    case Lang::kPT: return "PT";
    case Lang::kGL: return "GL";
    case Lang::kOther: return "??";
  }
  return "??";
}

std::string lang_display(Lang lang) {
  switch (lang) {
    case Lang::kEN: return "English";
    case Lang::kPT: return "Portuguese";
    case Lang::kGL: return "Galician";
    case Lang::kOther: return "Other";
  }
  return "Other";
}

std::string to_string(Label label) {
  switch (label) {
    case Label::kNonIdiomatic: return "non_idiomatic";
    case Label::kIdiomatic: return "idiomatic";
    case Label::kUnlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::string to_string(Setting setting) {
  return setting == Setting::kZeroShot ? "zero_shot" : "one_shot";
}

std::string to_string(FormMode mode) {
  return mode == FormMode::kInflectional ? "inflectional" : "original";
}

Setting parse_setting(const std::string& raw) {
  std::string k;
  for (char c : fold_case_utf8(trim(raw))) {
    if (std::isalnum(static_cast<unsigned char>(c))) k.push_back(c);
  }
  if (k == "zeroshot" || k == "zero" || k == "0shot") return Setting::kZeroShot;
  if (k == "oneshot" || k == "one" || k == "1shot") return Setting::kOneShot;
  throw MalformedRowError("unrecognized setting value: '" + raw + "'");
}

FormMode parse_form_mode(const std::string& raw) {
  std::string k = fold_case_utf8(trim(raw));
  if (k == "inflectional") return FormMode::kInflectional;
  if (k == "original") return FormMode::kOriginal;
  throw ConfigError("form_mode must be 'inflectional' or 'original', got '" +
                    raw + "'");
}

namespace {

int find_column(const std::vector<std::string>& header,
                const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return static_cast<int>(i);
  }
  return -1;
}

int require_column(const std::vector<std::string>& header,
                   const std::string& name) {
  int idx = find_column(header, name);
  if (idx < 0) {
    throw MissingColumnError("column '" + name + "' not found in header");
  }
  return idx;
}

}  // namespace

std::vector<Instance> parse_dataset(const Table& table,
                                    const ColumnMapping& schema) {
  const int c_id = require_column(table.header, schema.id);
  const int c_lang = require_column(table.header, schema.language);
  const int c_mwe = require_column(table.header, schema.mwe);
  const int c_prev = require_column(table.header, schema.previous);
  const int c_target = require_column(table.header, schema.target);
  const int c_next = require_column(table.header, schema.next);

  int c_label = find_column(table.header, schema.label);
  if (c_label < 0 && schema.label_required) {
    throw MissingColumnError("column '" + schema.label +
                             "' not found in header");
  }
  int c_setting = find_column(table.header, schema.setting);
  if (c_setting < 0 && schema.setting_required) {
    throw MissingColumnError("column '" + schema.setting +
                             "' not found in header");
  }
  if (c_label >= 0 && schema.label_values.empty()) {
    throw ConfigError(
        "a label column is present but no label_values mapping is "
        "configured; the data files do not define label polarity");
  }

  std::vector<Instance> out;
  out.reserve(table.rows.size());
  const std::size_t arity = table.header.size();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != arity) {
      std::ostringstream msg;
      msg << "row " << (r + 1) << " has " << row.size() << " fields, header has "
          << arity;
      throw MalformedRowError(msg.str());
    }
    Instance inst;
    inst.id = trim(row[c_id]);
    inst.lang_raw = trim(row[c_lang]);
    inst.lang = parse_lang(inst.lang_raw);
    inst.mwe_lemma = normalize_whitespace(row[c_mwe]);
    inst.previous = trim(row[c_prev]);
    inst.target = trim(row[c_target]);
    inst.next = trim(row[c_next]);

    if (normalize_whitespace(inst.target).empty()) {
      throw EmptyTargetError("row '" + inst.id + "': empty target sentence");
    }
    if (split_words(inst.mwe_lemma).size() < 2) {
      throw MalformedRowError("row '" + inst.id +
                              "': MWE must have at least 2 words, got '" +
                              inst.mwe_lemma + "'");
    }

    if (c_label >= 0) {
      const std::string raw = trim(row[c_label]);
      auto it = schema.label_values.find(raw);
      if (it == schema.label_values.end()) {
        throw MalformedRowError("row '" + inst.id + "': label value '" + raw +
                                "' not in configured label_values mapping");
      }
      inst.label = it->second;
    } else {
      inst.label = Label::kUnlabeled;
    }

    if (c_setting >= 0) {
      inst.setting = parse_setting(row[c_setting]);
    } else {
      inst.setting = schema.default_setting;
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> parse_dataset_string(const std::string& text,
                                           const ColumnMapping& schema) {
  return parse_dataset(read_delimited_string(text), schema);
}

std::vector<Instance> parse_dataset_file(const std::string& path,
                                         const ColumnMapping& schema) {
  return parse_dataset(read_delimited_file(path), schema);
}

namespace {

// A whitespace-delimited word of the target plus its punctuation-stripped
// core, all in code-point offsets.
struct Word {
  std::size_t start;       // word start
  std::size_t end;         // word end
  std::size_t core_start;  // after stripping leading non-alphanumerics
  std::size_t core_end;    // before stripping trailing non-alphanumerics
};

std::vector<Word> words_with_cores(const std::u32string& cps) {
  std::vector<Word> out;
  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    while (i < n && is_space_cp(cps[i])) ++i;
    if (i >= n) break;
    std::size_t start = i;
    while (i < n && !is_space_cp(cps[i])) ++i;
    Word w{start, i, start, i};
    while (w.core_start < w.core_end && !is_alnum_cp(cps[w.core_start])) {
      ++w.core_start;
    }
    while (w.core_end > w.core_start && !is_alnum_cp(cps[w.core_end - 1])) {
      --w.core_end;
    }
    out.push_back(w);
  }
  return out;
}

// Maximum inflection length: a lemma word may be up to this many code points
// shorter than the sentence word it matches.
constexpr std::size_t kMaxSuffixLen = 4;

}  // namespace

std::optional<MweSpan> try_localize_mwe(const std::string& target,
                                        const std::string& mwe_lemma) {
  const std::u32string tgt = utf8_decode(target);
  const std::u32string tgt_folded = fold_case(tgt);
  const std::u32string lemma_folded =
      fold_case(utf8_decode(normalize_whitespace(mwe_lemma)));
  if (tgt.empty() || lemma_folded.empty()) return std::nullopt;

  const auto make_span = [&](std::size_t cs, std::size_t ce) {
    MweSpan span;
    span.char_start = static_cast<std::int32_t>(cs);
    span.char_end = static_cast<std::int32_t>(ce);
    span.surface =
        utf8_encode(std::u32string_view(tgt).substr(cs, ce - cs));
    return span;
  };

  // Stage 1: exact case-insensitive substring, aligned on word boundaries so
  // that an inflected occurrence ("wet blankets") is not cut short at the
  // lemma's length.
  const std::size_t m = lemma_folded.size();
  if (m <= tgt_folded.size()) {
    for (std::size_t i = 0; i + m <= tgt_folded.size(); ++i) {
      if (std::u32string_view(tgt_folded).substr(i, m) != lemma_folded) {
        continue;
      }
      const bool left_ok = i == 0 || !is_alnum_cp(tgt_folded[i - 1]);
      const bool right_ok =
          i + m == tgt_folded.size() || !is_alnum_cp(tgt_folded[i + m]);
      if (left_ok && right_ok) return make_span(i, i + m);
    }
  }

  // Stage 2: inflection-tolerant window match. Each lemma word must be a
  // prefix of the corresponding sentence word core, shorter by at most
  // kMaxSuffixLen code points.
  std::vector<std::u32string> lemma_words;
  {
    std::u32string cur;
    for (char32_t cp : lemma_folded) {
      if (is_space_cp(cp)) {
        if (!cur.empty()) lemma_words.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(cp);
      }
    }
    if (!cur.empty()) lemma_words.push_back(std::move(cur));
  }
  const std::vector<Word> words = words_with_cores(tgt);
  const std::size_t k = lemma_words.size();
  if (k == 0 || words.size() < k) return std::nullopt;

  for (std::size_t w = 0; w + k <= words.size(); ++w) {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      const Word& word = words[w + j];
      const std::size_t core_len = word.core_end - word.core_start;
      const std::u32string_view core =
          std::u32string_view(tgt_folded)
              .substr(word.core_start, core_len);
      const std::u32string& lw = lemma_words[j];
      ok = core_len >= lw.size() && core_len - lw.size() <= kMaxSuffixLen &&
           starts_with(core, lw);
    }
    if (ok) {
      return make_span(words[w].core_start, words[w + k - 1].core_end);
    }
  }
  return std::nullopt;
}

MweSpan localize_mwe(const std::string& target, const std::string& mwe_lemma) {
  auto span = try_localize_mwe(target, mwe_lemma);
  if (!span) {
    throw MweNotFoundError("MWE '" + mwe_lemma +
                           "' not found in target: " + target);
  }
  return *span;
}

std::string surface_form(const Instance& instance, FormMode mode) {
  if (mode == FormMode::kOriginal) return instance.mwe_lemma;
  return localize_mwe(instance.target, instance.mwe_lemma).surface;
}

std::string surface_form_or_lemma(const Instance& instance, FormMode mode) {
  if (mode == FormMode::kOriginal) return instance.mwe_lemma;
  auto span = try_localize_mwe(instance.target, instance.mwe_lemma);
  if (span) return span->surface;
  log_warn("instance '" + instance.id + "': MWE '" + instance.mwe_lemma +
           "' not localizable; falling back to the original form");
  return instance.mwe_lemma;
}

OneShotCoverage one_shot_coverage(const std::vector<Instance>& train,
                                  const std::vector<Instance>& eval) {
  std::map<std::string, std::pair<bool, bool>> train_mwes;  // idio, non-idio
  for (const auto& inst : train) {
    auto& seen = train_mwes[fold_case_utf8(inst.mwe_lemma)];
    if (inst.label == Label::kIdiomatic) seen.first = true;
    if (inst.label == Label::kNonIdiomatic) seen.second = true;
  }
  OneShotCoverage cov;
  std::set<std::string> seen_eval;
  for (const auto& inst : eval) {
    if (inst.setting != Setting::kOneShot) continue;
    const std::string key = fold_case_utf8(inst.mwe_lemma);
    if (!seen_eval.insert(key).second) continue;
    ++cov.eval_mwes;
    auto it = train_mwes.find(key);
    if (it == train_mwes.end()) {
      cov.uncovered.push_back(inst.mwe_lemma);
      continue;
    }
    ++cov.covered;
    if (it->second.first && it->second.second) ++cov.paired;
  }
  return cov;
}

}  // namespace idiom
