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

#ifndef IDIOM_TESTS_TEST_HELPERS_HPP_
#define IDIOM_TESTS_TEST_HELPERS_HPP_

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "idiom/corpus.hpp"
#include "idiom/encoder.hpp"
#include "idiom/model.hpp"
#include "idiom/tokenizer.hpp"
#include "idiom/util.hpp"

namespace idiom::test {

inline Instance make_instance(std::string target, std::string mwe,
                              std::string previous = "",
                              std::string next = "",
                              Label label = Label::kUnlabeled) {
  Instance inst;
  inst.id = "T";
  inst.lang = Lang::kEN;
  inst.lang_raw = "EN";
  inst.mwe_lemma = std::move(mwe);
  inst.previous = std::move(previous);
  inst.target = std::move(target);
  inst.next = std::move(next);
  inst.label = label;
  return inst;
}

// ---------------------------------------------------------------------------
// Independent localization oracle: maximally naive two-stage search over
// code points, sharing no code with the implementation.
// ---------------------------------------------------------------------------

inline bool oracle_alnum(char32_t cp) { return is_alnum_cp(cp); }

// Stage 1: scan every start position; compare folded code points one by one;
// require non-alphanumeric (or edge) on both sides.
inline std::optional<std::pair<int, int>> oracle_exact(
    const std::u32string& tgt, const std::u32string& lemma) {
  const std::size_t n = tgt.size();
  const std::size_t m = lemma.size();
  for (std::size_t i = 0; i + m <= n; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < m && match; ++j) {
      match = fold_case(tgt[i + j]) == fold_case(lemma[j]);
    }
    if (!match) continue;
    if (i > 0 && oracle_alnum(tgt[i - 1])) continue;
    if (i + m < n && oracle_alnum(tgt[i + m])) continue;
    return std::make_pair(static_cast<int>(i), static_cast<int>(i + m));
  }
  return std::nullopt;
}

// Stage 2: enumerate every window of consecutive whitespace-separated words
// and check the prefix rule on punctuation-stripped word cores.
inline std::optional<std::pair<int, int>> oracle_window(
    const std::u32string& tgt, const std::vector<std::u32string>& lemma_words) {
  struct W {
    int core_start, core_end;
  };
  std::vector<W> words;
  std::size_t i = 0;
  while (i < tgt.size()) {
    while (i < tgt.size() && is_space_cp(tgt[i])) ++i;
    if (i >= tgt.size()) break;
    const std::size_t start = i;
    while (i < tgt.size() && !is_space_cp(tgt[i])) ++i;
    int cs = static_cast<int>(start);
    int ce = static_cast<int>(i);
    while (cs < ce && !oracle_alnum(tgt[cs])) ++cs;
    while (ce > cs && !oracle_alnum(tgt[ce - 1])) --ce;
    words.push_back({cs, ce});
  }
  const std::size_t k = lemma_words.size();
  for (std::size_t w = 0; w + k <= words.size(); ++w) {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      const W& word = words[w + j];
      const int core_len = word.core_end - word.core_start;
      const auto& lw = lemma_words[j];
      if (core_len < static_cast<int>(lw.size()) ||
          core_len - static_cast<int>(lw.size()) > 4) {
        ok = false;
        break;
      }
      for (std::size_t c = 0; c < lw.size(); ++c) {
        if (fold_case(tgt[word.core_start + c]) != fold_case(lw[c])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return std::make_pair(words[w].core_start, words[w + k - 1].core_end);
  }
  return std::nullopt;
}

inline std::optional<MweSpan> oracle_localize(const std::string& target,
                                              const std::string& lemma) {
  const std::u32string tgt = utf8_decode(target);
  const std::u32string lm = utf8_decode(normalize_whitespace(lemma));
  auto hit = oracle_exact(tgt, lm);
  if (!hit) {
    std::vector<std::u32string> lemma_words;
    std::u32string cur;
    for (char32_t cp : lm) {
      if (is_space_cp(cp)) {
        if (!cur.empty()) lemma_words.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(cp);
      }
    }
    if (!cur.empty()) lemma_words.push_back(cur);
    hit = oracle_window(tgt, lemma_words);
  }
  if (!hit) return std::nullopt;
  MweSpan span;
  span.char_start = hit->first;
  span.char_end = hit->second;
  span.surface = utf8_encode(
      std::u32string_view(tgt).substr(hit->first, hit->second - hit->first));
  return span;
}

// Deterministic inflection corpus: MWE embedded in assorted contexts with
// suffixes applied to its final word.
struct InflectionCase {
  std::string target;
  std::string lemma;
};

inline std::vector<InflectionCase> make_inflection_corpus(std::size_t n) {
  const std::vector<std::string> lemmas = {
      "wet blanket", "night bus",   "cold feet",    "glass door",
      "pão duro",    "casa azul",   "corvo branco", "paper tiger",
      "big fish",    "green light",
  };
  const std::vector<std::string> suffixes = {"", "s", "es", "ing", "ed"};
  const std::vector<std::pair<std::string, std::string>> frames = {
      {"They saw the ", " near the station."},
      {"A ", " was all anyone talked about."},
      {"Honestly, ", "!"},
      {"Era um ", ", disse ela."},
      {"", " everywhere we looked."},
      {"So much for the ", ""},
  };
  std::vector<InflectionCase> out;
  std::size_t i = 0;
  while (out.size() < n) {
    const auto& lemma = lemmas[i % lemmas.size()];
    const auto& suffix = suffixes[(i / lemmas.size()) % suffixes.size()];
    const auto& frame = frames[(i / (lemmas.size() * suffixes.size())) %
                               frames.size()];
    out.push_back({frame.first + lemma + suffix + frame.second, lemma});
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tiny model fixtures
// ---------------------------------------------------------------------------

inline ToyEncoderConfig tiny_encoder_config(int vocab) {
  ToyEncoderConfig cfg;
  cfg.vocab = vocab;
  cfg.d_model = 8;
  cfg.layers = 2;
  cfg.heads = 2;
  cfg.d_ff = 16;
  cfg.max_positions = 384;
  return cfg;
}

struct TinyModel {
  std::shared_ptr<HashWordTokenizer> tokenizer;
  std::shared_ptr<ToyTransformerEncoder> encoder;
  std::unique_ptr<IdiomaticityModel> model;
};

inline TinyModel make_tiny_model(Variant variant, std::uint64_t seed = 7,
                                 double dropout = 0.0, int d_proj = 8) {
  TinyModel tm;
  HashTokenizerConfig tok_cfg;
  tok_cfg.vocab = 512;
  tm.tokenizer = std::make_shared<HashWordTokenizer>(tok_cfg);
  std::mt19937_64 rng(seed);
  tm.encoder = std::make_shared<ToyTransformerEncoder>(
      tiny_encoder_config(tok_cfg.vocab), rng);
  ModelConfig mc;
  mc.variant = variant;
  mc.d_proj = d_proj;
  mc.dropout = dropout;
  tm.model = std::make_unique<IdiomaticityModel>(tm.encoder, mc, rng);
  return tm;
}

}  // namespace idiom::test

#endif  // IDIOM_TESTS_TEST_HELPERS_HPP_
