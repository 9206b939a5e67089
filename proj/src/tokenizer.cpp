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

#include "idiom/tokenizer.hpp"

#include <algorithm>

#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

namespace {
constexpr std::int32_t kNumSpecial = 4;  // pad, bos, sep, mask
}

HashWordTokenizer::HashWordTokenizer(HashTokenizerConfig config)
    : config_(config) {
  if (config_.vocab < kNumSpecial + 2) {
    throw ConfigError("tokenizer vocab too small");
  }
  if (config_.max_piece_cp < 1) {
    throw ConfigError("max_piece_cp must be >= 1");
  }
}

std::string HashWordTokenizer::name() const {
  return "toy:" + std::to_string(config_.vocab);
}

std::int32_t HashWordTokenizer::piece_id(const std::string& piece) const {
  const std::uint64_t h = fnv1a64(piece);
  const auto id = static_cast<std::int32_t>(
      kNumSpecial + h % static_cast<std::uint64_t>(config_.vocab - kNumSpecial));
  {
    std::lock_guard<std::mutex> lock(mu_);
    id_to_piece_.emplace(id, piece);
  }
  return id;
}

std::vector<TokenSpan> HashWordTokenizer::tokenize_with_offsets(
    const std::string& text) const {
  const std::u32string cps = utf8_decode(text);
  const std::u32string mask = utf8_decode(mask_piece());
  std::vector<TokenSpan> out;

  const auto emit_word = [&](std::size_t start, std::size_t end) {
    // Chunk long words into subword pieces of max_piece_cp code points.
    const auto piece_len = static_cast<std::size_t>(config_.max_piece_cp);
    std::size_t pos = start;
    bool first = true;
    while (pos < end) {
      const std::size_t stop = std::min(end, pos + piece_len);
      std::u32string folded;
      for (std::size_t i = pos; i < stop; ++i) {
        folded.push_back(fold_case(cps[i]));
      }
      std::string piece = utf8_encode(folded);
      if (!first) piece = "##" + piece;
      out.push_back({piece_id(piece), static_cast<std::int32_t>(pos),
                     static_cast<std::int32_t>(stop)});
      pos = stop;
      first = false;
    }
  };

  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    if (is_space_cp(cps[i])) {
      ++i;
      continue;
    }
    // The literal mask token maps to the reserved mask id.
    if (!mask.empty() && cps[i] == mask[0] && i + mask.size() <= n &&
        std::u32string_view(cps).substr(i, mask.size()) == mask) {
      out.push_back({mask_id(), static_cast<std::int32_t>(i),
                     static_cast<std::int32_t>(i + mask.size())});
      i += mask.size();
      continue;
    }
    if (is_alnum_cp(cps[i])) {
      std::size_t start = i;
      while (i < n && is_alnum_cp(cps[i])) ++i;
      emit_word(start, i);
      continue;
    }
    // Punctuation and symbols: one token per code point.
    out.push_back({piece_id(utf8_encode(fold_case(cps[i]))),
                   static_cast<std::int32_t>(i),
                   static_cast<std::int32_t>(i + 1)});
    ++i;
  }
  return out;
}

std::string HashWordTokenizer::decode(
    const std::vector<std::int32_t>& ids) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::string out;
  for (std::int32_t id : ids) {
    if (id == pad_id() || id == bos_id() || id == sep_id()) continue;
    std::string piece;
    if (id == mask_id()) {
      piece = mask_piece();
    } else {
      auto it = id_to_piece_.find(id);
      piece = it != id_to_piece_.end() ? it->second
                                       : "<unk#" + std::to_string(id) + ">";
    }
    if (piece.rfind("##", 0) == 0) {
      out += piece.substr(2);
    } else {
      if (!out.empty()) out += " ";
      out += piece;
    }
  }
  return out;
}

std::shared_ptr<TokenizerContract> make_tokenizer(const std::string& spec) {
  const std::string k = trim(spec);
  if (k == "toy" || k.rfind("toy:", 0) == 0) {
    HashTokenizerConfig cfg;
    if (k.size() > 4) {
      try {
        cfg.vocab = std::stoi(k.substr(4));
      } catch (const std::exception&) {
        throw ConfigError("bad tokenizer spec '" + spec + "'");
      }
    }
    return std::make_shared<HashWordTokenizer>(cfg);
  }
  throw ConfigError(
      "unknown tokenizer/encoder spec '" + spec +
      "'; this build ships the 'toy' family, pretrained checkpoints "
      "integrate through the Python bindings");
}

}  // namespace idiom
