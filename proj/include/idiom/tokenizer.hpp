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

#ifndef IDIOM_TOKENIZER_HPP_
#define IDIOM_TOKENIZER_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace idiom {

// One subword piece with its character offsets (code points) into the text
// it was produced from.
struct TokenSpan {
  std::int32_t id = 0;
  std::int32_t char_start = 0;
  std::int32_t char_end = 0;
};

// Behavioral contract adapting a pretrained encoder's tokenizer. Offsets
// must be non-overlapping and non-decreasing. Implementations must be
// usable from multiple threads.
class TokenizerContract {
 public:
  virtual ~TokenizerContract() = default;

  virtual std::vector<TokenSpan> tokenize_with_offsets(
      const std::string& text) const = 0;

  virtual std::int32_t pad_id() const = 0;
  virtual std::int32_t bos_id() const = 0;
  virtual std::int32_t sep_id() const = 0;
  virtual std::int32_t mask_id() const = 0;
  virtual std::int32_t vocab_size() const = 0;

  // The literal string that tokenizes to mask_id.
  virtual std::string mask_piece() const { return "<mask>"; }

  virtual std::string name() const { return "custom"; }
};

// Deterministic hash-based tokenizer used with the toy encoder.
//
// Words are lowercased, split on whitespace; punctuation becomes single
// tokens; words longer than `max_piece_cp` code points are chunked into
// pieces of that size, continuation pieces carrying a "##" marker, so that
// multi-subword MWEs occur naturally. Piece ids are a stable hash of the
// piece string, so the mapping is identical across processes and requires
// no fitted vocabulary.
struct HashTokenizerConfig {
  std::int32_t vocab = 32768;
  std::int32_t max_piece_cp = 4;
};

class HashWordTokenizer final : public TokenizerContract {
 public:
  explicit HashWordTokenizer(HashTokenizerConfig config = {});

  std::vector<TokenSpan> tokenize_with_offsets(
      const std::string& text) const override;

  std::int32_t pad_id() const override { return 0; }
  std::int32_t bos_id() const override { return 1; }
  std::int32_t sep_id() const override { return 2; }
  std::int32_t mask_id() const override { return 3; }
  std::int32_t vocab_size() const override { return config_.vocab; }
  std::string name() const override;

  // Best-effort inverse of tokenize over pieces this process has seen;
  // continuation pieces rejoin their word. Unknown ids render as <unk#id>.
  std::string decode(const std::vector<std::int32_t>& ids) const;

  const HashTokenizerConfig& config() const { return config_; }

 private:
  std::int32_t piece_id(const std::string& piece) const;

  HashTokenizerConfig config_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::int32_t, std::string> id_to_piece_;
};

// Builds the tokenizer named by an encoder spec string. "toy" (optionally
// "toy:<vocab>") selects HashWordTokenizer.
std::shared_ptr<TokenizerContract> make_tokenizer(const std::string& spec);

}  // namespace idiom

#endif  // IDIOM_TOKENIZER_HPP_
