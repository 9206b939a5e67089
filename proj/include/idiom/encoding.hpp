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

#ifndef IDIOM_ENCODING_HPP_
#define IDIOM_ENCODING_HPP_

#include <cstdint>
#include <vector>

#include "idiom/chunking.hpp"
#include "idiom/tokenizer.hpp"

namespace idiom {

// Encoder-ready input. Padding is applied at batch time, not stored here.
// segment_ids mark MWE tokens (1) vs. the rest (0); mwe_indices carries the
// same positions and stays populated even when segment ids are disabled
// (ablation C still extracts v_MWE).
struct EncodedInput {
  std::vector<std::int32_t> token_ids;
  std::vector<std::int8_t> attention_mask;
  std::vector<std::int8_t> segment_ids;
  std::vector<std::int32_t> mwe_indices;  // sorted, unique
  ViewKind view = ViewKind::kPrevTarget;
};

// A token tagged with its origin, the unit the truncation policy works on.
struct TaggedPiece {
  std::int32_t id = 0;
  SegmentRole role = SegmentRole::kTarget;
  bool special = false;  // BOS / separators: never removed
  bool mwe = false;      // overlaps an MWE span: never removed
  bool anchor = false;   // distance reference for target trimming
};

// Removes tokens until the sequence fits max_len:
//   1. context tokens farthest from the target first (prefix of a previous
//      segment, suffix of a next segment, the longer side first on both-
//      sided chunks);
//   2. then target tokens farthest from the MWE/anchor positions;
// specials, MWE tokens and the repeated tail are never removed.
// Throws BudgetTooSmallError when even that cannot fit.
std::vector<TaggedPiece> truncate_policy(std::vector<TaggedPiece> pieces,
                                         int max_len);

// Tokenizes a chunk: segments joined with separator tokens, begin-of-
// sequence prepended, final separator appended, MWE positions marked by
// character-offset overlap with the chunk's spans, then truncated to
// max_len. use_segments=false zeroes segment_ids only.
EncodedInput encode_chunk(const TextChunk& chunk,
                          const TokenizerContract& tokenizer, int max_len,
                          bool use_segments);

}  // namespace idiom

#endif  // IDIOM_ENCODING_HPP_
