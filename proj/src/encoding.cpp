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

#include "idiom/encoding.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "idiom/errors.hpp"

namespace idiom {

namespace {

bool is_context(SegmentRole role) {
  return role == SegmentRole::kPrevious || role == SegmentRole::kNext;
}

bool is_target_body(SegmentRole role) {
  return role == SegmentRole::kTarget || role == SegmentRole::kMweOnly;
}

// Index of the context token farthest from the target block, or -1.
// Previous-segment tokens are farthest at their front, next-segment tokens
// at their back; with context on both sides the longer side loses first.
int pick_context_victim(const std::vector<TaggedPiece>& pieces) {
  int first_prev = -1;
  int last_next = -1;
  int n_prev = 0;
  int n_next = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].special) continue;
    if (pieces[i].role == SegmentRole::kPrevious) {
      if (first_prev < 0) first_prev = static_cast<int>(i);
      ++n_prev;
    } else if (pieces[i].role == SegmentRole::kNext) {
      last_next = static_cast<int>(i);
      ++n_next;
    }
  }
  if (n_prev == 0 && n_next == 0) return -1;
  if (n_next > n_prev) return last_next;
  return first_prev;
}

// Index of the removable target token farthest from any anchor, or -1.
int pick_target_victim(const std::vector<TaggedPiece>& pieces) {
  std::vector<int> anchors;
  std::vector<int> removable;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (p.special || !is_target_body(p.role)) continue;
    if (p.anchor || p.mwe) {
      anchors.push_back(static_cast<int>(i));
    } else {
      removable.push_back(static_cast<int>(i));
    }
  }
  if (removable.empty()) return -1;
  if (anchors.empty()) {
    // No span in this view: trim around the middle of the target block.
    anchors.push_back(removable[removable.size() / 2]);
  }
  int best = -1;
  long best_dist = -1;
  for (int idx : removable) {
    long dist = std::numeric_limits<long>::max();
    for (int a : anchors) dist = std::min<long>(dist, std::abs(idx - a));
    if (dist > best_dist) {
      best_dist = dist;
      best = idx;
    }
  }
  return best;
}

}  // namespace

std::vector<TaggedPiece> truncate_policy(std::vector<TaggedPiece> pieces,
                                         int max_len) {
  while (static_cast<int>(pieces.size()) > max_len) {
    int victim = pick_context_victim(pieces);
    if (victim < 0) victim = pick_target_victim(pieces);
    if (victim < 0) {
      throw BudgetTooSmallError(
          "sequence does not fit the length budget even after removing all "
          "context and trimmable target tokens (" +
          std::to_string(pieces.size()) + " > " + std::to_string(max_len) +
          ")");
    }
    pieces.erase(pieces.begin() + victim);
  }
  return pieces;
}

EncodedInput encode_chunk(const TextChunk& chunk,
                          const TokenizerContract& tokenizer, int max_len,
                          bool use_segments) {
  if (max_len < 8) {
    throw std::invalid_argument("max_len must be >= 8");
  }
  if (chunk.segments.size() != chunk.roles.size()) {
    throw std::invalid_argument("chunk segments/roles length mismatch");
  }

  std::vector<TaggedPiece> pieces;
  pieces.push_back({tokenizer.bos_id(), SegmentRole::kTarget, true, false,
                    false});
  for (std::size_t s = 0; s < chunk.segments.size(); ++s) {
    const SegmentRole role = chunk.roles[s];
    const auto tokens = tokenizer.tokenize_with_offsets(chunk.segments[s]);
    for (const auto& tok : tokens) {
      bool overlaps = false;
      for (const auto& span : chunk.mwe_char_spans) {
        if (span.segment == static_cast<std::int32_t>(s) &&
            tok.char_start < span.char_end && tok.char_end > span.char_start) {
          overlaps = true;
          break;
        }
      }
      const bool anchor =
          overlaps || (chunk.kind == ViewKind::kContextExclusive &&
                       tok.id == tokenizer.mask_id());
      pieces.push_back({tok.id, role, false, overlaps, anchor});
    }
    pieces.push_back({tokenizer.sep_id(), role, true, false, false});
  }

  pieces = truncate_policy(std::move(pieces), max_len);

  EncodedInput out;
  out.view = chunk.kind;
  out.token_ids.reserve(pieces.size());
  out.attention_mask.assign(pieces.size(), 1);
  out.segment_ids.reserve(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    out.token_ids.push_back(pieces[i].id);
    const bool marked = pieces[i].mwe;
    out.segment_ids.push_back(use_segments && marked ? 1 : 0);
    if (marked) out.mwe_indices.push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

}  // namespace idiom
