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

#ifndef IDIOM_CHUNKING_HPP_
#define IDIOM_CHUNKING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idiom/corpus.hpp"

namespace idiom {

// The input views fed to the encoder. PrevTarget and TargetNext pair the
// target sentence with one surrounding sentence each; ContextExclusive is
// the target with the MWE masked out; MweExclusive is the MWE alone.
// TargetOnly and TripleConcat are ablation shapes.
enum class ViewKind {
  kPrevTarget,
  kTargetNext,
  kContextExclusive,
  kMweExclusive,
  kTargetOnly,
  kTripleConcat,
};

std::string to_string(ViewKind kind);

// Role of a segment inside a chunk; drives the truncation policy.
enum class SegmentRole { kPrevious, kTarget, kNext, kMweTail, kMweOnly };

// Where the MWE occurs inside a chunk, per segment, in code points.
struct SegmentSpan {
  std::int32_t segment = 0;
  std::int32_t char_start = 0;
  std::int32_t char_end = 0;
};

// A constructed text-level input view, before tokenization.
struct TextChunk {
  ViewKind kind = ViewKind::kPrevTarget;
  std::vector<std::string> segments;
  std::vector<SegmentRole> roles;       // parallel to segments
  std::optional<std::string> mwe_surface;
  std::vector<SegmentSpan> mwe_char_spans;
  bool repeated_tail = false;
};

// Experiment variants: Full is the four-feature model, A-F the ablations.
//   A: target sentence only (no surrounding context) in place of both
//      context chunks; B: one previous+target+next chunk; C: segment
//      embeddings disabled at encoding; D: no repeated MWE tail on the
//      context chunks; E: the MWE is left intact in the context-exclusive
//      view; F: the MWE-exclusive view removed.
enum class Variant { kFull, kA, kB, kC, kD, kE, kF };

Variant parse_variant(const std::string& raw);  // throws UnknownVariantError
std::string to_string(Variant variant);

struct VariantConfig {
  Variant variant = Variant::kFull;
  FormMode form_mode = FormMode::kInflectional;
  std::string mask_token = "<mask>";
};

// Individual view builders. repeat_mwe appends the MWE surface as a final
// tail segment. Unlocalizable MWEs propagate MweNotFoundError from
// surface_form in Inflectional mode.
TextChunk build_prev_target(const Instance& instance, FormMode form_mode,
                            bool repeat_mwe);
TextChunk build_target_next(const Instance& instance, FormMode form_mode,
                            bool repeat_mwe);
TextChunk build_target_only(const Instance& instance, FormMode form_mode,
                            bool repeat_mwe);
TextChunk build_triple_concat(const Instance& instance, FormMode form_mode,
                              bool repeat_mwe);

// Target sentence with the located MWE replaced by exactly one mask token.
// No fallback: throws MweNotFoundError when the MWE cannot be located.
TextChunk build_context_exclusive(const Instance& instance,
                                  const std::string& mask_token);

// The MWE form alone as a single segment.
TextChunk build_mwe_exclusive(const Instance& instance, FormMode form_mode);

// All chunks the given variant feeds to the encoder, in feature order.
// Rows whose MWE cannot be localized degrade instead of failing the run:
// the tail/MWE-exclusive segments fall back to the lemma and the
// context-exclusive view is left unmasked (both logged).
std::vector<TextChunk> build_views(const Instance& instance,
                                   const VariantConfig& config);

// The view kinds `build_views` produces for a variant, in order.
std::vector<ViewKind> views_for_variant(Variant variant);

// True when the variant adds trainable segment embeddings (all but C).
bool variant_uses_segments(Variant variant);

}  // namespace idiom

#endif  // IDIOM_CHUNKING_HPP_
