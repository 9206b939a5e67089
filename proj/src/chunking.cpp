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

#include "idiom/chunking.hpp"

#include <utility>

#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

std::string to_string(ViewKind kind) {
  switch (kind) {
    case ViewKind::kPrevTarget: return "prev_target";
    case ViewKind::kTargetNext: return "target_next";
    case ViewKind::kContextExclusive: return "context_exclusive";
    case ViewKind::kMweExclusive: return "mwe_exclusive";
    case ViewKind::kTargetOnly: return "target_only";
    case ViewKind::kTripleConcat: return "triple_concat";
  }
  return "?";
}

Variant parse_variant(const std::string& raw) {
  const std::string k = fold_case_utf8(trim(raw));
  if (k == "full") return Variant::kFull;
  if (k == "a") return Variant::kA;
  if (k == "b") return Variant::kB;
  if (k == "c") return Variant::kC;
  if (k == "d") return Variant::kD;
  if (k == "e") return Variant::kE;
  if (k == "f") return Variant::kF;
  throw UnknownVariantError("unknown variant '" + raw +
                            "' (expected Full or A..F)");
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::kFull: return "Full";
    case Variant::kA: return "A";
    case Variant::kB: return "B";
    case Variant::kC: return "C";
    case Variant::kD: return "D";
    case Variant::kE: return "E";
    case Variant::kF: return "F";
  }
  return "?";
}

bool variant_uses_segments(Variant variant) { return variant != Variant::kC; }

namespace {

struct ResolvedMwe {
  std::optional<MweSpan> span;   // in-target occurrence, when localizable
  std::string form;              // the string for tails / the MWE-only view
  bool fallback = false;         // lemma used because localization failed
};

ResolvedMwe resolve(const Instance& instance, FormMode form_mode,
                    bool allow_fallback) {
  ResolvedMwe r;
  r.span = try_localize_mwe(instance.target, instance.mwe_lemma);
  if (form_mode == FormMode::kOriginal) {
    r.form = instance.mwe_lemma;
  } else if (r.span) {
    r.form = r.span->surface;
  } else if (allow_fallback) {
    r.form = instance.mwe_lemma;
    r.fallback = true;
    log_warn("instance '" + instance.id + "': MWE '" + instance.mwe_lemma +
             "' not localizable; using the original form for tails");
  } else {
    throw MweNotFoundError("MWE '" + instance.mwe_lemma +
                           "' not found in target: " + instance.target);
  }
  return r;
}

void append_target_segment(TextChunk& chunk, const Instance& instance,
                           const ResolvedMwe& mwe) {
  const auto seg = static_cast<std::int32_t>(chunk.segments.size());
  chunk.segments.push_back(instance.target);
  chunk.roles.push_back(SegmentRole::kTarget);
  if (mwe.span) {
    chunk.mwe_char_spans.push_back(
        {seg, mwe.span->char_start, mwe.span->char_end});
  }
}

void append_tail(TextChunk& chunk, const ResolvedMwe& mwe) {
  const auto seg = static_cast<std::int32_t>(chunk.segments.size());
  chunk.segments.push_back(mwe.form);
  chunk.roles.push_back(SegmentRole::kMweTail);
  chunk.mwe_char_spans.push_back(
      {seg, 0, static_cast<std::int32_t>(utf8_length(mwe.form))});
  chunk.repeated_tail = true;
}

TextChunk build_context_chunk(const Instance& instance, ViewKind kind,
                              FormMode form_mode, bool repeat_mwe,
                              bool allow_fallback) {
  const ResolvedMwe mwe = resolve(instance, form_mode, allow_fallback);
  TextChunk chunk;
  chunk.kind = kind;
  chunk.mwe_surface = mwe.form;
  const bool has_prev =
      (kind == ViewKind::kPrevTarget || kind == ViewKind::kTripleConcat) &&
      !instance.previous.empty();
  const bool has_next =
      (kind == ViewKind::kTargetNext || kind == ViewKind::kTripleConcat) &&
      !instance.next.empty();
  if (has_prev) {
    chunk.segments.push_back(instance.previous);
    chunk.roles.push_back(SegmentRole::kPrevious);
  }
  append_target_segment(chunk, instance, mwe);
  if (has_next) {
    chunk.segments.push_back(instance.next);
    chunk.roles.push_back(SegmentRole::kNext);
  }
  if (repeat_mwe) append_tail(chunk, mwe);
  return chunk;
}

}  // namespace

TextChunk build_prev_target(const Instance& instance, FormMode form_mode,
                            bool repeat_mwe) {
  return build_context_chunk(instance, ViewKind::kPrevTarget, form_mode,
                             repeat_mwe, /*allow_fallback=*/false);
}

TextChunk build_target_next(const Instance& instance, FormMode form_mode,
                            bool repeat_mwe) {
  return build_context_chunk(instance, ViewKind::kTargetNext, form_mode,
                             repeat_mwe, /*allow_fallback=*/false);
}

TextChunk build_target_only(const Instance& instance, FormMode form_mode,
                            bool repeat_mwe) {
  return build_context_chunk(instance, ViewKind::kTargetOnly, form_mode,
                             repeat_mwe, /*allow_fallback=*/false);
}

TextChunk build_triple_concat(const Instance& instance, FormMode form_mode,
                              bool repeat_mwe) {
  return build_context_chunk(instance, ViewKind::kTripleConcat, form_mode,
                             repeat_mwe, /*allow_fallback=*/false);
}

TextChunk build_context_exclusive(const Instance& instance,
                                  const std::string& mask_token) {
  const MweSpan span = localize_mwe(instance.target, instance.mwe_lemma);
  const std::size_t target_len = utf8_length(instance.target);
  std::string masked =
      utf8_substr(instance.target, 0, span.char_start) + mask_token +
      utf8_substr(instance.target, span.char_end, target_len);
  TextChunk chunk;
  chunk.kind = ViewKind::kContextExclusive;
  chunk.segments.push_back(std::move(masked));
  chunk.roles.push_back(SegmentRole::kTarget);
  chunk.mwe_surface = span.surface;
  return chunk;
}

TextChunk build_mwe_exclusive(const Instance& instance, FormMode form_mode) {
  const std::string form = surface_form(instance, form_mode);
  TextChunk chunk;
  chunk.kind = ViewKind::kMweExclusive;
  chunk.segments.push_back(form);
  chunk.roles.push_back(SegmentRole::kMweOnly);
  chunk.mwe_surface = form;
  chunk.mwe_char_spans.push_back(
      {0, 0, static_cast<std::int32_t>(utf8_length(form))});
  return chunk;
}

namespace {

// View ③ for rows where masking is impossible (no span) or intentionally
// skipped (variant E): the bare target sentence, no marked spans.
TextChunk build_unmasked_context_view(const Instance& instance) {
  TextChunk chunk;
  chunk.kind = ViewKind::kContextExclusive;
  chunk.segments.push_back(instance.target);
  chunk.roles.push_back(SegmentRole::kTarget);
  chunk.mwe_surface =
      try_localize_mwe(instance.target, instance.mwe_lemma)
          .value_or(MweSpan{0, 0, instance.mwe_lemma})
          .surface;
  return chunk;
}

TextChunk build_mwe_exclusive_with_fallback(const Instance& instance,
                                            FormMode form_mode) {
  const ResolvedMwe mwe = resolve(instance, form_mode, /*allow_fallback=*/true);
  TextChunk chunk;
  chunk.kind = ViewKind::kMweExclusive;
  chunk.segments.push_back(mwe.form);
  chunk.roles.push_back(SegmentRole::kMweOnly);
  chunk.mwe_surface = mwe.form;
  chunk.mwe_char_spans.push_back(
      {0, 0, static_cast<std::int32_t>(utf8_length(mwe.form))});
  return chunk;
}

}  // namespace

std::vector<ViewKind> views_for_variant(Variant variant) {
  switch (variant) {
    case Variant::kA:
      return {ViewKind::kTargetOnly, ViewKind::kContextExclusive,
              ViewKind::kMweExclusive};
    case Variant::kB:
      return {ViewKind::kTripleConcat, ViewKind::kContextExclusive,
              ViewKind::kMweExclusive};
    case Variant::kF:
      return {ViewKind::kPrevTarget, ViewKind::kTargetNext,
              ViewKind::kContextExclusive};
    case Variant::kFull:
    case Variant::kC:
    case Variant::kD:
    case Variant::kE:
      return {ViewKind::kPrevTarget, ViewKind::kTargetNext,
              ViewKind::kContextExclusive, ViewKind::kMweExclusive};
  }
  throw UnknownVariantError("unhandled variant");
}

std::vector<TextChunk> build_views(const Instance& instance,
                                   const VariantConfig& config) {
  const Variant v = config.variant;
  const FormMode fm = config.form_mode;
  const bool localizable =
      try_localize_mwe(instance.target, instance.mwe_lemma).has_value();
  const bool repeat_tail = v != Variant::kD;

  const auto context_chunk = [&](ViewKind kind) {
    return build_context_chunk(instance, kind, fm, repeat_tail,
                               /*allow_fallback=*/true);
  };
  const auto masked_view = [&]() -> TextChunk {
    if (v == Variant::kE || !localizable) {
      if (!localizable) {
        log_warn("instance '" + instance.id +
                 "': context-exclusive view left unmasked (MWE not "
                 "localizable)");
      }
      return build_unmasked_context_view(instance);
    }
    return build_context_exclusive(instance, config.mask_token);
  };

  std::vector<TextChunk> chunks;
  switch (v) {
    case Variant::kA:
      chunks.push_back(context_chunk(ViewKind::kTargetOnly));
      chunks.push_back(masked_view());
      chunks.push_back(build_mwe_exclusive_with_fallback(instance, fm));
      break;
    case Variant::kB:
      chunks.push_back(context_chunk(ViewKind::kTripleConcat));
      chunks.push_back(masked_view());
      chunks.push_back(build_mwe_exclusive_with_fallback(instance, fm));
      break;
    case Variant::kF:
      chunks.push_back(context_chunk(ViewKind::kPrevTarget));
      chunks.push_back(context_chunk(ViewKind::kTargetNext));
      chunks.push_back(masked_view());
      break;
    case Variant::kFull:
    case Variant::kC:
    case Variant::kD:
    case Variant::kE:
      chunks.push_back(context_chunk(ViewKind::kPrevTarget));
      chunks.push_back(context_chunk(ViewKind::kTargetNext));
      chunks.push_back(masked_view());
      chunks.push_back(build_mwe_exclusive_with_fallback(instance, fm));
      break;
  }
  return chunks;
}

}  // namespace idiom
