# Copyright 2026 The idiomdetect Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Idiomaticity detection for multi-word expressions.

Contextual input views (surrounding-context pairs, a masked
context-exclusive view, an MWE-exclusive view) over a pluggable encoder,
plus the training/evaluation harness: multi-seed sweeps, ablation variants
A-F, per-language macro-F1 reports and submission files.

The heavy lifting lives in the compiled extension ``idiomdetect._core``;
this package re-exports its public surface.
"""

from idiomdetect._core import (  # noqa: F401
    BudgetTooSmallError,
    ColumnMapping,
    ConfigError,
    EncodedInput,
    FormMode,
    HashWordTokenizer,
    IdiomError,
    Instance,
    Label,
    Lang,
    MweNotFoundError,
    MweSpan,
    Prediction,
    Setting,
    SegmentSpan,
    TextChunk,
    TokenSpan,
    TokenizerContract,
    Variant,
    VariantConfig,
    ViewKind,
    __version__,
    build_context_exclusive,
    build_mwe_exclusive,
    build_prev_target,
    build_report,
    build_target_next,
    build_views,
    encode_chunk,
    localize_mwe,
    lr_at,
    macro_f1,
    one_shot_coverage,
    parse_dataset_file,
    parse_dataset_string,
    parse_variant,
    predicted_label,
    render_report_row,
    run_evaluate,
    run_predict,
    run_training,
    select_checkpoint,
    surface_form,
    try_localize_mwe,
    views_for_variant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
