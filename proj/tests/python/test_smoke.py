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

"""Smoke tests for the python bindings."""

import math
import os
from pathlib import Path

import pytest

import idiomdetect as idm

REPO_ROOT = Path(__file__).resolve().parents[2]
DATA_DIR = Path(os.environ.get("IDIOM_TOY_DATA_DIR", REPO_ROOT / "data/toy"))
CONFIG = Path(os.environ.get("IDIOM_CONFIG_DIR", REPO_ROOT / "configs")) / "toy.json"


def toy_schema():
    schema = idm.ColumnMapping()
    schema.label_values = {"1": idm.Label.IDIOMATIC, "0": idm.Label.NON_IDIOMATIC}
    return schema


def make_instance(target, mwe, previous="", next_=""):
    inst = idm.Instance()
    inst.id = "x"
    inst.lang = idm.Lang.EN
    inst.lang_raw = "EN"
    inst.mwe_lemma = mwe
    inst.previous = previous
    inst.target = target
    inst.next = next_
    return inst


def test_parse_toy_dataset():
    instances = idm.parse_dataset_file(str(DATA_DIR / "train.csv"), toy_schema())
    assert len(instances) == 16
    assert instances[0].mwe_lemma == "wet blanket"
    assert instances[0].label == idm.Label.IDIOMATIC


def test_localization_handles_inflection_and_unicode():
    span = idm.localize_mwe("They handed out wet blankets to everyone", "wet blanket")
    assert span.surface == "wet blankets"
    span = idm.localize_mwe("O meu tio é um pão duro incorrigível.", "pão duro")
    assert span.surface == "pão duro"
    with pytest.raises(idm.MweNotFoundError):
        idm.localize_mwe("nothing here", "wet blanket")


def test_views_and_masking():
    inst = make_instance(
        "Honestly, he was a total wet blanket at the party.",
        "wet blanket",
        previous="The party was going fine.",
        next_="Everyone left early.",
    )
    chunks = idm.build_views(inst, idm.VariantConfig(idm.Variant.FULL))
    assert [c.kind for c in chunks] == [
        idm.ViewKind.PREV_TARGET,
        idm.ViewKind.TARGET_NEXT,
        idm.ViewKind.CONTEXT_EXCLUSIVE,
        idm.ViewKind.MWE_EXCLUSIVE,
    ]
    assert "wet blanket" not in chunks[2].segments[0]
    assert "<mask>" in chunks[2].segments[0]
    assert chunks[3].segments == ["wet blanket"]

    f_chunks = idm.build_views(inst, idm.VariantConfig(idm.Variant.F))
    assert len(f_chunks) == 3


def test_encode_chunk_invariants():
    tok = idm.HashWordTokenizer(vocab=512, max_piece_cp=4)
    inst = make_instance("the wet blanket", "wet blanket")
    chunk = idm.build_mwe_exclusive(inst)
    enc = idm.encode_chunk(chunk, tok, max_len=300, use_segments=True)
    assert len(enc.token_ids) == len(enc.segment_ids) == len(enc.attention_mask)
    assert enc.token_ids[0] == tok.bos_id()
    assert enc.segment_ids[0] == 0
    assert list(enc.mwe_indices) == [i for i, s in enumerate(enc.segment_ids) if s == 1]
    assert tok.decode(list(enc.token_ids)) == "wet blanket"


def test_python_defined_tokenizer_plugs_in():
    class WhitespaceTokenizer(idm.TokenizerContract):
        """Word-level tokenizer with a fixed tiny vocabulary."""

        def __init__(self):
            super().__init__()
            self.vocab = {}

        def tokenize_with_offsets(self, text):
            spans, pos = [], 0
            for word in text.split(" "):
                if word:
                    wid = self.vocab.setdefault(word.lower(), 10 + len(self.vocab))
                    spans.append(idm.TokenSpan(wid, pos, pos + len(word)))
                pos += len(word) + 1
            return spans

        def pad_id(self):
            return 0

        def bos_id(self):
            return 1

        def sep_id(self):
            return 2

        def mask_id(self):
            return 3

        def vocab_size(self):
            return 4096

    tok = WhitespaceTokenizer()
    inst = make_instance("a wet blanket here", "wet blanket")
    chunk = idm.build_prev_target(inst)
    enc = idm.encode_chunk(chunk, tok, max_len=32, use_segments=True)
    # [BOS] a wet blanket here [SEP] wet blanket [SEP]
    assert len(enc.token_ids) == 9
    assert sorted(enc.mwe_indices) == [2, 3, 6, 7]


def test_macro_f1_and_report():
    assert idm.macro_f1([1, 1, 0, 0], [1, 0, 1, 0]) == pytest.approx(0.5)
    assert idm.macro_f1([1, 0], [1, 0]) == pytest.approx(1.0)
    row = idm.render_report_row([("EN", 91.59), ("PT", 84.57), ("GL", 82.87)], 87.50)
    assert row == "91.59 84.57 82.87 87.50"


def test_schedule_and_selection():
    assert idm.lr_at(0, 100, 10, 3e-5) == pytest.approx(3e-5)
    assert idm.lr_at(19, 100, 10, 3e-5) == pytest.approx(3e-5)
    assert idm.lr_at(99, 100, 10, 3e-5) <= 3e-5 / 80 + 1e-12
    assert idm.select_checkpoint([0.5, 0.7, 0.6]) == "epoch_2"
    assert idm.select_checkpoint([0.7] * 10, mode="fixed_epoch", fixed_epoch=9) == "epoch_9"


def test_training_and_predict_round_trip(tmp_path):
    out_dir = tmp_path / "run"
    summary = idm.run_training(
        str(CONFIG),
        overrides=[f"output_dir={out_dir}", "train.epochs=2", "train.seeds=[42]"],
    )
    assert len(summary["runs"]) == 1
    run = summary["runs"][0]
    assert len(run["per_epoch_dev_f1"]) == 2
    assert not run["failed"]

    ckpt = out_dir / "seed_42" / "checkpoints" / run["selected_checkpoint"]
    submission = tmp_path / "submission.csv"
    n = idm.run_predict(
        str(CONFIG),
        str(ckpt) + ".ckpt",
        str(DATA_DIR / "unlabeled.csv"),
        str(submission),
        overrides=["train.epochs=2"],
    )
    assert n == 4
    lines = submission.read_text().strip().splitlines()
    assert lines[0] == "ID,Language,Setting,Label"
    assert len(lines) == 5

    report = idm.run_evaluate(
        str(CONFIG), str(ckpt) + ".ckpt", data="", overrides=["train.epochs=2"]
    )
    assert "overall_macro_f1_pooled" in report
    assert not math.isnan(report["overall_macro_f1_pooled"])
