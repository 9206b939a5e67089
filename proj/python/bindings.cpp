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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "idiom/chunking.hpp"
#include "idiom/corpus.hpp"
#include "idiom/encoding.hpp"
#include "idiom/errors.hpp"
#include "idiom/evaluation.hpp"
#include "idiom/runner.hpp"
#include "idiom/tokenizer.hpp"
#include "idiom/training.hpp"

namespace py = pybind11;
using namespace py::literals;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) {
        out[py::str(key)] = json_to_py(value);
      }
      return out;
    }
    default: return py::none();
  }
}

json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    json out = json::object();
    for (const auto& item : obj.cast<py::dict>()) {
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    }
    return out;
  }
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    json out = json::array();
    for (const auto& item : obj.cast<py::sequence>()) {
      out.push_back(py_to_json(item));
    }
    return out;
  }
  throw py::type_error("unsupported value in metadata/config");
}

// Lets Python classes implement the tokenizer contract (e.g. wrapping a
// pretrained subword tokenizer with offsets).
class PyTokenizer : public idiom::TokenizerContract {
 public:
  using idiom::TokenizerContract::TokenizerContract;

  std::vector<idiom::TokenSpan> tokenize_with_offsets(
      const std::string& text) const override {
    PYBIND11_OVERRIDE_PURE(std::vector<idiom::TokenSpan>,
                           idiom::TokenizerContract, tokenize_with_offsets,
                           text);
  }
  std::int32_t pad_id() const override {
    PYBIND11_OVERRIDE_PURE(std::int32_t, idiom::TokenizerContract, pad_id);
  }
  std::int32_t bos_id() const override {
    PYBIND11_OVERRIDE_PURE(std::int32_t, idiom::TokenizerContract, bos_id);
  }
  std::int32_t sep_id() const override {
    PYBIND11_OVERRIDE_PURE(std::int32_t, idiom::TokenizerContract, sep_id);
  }
  std::int32_t mask_id() const override {
    PYBIND11_OVERRIDE_PURE(std::int32_t, idiom::TokenizerContract, mask_id);
  }
  std::int32_t vocab_size() const override {
    PYBIND11_OVERRIDE_PURE(std::int32_t, idiom::TokenizerContract, vocab_size);
  }
  std::string mask_piece() const override {
    PYBIND11_OVERRIDE(std::string, idiom::TokenizerContract, mask_piece);
  }
  std::string name() const override {
    PYBIND11_OVERRIDE(std::string, idiom::TokenizerContract, name);
  }
};

idiom::RunConfig config_from_path(const std::string& path,
                                  const std::vector<std::string>& overrides) {
  return idiom::load_run_config(path, overrides);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Idiomaticity detection core: contextual views over a pluggable "
            "encoder, training harness, metrics and reports.";

  // ---- errors ------------------------------------------------------------
  const auto base = py::register_exception<idiom::Error>(m, "IdiomError");
  py::register_exception<idiom::MweNotFoundError>(m, "MweNotFoundError",
                                                  base.ptr());
  py::register_exception<idiom::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<idiom::BudgetTooSmallError>(m, "BudgetTooSmallError",
                                                     base.ptr());

  // ---- corpus ------------------------------------------------------------
  py::enum_<idiom::Lang>(m, "Lang")
      .value("EN", idiom::Lang::kEN)
      .value("PT", idiom::Lang::kPT)
      .value("GL", idiom::Lang::kGL)
      .value("OTHER", idiom::Lang::kOther);
  py::enum_<idiom::Label>(m, "Label")
      .value("NON_IDIOMATIC", idiom::Label::kNonIdiomatic)
      .value("IDIOMATIC", idiom::Label::kIdiomatic)
      .value("UNLABELED", idiom::Label::kUnlabeled);
  py::enum_<idiom::Setting>(m, "Setting")
      .value("ZERO_SHOT", idiom::Setting::kZeroShot)
      .value("ONE_SHOT", idiom::Setting::kOneShot);
  py::enum_<idiom::FormMode>(m, "FormMode")
      .value("INFLECTIONAL", idiom::FormMode::kInflectional)
      .value("ORIGINAL", idiom::FormMode::kOriginal);

  py::class_<idiom::Instance>(m, "Instance")
      .def(py::init<>())
      .def_readwrite("id", &idiom::Instance::id)
      .def_readwrite("lang", &idiom::Instance::lang)
      .def_readwrite("lang_raw", &idiom::Instance::lang_raw)
      .def_readwrite("mwe_lemma", &idiom::Instance::mwe_lemma)
      .def_readwrite("previous", &idiom::Instance::previous)
      .def_readwrite("target", &idiom::Instance::target)
      .def_readwrite("next", &idiom::Instance::next)
      .def_readwrite("label", &idiom::Instance::label)
      .def_readwrite("setting", &idiom::Instance::setting)
      .def("__repr__", [](const idiom::Instance& i) {
        return "<Instance id=" + i.id + " mwe='" + i.mwe_lemma + "'>";
      });

  py::class_<idiom::MweSpan>(m, "MweSpan")
      .def_readonly("char_start", &idiom::MweSpan::char_start)
      .def_readonly("char_end", &idiom::MweSpan::char_end)
      .def_readonly("surface", &idiom::MweSpan::surface);

  py::class_<idiom::ColumnMapping>(m, "ColumnMapping")
      .def(py::init<>())
      .def_readwrite("id", &idiom::ColumnMapping::id)
      .def_readwrite("language", &idiom::ColumnMapping::language)
      .def_readwrite("mwe", &idiom::ColumnMapping::mwe)
      .def_readwrite("previous", &idiom::ColumnMapping::previous)
      .def_readwrite("target", &idiom::ColumnMapping::target)
      .def_readwrite("next", &idiom::ColumnMapping::next)
      .def_readwrite("label", &idiom::ColumnMapping::label)
      .def_readwrite("setting", &idiom::ColumnMapping::setting)
      .def_readwrite("label_required", &idiom::ColumnMapping::label_required)
      .def_readwrite("default_setting", &idiom::ColumnMapping::default_setting)
      .def_readwrite("label_values", &idiom::ColumnMapping::label_values);

  m.def("parse_dataset_file", &idiom::parse_dataset_file, "path"_a,
        "schema"_a, "Parse a delimited task data file into instances.");
  m.def("parse_dataset_string", &idiom::parse_dataset_string, "text"_a,
        "schema"_a);
  m.def("localize_mwe", &idiom::localize_mwe, "target"_a, "mwe_lemma"_a,
        "Locate the leftmost (inflection-tolerant) occurrence of the MWE.");
  m.def("try_localize_mwe", &idiom::try_localize_mwe, "target"_a,
        "mwe_lemma"_a);
  m.def("surface_form", &idiom::surface_form, "instance"_a, "mode"_a);

  // ---- chunking ----------------------------------------------------------
  py::enum_<idiom::ViewKind>(m, "ViewKind")
      .value("PREV_TARGET", idiom::ViewKind::kPrevTarget)
      .value("TARGET_NEXT", idiom::ViewKind::kTargetNext)
      .value("CONTEXT_EXCLUSIVE", idiom::ViewKind::kContextExclusive)
      .value("MWE_EXCLUSIVE", idiom::ViewKind::kMweExclusive)
      .value("TARGET_ONLY", idiom::ViewKind::kTargetOnly)
      .value("TRIPLE_CONCAT", idiom::ViewKind::kTripleConcat);
  py::enum_<idiom::Variant>(m, "Variant")
      .value("FULL", idiom::Variant::kFull)
      .value("A", idiom::Variant::kA)
      .value("B", idiom::Variant::kB)
      .value("C", idiom::Variant::kC)
      .value("D", idiom::Variant::kD)
      .value("E", idiom::Variant::kE)
      .value("F", idiom::Variant::kF);

  py::class_<idiom::SegmentSpan>(m, "SegmentSpan")
      .def_readonly("segment", &idiom::SegmentSpan::segment)
      .def_readonly("char_start", &idiom::SegmentSpan::char_start)
      .def_readonly("char_end", &idiom::SegmentSpan::char_end);

  py::class_<idiom::TextChunk>(m, "TextChunk")
      .def_readonly("kind", &idiom::TextChunk::kind)
      .def_readonly("segments", &idiom::TextChunk::segments)
      .def_readonly("mwe_surface", &idiom::TextChunk::mwe_surface)
      .def_readonly("mwe_char_spans", &idiom::TextChunk::mwe_char_spans)
      .def_readonly("repeated_tail", &idiom::TextChunk::repeated_tail);

  py::class_<idiom::VariantConfig>(m, "VariantConfig")
      .def(py::init([](idiom::Variant variant, idiom::FormMode form_mode,
                       const std::string& mask_token) {
             idiom::VariantConfig cfg;
             cfg.variant = variant;
             cfg.form_mode = form_mode;
             cfg.mask_token = mask_token;
             return cfg;
           }),
           "variant"_a = idiom::Variant::kFull,
           "form_mode"_a = idiom::FormMode::kInflectional,
           "mask_token"_a = "<mask>")
      .def_readwrite("variant", &idiom::VariantConfig::variant)
      .def_readwrite("form_mode", &idiom::VariantConfig::form_mode)
      .def_readwrite("mask_token", &idiom::VariantConfig::mask_token);

  m.def("parse_variant", &idiom::parse_variant, "name"_a);
  m.def("build_prev_target", &idiom::build_prev_target, "instance"_a,
        "form_mode"_a = idiom::FormMode::kInflectional, "repeat_mwe"_a = true);
  m.def("build_target_next", &idiom::build_target_next, "instance"_a,
        "form_mode"_a = idiom::FormMode::kInflectional, "repeat_mwe"_a = true);
  m.def("build_context_exclusive", &idiom::build_context_exclusive,
        "instance"_a, "mask_token"_a = "<mask>");
  m.def("build_mwe_exclusive", &idiom::build_mwe_exclusive, "instance"_a,
        "form_mode"_a = idiom::FormMode::kInflectional);
  m.def("build_views", &idiom::build_views, "instance"_a, "config"_a,
        "All input views a variant feeds to the encoder, in feature order.");
  m.def("views_for_variant", &idiom::views_for_variant, "variant"_a);

  // ---- encoding ----------------------------------------------------------
  py::class_<idiom::TokenSpan>(m, "TokenSpan")
      .def(py::init([](std::int32_t id, std::int32_t start, std::int32_t end) {
             return idiom::TokenSpan{id, start, end};
           }),
           "id"_a, "char_start"_a, "char_end"_a)
      .def_readwrite("id", &idiom::TokenSpan::id)
      .def_readwrite("char_start", &idiom::TokenSpan::char_start)
      .def_readwrite("char_end", &idiom::TokenSpan::char_end);

  py::class_<idiom::TokenizerContract, PyTokenizer,
             std::shared_ptr<idiom::TokenizerContract>>(m, "TokenizerContract")
      .def(py::init<>())
      .def("tokenize_with_offsets",
           &idiom::TokenizerContract::tokenize_with_offsets, "text"_a)
      .def("pad_id", &idiom::TokenizerContract::pad_id)
      .def("bos_id", &idiom::TokenizerContract::bos_id)
      .def("sep_id", &idiom::TokenizerContract::sep_id)
      .def("mask_id", &idiom::TokenizerContract::mask_id)
      .def("vocab_size", &idiom::TokenizerContract::vocab_size)
      .def("mask_piece", &idiom::TokenizerContract::mask_piece)
      .def("name", &idiom::TokenizerContract::name);

  py::class_<idiom::HashWordTokenizer, idiom::TokenizerContract,
             std::shared_ptr<idiom::HashWordTokenizer>>(m, "HashWordTokenizer")
      .def(py::init([](std::int32_t vocab, std::int32_t max_piece_cp) {
             return std::make_shared<idiom::HashWordTokenizer>(
                 idiom::HashTokenizerConfig{vocab, max_piece_cp});
           }),
           "vocab"_a = 32768, "max_piece_cp"_a = 4)
      .def("decode", &idiom::HashWordTokenizer::decode, "ids"_a);

  py::class_<idiom::EncodedInput>(m, "EncodedInput")
      .def_readonly("token_ids", &idiom::EncodedInput::token_ids)
      .def_readonly("attention_mask", &idiom::EncodedInput::attention_mask)
      .def_readonly("segment_ids", &idiom::EncodedInput::segment_ids)
      .def_readonly("mwe_indices", &idiom::EncodedInput::mwe_indices)
      .def_readonly("view", &idiom::EncodedInput::view)
      .def("__len__",
           [](const idiom::EncodedInput& e) { return e.token_ids.size(); });

  m.def("encode_chunk", &idiom::encode_chunk, "chunk"_a, "tokenizer"_a,
        "max_len"_a = 300, "use_segments"_a = true,
        "Tokenize one chunk: separators, MWE marking, truncation policy.");

  // ---- evaluation ----------------------------------------------------------
  m.def("macro_f1", &idiom::macro_f1, "golds"_a, "preds"_a,
        "Unweighted mean of per-class F1 over both classes (labels 0/1).");

  py::class_<idiom::Prediction>(m, "Prediction")
      .def(py::init<>())
      .def_readwrite("instance_id", &idiom::Prediction::instance_id)
      .def_readwrite("lang", &idiom::Prediction::lang)
      .def_readwrite("lang_raw", &idiom::Prediction::lang_raw)
      .def_readwrite("setting", &idiom::Prediction::setting)
      .def_readwrite("prob_idiomatic", &idiom::Prediction::prob_idiomatic)
      .def_readwrite("predicted", &idiom::Prediction::predicted);

  m.def("predicted_label", &idiom::predicted_label, "prob_idiomatic"_a);
  m.def(
      "build_report",
      [](const std::vector<idiom::Prediction>& preds,
         const std::vector<idiom::Instance>& golds, const py::dict& metadata) {
        const auto report =
            idiom::build_report(preds, golds, py_to_json(metadata));
        py::dict out = json_to_py(idiom::report_to_json(report));
        out["row"] = idiom::render_report_row(report);
        out["table"] = idiom::render_report_table(report);
        return out;
      },
      "predictions"_a, "golds"_a, "metadata"_a = py::dict(),
      "Per-language + pooled macro-F1 report (percent, 2 decimals).");
  m.def(
      "render_report_row",
      [](const std::vector<std::pair<std::string, double>>& per_language,
         double overall) {
        return idiom::render_report_row(
            idiom::report_from_scores(per_language, overall));
      },
      "per_language"_a, "overall"_a);

  // ---- training ------------------------------------------------------------
  m.def("lr_at", &idiom::lr_at, "step"_a, "total_steps"_a,
        "steps_per_epoch"_a, "base_lr"_a,
        "Constant through two epochs, then linear to zero.");
  m.def(
      "select_checkpoint",
      [](const std::vector<double>& per_epoch_dev_f1, const std::string& mode,
         int fixed_epoch) {
        idiom::RunResult run;
        run.per_epoch_dev_f1 = per_epoch_dev_f1;
        idiom::Selection sel;
        if (mode == "best_dev_f1" || mode == "best") {
          sel.mode = idiom::SelectionMode::kBestDevF1;
        } else if (mode == "fixed_epoch" || mode == "epoch") {
          sel.mode = idiom::SelectionMode::kFixedEpoch;
          sel.fixed_epoch = fixed_epoch;
        } else {
          throw idiom::ConfigError("mode must be 'best_dev_f1' or "
                                   "'fixed_epoch'");
        }
        return idiom::select_checkpoint(run, sel);
      },
      "per_epoch_dev_f1"_a, "mode"_a = "best_dev_f1", "fixed_epoch"_a = 9);
  m.def("one_shot_coverage",
        [](const std::vector<idiom::Instance>& train,
           const std::vector<idiom::Instance>& eval_set) {
          const auto cov = idiom::one_shot_coverage(train, eval_set);
          return py::dict("eval_mwes"_a = cov.eval_mwes,
                          "covered"_a = cov.covered, "paired"_a = cov.paired,
                          "uncovered"_a = cov.uncovered);
        },
        "train"_a, "eval"_a);

  // ---- end-to-end runs -----------------------------------------------------
  m.def(
      "run_training",
      [](const std::string& config_path,
         const std::vector<std::string>& overrides) {
        const auto cfg = config_from_path(config_path, overrides);
        const auto artifacts = idiom::run_training(cfg, cfg.output_dir);
        py::dict out = json_to_py(artifacts.summary_json);
        out["output_dir"] = cfg.output_dir;
        return out;
      },
      "config_path"_a, "overrides"_a = std::vector<std::string>{},
      "Multi-seed sweep per the run config; returns the summary.");
  m.def(
      "run_evaluate",
      [](const std::string& config_path, const std::string& checkpoint,
         const std::string& data_path,
         const std::vector<std::string>& overrides) {
        const auto cfg = config_from_path(config_path, overrides);
        const auto report = idiom::run_evaluate(cfg, checkpoint, data_path);
        py::dict out = json_to_py(idiom::report_to_json(report));
        out["row"] = idiom::render_report_row(report);
        return out;
      },
      "config_path"_a, "checkpoint"_a, "data"_a = "",
      "overrides"_a = std::vector<std::string>{});
  m.def(
      "run_predict",
      [](const std::string& config_path, const std::string& checkpoint,
         const std::string& data_path, const std::string& out_path,
         const std::vector<std::string>& overrides) {
        const auto cfg = config_from_path(config_path, overrides);
        return idiom::run_predict(cfg, checkpoint, data_path, out_path);
      },
      "config_path"_a, "checkpoint"_a, "data"_a, "out"_a,
      "overrides"_a = std::vector<std::string>{},
      "Write a submission file; returns the number of predictions.");

#ifdef IDIOM_VERSION_INFO
  m.attr("__version__") = IDIOM_VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
