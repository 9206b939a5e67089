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

#include "idiom/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "idiom/errors.hpp"
#include "idiom/util.hpp"

namespace idiom {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError("at '" + field + "': " + message);
}

const json& fetch(const json& j, const std::string& field,
                  const std::string& path) {
  if (!j.contains(field)) fail(path.empty() ? field : path, "missing field");
  return j[field];
}

template <typename T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(path, "wrong type");
  }
}

template <typename T>
T get_field(const json& j, const std::string& field, const std::string& prefix,
            T fallback) {
  if (!j.contains(field)) return fallback;
  return get_as<T>(j[field], prefix + field);
}

std::string resolve_path(const std::string& path, const std::string& base) {
  fs::path p(path);
  if (p.is_absolute() || base.empty()) return path;
  return (fs::path(base) / p).lexically_normal().string();
}

void require_exists(const std::string& path, const std::string& field) {
  if (!fs::exists(path)) fail(field, "file not found: " + path);
}

Selection parse_selection(const std::string& raw, const std::string& field) {
  const std::string k = fold_case_utf8(trim(raw));
  Selection sel;
  if (k == "best" || k == "best_dev_f1") {
    sel.mode = SelectionMode::kBestDevF1;
    return sel;
  }
  const auto colon = k.find(':');
  const std::string head = colon == std::string::npos ? k : k.substr(0, colon);
  if (head == "epoch" || head == "fixed_epoch") {
    if (colon == std::string::npos) {
      fail(field, "fixed-epoch selection needs ':<epoch>', e.g. 'epoch:9'");
    }
    try {
      sel.fixed_epoch = std::stoi(k.substr(colon + 1));
    } catch (const std::exception&) {
      fail(field, "bad epoch number in '" + raw + "'");
    }
    sel.mode = SelectionMode::kFixedEpoch;
    return sel;
  }
  fail(field, "expected 'best_dev_f1' or 'epoch:<k>', got '" + raw + "'");
}

std::string selection_to_string(const Selection& sel) {
  return sel.mode == SelectionMode::kBestDevF1
             ? "best_dev_f1"
             : "epoch:" + std::to_string(sel.fixed_epoch);
}

}  // namespace

RunConfig parse_run_config(const json& j, const std::string& base_dir) {
  RunConfig cfg;

  // data
  const json& data = fetch(j, "data", "data");
  if (data.contains("train")) {
    if (data["train"].is_string()) {
      cfg.data.train_paths.push_back(
          resolve_path(data["train"].get<std::string>(), base_dir));
    } else if (data["train"].is_array()) {
      int i = 0;
      for (const auto& p : data["train"]) {
        cfg.data.train_paths.push_back(resolve_path(
            get_as<std::string>(p, "data.train[" + std::to_string(i) + "]"),
            base_dir));
        ++i;
      }
    } else {
      fail("data.train", "expected a path or list of paths");
    }
  }
  for (std::size_t i = 0; i < cfg.data.train_paths.size(); ++i) {
    require_exists(cfg.data.train_paths[i],
                   "data.train[" + std::to_string(i) + "]");
  }
  if (data.contains("dev")) {
    cfg.data.dev_path =
        resolve_path(get_as<std::string>(data["dev"], "data.dev"), base_dir);
    require_exists(cfg.data.dev_path, "data.dev");
  }
  if (data.contains("test")) {
    cfg.data.test_path =
        resolve_path(get_as<std::string>(data["test"], "data.test"), base_dir);
    require_exists(cfg.data.test_path, "data.test");
  }

  if (data.contains("columns")) {
    const json& cols = data["columns"];
    ColumnMapping& m = cfg.data.columns;
    m.id = get_field<std::string>(cols, "id", "data.columns.", m.id);
    m.language =
        get_field<std::string>(cols, "language", "data.columns.", m.language);
    m.mwe = get_field<std::string>(cols, "mwe", "data.columns.", m.mwe);
    m.previous =
        get_field<std::string>(cols, "previous", "data.columns.", m.previous);
    m.target = get_field<std::string>(cols, "target", "data.columns.", m.target);
    m.next = get_field<std::string>(cols, "next", "data.columns.", m.next);
    m.label = get_field<std::string>(cols, "label", "data.columns.", m.label);
    m.setting =
        get_field<std::string>(cols, "setting", "data.columns.", m.setting);
  }
  if (data.contains("label_values")) {
    for (const auto& [raw, value] : data["label_values"].items()) {
      const std::string v =
          get_as<std::string>(value, "data.label_values." + raw);
      if (v == "idiomatic") {
        cfg.data.columns.label_values[raw] = Label::kIdiomatic;
      } else if (v == "non_idiomatic") {
        cfg.data.columns.label_values[raw] = Label::kNonIdiomatic;
      } else {
        fail("data.label_values." + raw,
             "expected 'idiomatic' or 'non_idiomatic', got '" + v + "'");
      }
    }
    // The inverse mapping drives submission output.
    for (const auto& [raw, label] : cfg.data.columns.label_values) {
      if (!cfg.data.label_encoding.count(label)) {
        cfg.data.label_encoding[label] = raw;
      }
    }
  }
  if (data.contains("default_setting")) {
    cfg.data.columns.default_setting = parse_setting(
        get_as<std::string>(data["default_setting"], "data.default_setting"));
  }

  // encoder
  if (j.contains("encoder")) {
    const json& enc = j["encoder"];
    cfg.encoder_id = get_field<std::string>(enc, "id", "encoder.", cfg.encoder_id);
    cfg.encoder.d_model =
        get_field<int>(enc, "d_model", "encoder.", cfg.encoder.d_model);
    cfg.encoder.layers =
        get_field<int>(enc, "layers", "encoder.", cfg.encoder.layers);
    cfg.encoder.heads =
        get_field<int>(enc, "heads", "encoder.", cfg.encoder.heads);
    cfg.encoder.d_ff = get_field<int>(enc, "d_ff", "encoder.", cfg.encoder.d_ff);
    cfg.encoder.max_positions = get_field<int>(enc, "max_positions", "encoder.",
                                               cfg.encoder.max_positions);
    cfg.encoder.dropout =
        get_field<double>(enc, "dropout", "encoder.", cfg.encoder.dropout);
    if (cfg.encoder.d_model < 2 || cfg.encoder.layers < 1 ||
        cfg.encoder.heads < 1) {
      fail("encoder", "d_model/layers/heads must be positive");
    }
    if (cfg.encoder.d_model % cfg.encoder.heads != 0) {
      fail("encoder.heads", "d_model must be divisible by heads");
    }
  }
  if (cfg.encoder_id != "toy" && cfg.encoder_id.rfind("toy:", 0) != 0) {
    fail("encoder.id",
         "unknown encoder '" + cfg.encoder_id +
             "'; this build ships the 'toy' family, pretrained encoders "
             "integrate through the Python bindings");
  }

  // model
  if (j.contains("model")) {
    const json& m = j["model"];
    cfg.model.d_proj = get_field<int>(m, "d_proj", "model.", cfg.model.d_proj);
    cfg.model.dropout =
        get_field<double>(m, "dropout", "model.", cfg.model.dropout);
    if (cfg.model.d_proj < 1) fail("model.d_proj", "must be >= 1");
    if (cfg.model.dropout < 0.0 || cfg.model.dropout >= 1.0) {
      fail("model.dropout", "must be in [0, 1)");
    }
  }

  // variant / form mode / mask token
  if (j.contains("variant")) {
    try {
      cfg.variant.variant =
          parse_variant(get_as<std::string>(j["variant"], "variant"));
    } catch (const UnknownVariantError& e) {
      fail("variant", e.what());
    }
  }
  cfg.model.variant = cfg.variant.variant;
  if (j.contains("form_mode")) {
    try {
      cfg.variant.form_mode = parse_form_mode(
          get_as<std::string>(j["form_mode"], "form_mode"));
    } catch (const ConfigError& e) {
      fail("form_mode", e.what());
    }
  }
  cfg.variant.mask_token = get_field<std::string>(
      j, "mask_token", "", cfg.variant.mask_token);
  if (cfg.variant.mask_token.empty()) fail("mask_token", "must be non-empty");

  // train
  if (j.contains("train")) {
    const json& t = j["train"];
    if (t.contains("seeds")) {
      cfg.train.seeds =
          get_as<std::vector<std::uint64_t>>(t["seeds"], "train.seeds");
      if (cfg.train.seeds.empty()) fail("train.seeds", "must be non-empty");
    }
    cfg.train.epochs = get_field<int>(t, "epochs", "train.", cfg.train.epochs);
    cfg.train.lr = get_field<double>(t, "lr", "train.", cfg.train.lr);
    cfg.train.train_batch =
        get_field<int>(t, "train_batch", "train.", cfg.train.train_batch);
    cfg.train.eval_batch =
        get_field<int>(t, "eval_batch", "train.", cfg.train.eval_batch);
    cfg.train.max_len = get_field<int>(t, "max_len", "train.", cfg.train.max_len);
    cfg.train.weight_decay = get_field<double>(t, "weight_decay", "train.",
                                               cfg.train.weight_decay);
    cfg.train.eval_train =
        get_field<bool>(t, "eval_train", "train.", cfg.train.eval_train);
    cfg.train.keep_all_checkpoints = get_field<bool>(
        t, "keep_all_checkpoints", "train.", cfg.train.keep_all_checkpoints);
    if (t.contains("selection")) {
      cfg.train.selection = parse_selection(
          get_as<std::string>(t["selection"], "train.selection"),
          "train.selection");
    }
    if (cfg.train.epochs < 1) fail("train.epochs", "must be >= 1");
    if (cfg.train.lr <= 0.0) fail("train.lr", "must be > 0");
    if (cfg.train.train_batch < 1) fail("train.train_batch", "must be >= 1");
    if (cfg.train.eval_batch < 1) fail("train.eval_batch", "must be >= 1");
    if (cfg.train.max_len < 8) fail("train.max_len", "must be >= 8");
    if (cfg.train.selection.mode == SelectionMode::kFixedEpoch &&
        (cfg.train.selection.fixed_epoch < 1 ||
         cfg.train.selection.fixed_epoch > cfg.train.epochs)) {
      fail("train.selection",
           "fixed epoch must be within 1.." + std::to_string(cfg.train.epochs));
    }
  }
  cfg.train.dropout = cfg.model.dropout;

  if (j.contains("setting")) {
    try {
      cfg.setting =
          parse_setting(get_as<std::string>(j["setting"], "setting"));
    } catch (const MalformedRowError& e) {
      fail("setting", e.what());
    }
  }

  cfg.output_dir = resolve_path(
      get_field<std::string>(j, "output_dir", "", std::string("runs/run")),
      base_dir);
  cfg.deterministic = get_field<bool>(j, "deterministic", "", true);

  if (cfg.train.max_len > cfg.encoder.max_positions) {
    fail("train.max_len", "exceeds encoder.max_positions");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!overrides.empty()) j = apply_overrides(j, overrides);
  return parse_run_config(j, fs::path(path).parent_path().string());
}

nlohmann::json apply_overrides(json config,
                               const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + ov + "' is not of the form key=value");
    }
    const std::string key = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    json* node = &config;
    std::size_t pos = 0;
    while (true) {
      const auto dot = key.find('.', pos);
      const std::string part =
          key.substr(pos, dot == std::string::npos ? key.npos : dot - pos);
      if (part.empty()) throw ConfigError("bad override key '" + key + "'");
      if (dot == std::string::npos) {
        json parsed;
        try {
          parsed = json::parse(value);
        } catch (const json::exception&) {
          parsed = value;  // bare strings stay strings
        }
        (*node)[part] = parsed;
        break;
      }
      node = &(*node)[part];
      pos = dot + 1;
    }
  }
  return config;
}

nlohmann::json run_config_to_json(const RunConfig& cfg) {
  json j;
  j["data"]["train"] = cfg.data.train_paths;
  j["data"]["dev"] = cfg.data.dev_path;
  j["data"]["test"] = cfg.data.test_path;
  j["data"]["columns"] = {
      {"id", cfg.data.columns.id},       {"language", cfg.data.columns.language},
      {"mwe", cfg.data.columns.mwe},     {"previous", cfg.data.columns.previous},
      {"target", cfg.data.columns.target}, {"next", cfg.data.columns.next},
      {"label", cfg.data.columns.label}, {"setting", cfg.data.columns.setting}};
  json lv = json::object();
  for (const auto& [raw, label] : cfg.data.columns.label_values) {
    lv[raw] = to_string(label);
  }
  j["data"]["label_values"] = lv;
  j["encoder"] = {{"id", cfg.encoder_id},
                  {"d_model", cfg.encoder.d_model},
                  {"layers", cfg.encoder.layers},
                  {"heads", cfg.encoder.heads},
                  {"d_ff", cfg.encoder.d_ff},
                  {"max_positions", cfg.encoder.max_positions},
                  {"dropout", cfg.encoder.dropout}};
  j["model"] = {{"d_proj", cfg.model.d_proj}, {"dropout", cfg.model.dropout}};
  j["variant"] = to_string(cfg.variant.variant);
  j["form_mode"] = to_string(cfg.variant.form_mode);
  j["mask_token"] = cfg.variant.mask_token;
  j["train"] = {{"seeds", cfg.train.seeds},
                {"epochs", cfg.train.epochs},
                {"lr", cfg.train.lr},
                {"train_batch", cfg.train.train_batch},
                {"eval_batch", cfg.train.eval_batch},
                {"max_len", cfg.train.max_len},
                {"weight_decay", cfg.train.weight_decay},
                {"selection", selection_to_string(cfg.train.selection)},
                {"eval_train", cfg.train.eval_train},
                {"keep_all_checkpoints", cfg.train.keep_all_checkpoints}};
  j["setting"] = to_string(cfg.setting);
  j["output_dir"] = cfg.output_dir;
  j["deterministic"] = cfg.deterministic;
  return j;
}

std::string model_fingerprint(const RunConfig& cfg) {
  json j = {{"encoder_id", cfg.encoder_id},
            {"d_model", cfg.encoder.d_model},
            {"layers", cfg.encoder.layers},
            {"heads", cfg.encoder.heads},
            {"d_ff", cfg.encoder.d_ff},
            {"max_positions", cfg.encoder.max_positions},
            {"d_proj", cfg.model.d_proj},
            {"variant", to_string(cfg.variant.variant)},
            {"form_mode", to_string(cfg.variant.form_mode)},
            {"mask_token", cfg.variant.mask_token},
            {"max_len", cfg.train.max_len}};
  return to_hex(fnv1a64(j.dump()));
}

std::shared_ptr<TokenizerContract> build_tokenizer(const RunConfig& cfg) {
  return make_tokenizer(cfg.encoder_id);
}

std::unique_ptr<IdiomaticityModel> build_model(const RunConfig& cfg,
                                               std::mt19937_64& init_rng) {
  ToyEncoderConfig enc_cfg = cfg.encoder;
  enc_cfg.vocab = build_tokenizer(cfg)->vocab_size();
  auto encoder = std::make_shared<ToyTransformerEncoder>(enc_cfg, init_rng);
  ModelConfig model_cfg = cfg.model;
  model_cfg.variant = cfg.variant.variant;
  return std::make_unique<IdiomaticityModel>(std::move(encoder), model_cfg,
                                             init_rng);
}

CheckpointMeta checkpoint_meta_for(const RunConfig& cfg) {
  CheckpointMeta meta;
  meta.fingerprint = model_fingerprint(cfg);
  meta.extra = {{"tokenizer", build_tokenizer(cfg)->name()},
                {"encoder_id", cfg.encoder_id},
                {"variant", to_string(cfg.variant.variant)},
                {"form_mode", to_string(cfg.variant.form_mode)},
                {"d_proj", cfg.model.d_proj},
                {"max_len", cfg.train.max_len}};
  return meta;
}

std::vector<Instance> load_instances(const RunConfig& cfg,
                                     const std::string& path) {
  return parse_dataset_file(path, cfg.data.columns);
}

std::vector<Instance> load_train_instances(const RunConfig& cfg) {
  std::vector<Instance> out;
  for (const std::string& path : cfg.data.train_paths) {
    auto part = load_instances(cfg, path);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string resolve_checkpoint_path(const std::string& path) {
  if (fs::exists(path)) return path;
  const char* cache = std::getenv("IDIOM_CACHE_DIR");
  if (cache != nullptr) {
    const fs::path alt = fs::path(cache) / path;
    if (fs::exists(alt)) return alt.string();
  }
  throw IoError("checkpoint not found: " + path);
}

}  // namespace idiom
