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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "idiom/checkpoint.hpp"
#include "idiom/errors.hpp"
#include "idiom/training.hpp"
#include "test_helpers.hpp"

using namespace idiom;

namespace {

std::vector<Instance> load_toy(const std::string& file) {
  ColumnMapping schema;
  schema.label_values = {{"1", Label::kIdiomatic},
                         {"0", Label::kNonIdiomatic}};
  return parse_dataset_file(std::string(IDIOM_TOY_DATA_DIR) + "/" + file,
                            schema);
}

TrainHarness tiny_harness(Variant variant = Variant::kFull,
                          const std::string& run_dir = "") {
  TrainHarness h;
  HashTokenizerConfig tok_cfg;
  tok_cfg.vocab = 512;
  h.tokenizer = std::make_shared<HashWordTokenizer>(tok_cfg);
  h.model_factory = [variant](std::mt19937_64& rng) {
    auto encoder = std::make_shared<ToyTransformerEncoder>(
        test::tiny_encoder_config(512), rng);
    ModelConfig mc;
    mc.variant = variant;
    mc.d_proj = 8;
    mc.dropout = 0.0;
    return std::make_unique<IdiomaticityModel>(encoder, mc, rng);
  };
  h.variant.variant = variant;
  h.train_data = load_toy("train.csv");
  h.dev_data = load_toy("dev.csv");
  h.run_dir = run_dir;
  h.checkpoint_meta.fingerprint = "test";
  return h;
}

TrainConfig fast_config(int epochs) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.lr = 2e-3;
  cfg.train_batch = 16;
  cfg.eval_batch = 8;
  cfg.max_len = 128;
  cfg.dropout = 0.0;
  cfg.seeds = {42};
  cfg.eval_train = true;
  return cfg;
}

}  // namespace

TEST_CASE("lr_at: constant region, decay shape and endpoint") {
  const double base = 3e-5;
  const std::int64_t spe = 10;
  const std::int64_t total = 100;  // 10 epochs

  for (std::int64_t s = 0; s < 2 * spe; ++s) {
    CHECK(lr_at(s, total, spe, base) == base);
  }
  CHECK(lr_at(2 * spe, total, spe, base) == base);

  // closed-form interpolation oracle for the decay region
  for (std::int64_t s = 2 * spe; s < total; ++s) {
    const double expected =
        base * static_cast<double>(total - s) /
        static_cast<double>(total - 2 * spe);
    CHECK(lr_at(s, total, spe, base) == doctest::Approx(expected).epsilon(1e-12));
  }

  // midpoint of the decay region: base/2 within one step quantum
  const std::int64_t mid = 2 * spe + (total - 2 * spe) / 2;
  const double quantum = base / static_cast<double>(total - 2 * spe);
  CHECK(std::abs(lr_at(mid, total, spe, base) - base / 2.0) <= quantum);

  // final step: 0 within one quantum
  CHECK(lr_at(total - 1, total, spe, base) <= quantum + 1e-18);

  // non-increasing everywhere
  double prev = base;
  for (std::int64_t s = 0; s < total; ++s) {
    const double lr = lr_at(s, total, spe, base);
    CHECK(lr <= prev + 1e-18);
    prev = lr;
  }
}

TEST_CASE("lr_at: short runs stay constant") {
  CHECK(lr_at(0, 20, 10, 1e-3) == 1e-3);
  CHECK(lr_at(19, 20, 10, 1e-3) == 1e-3);  // 2 epochs: no decay region
  CHECK_THROWS_AS(lr_at(20, 20, 10, 1e-3), std::invalid_argument);
}

TEST_CASE("select_checkpoint: argmax, ties and fixed epoch") {
  RunResult run;
  run.per_epoch_dev_f1 = {.5, .7, .6, .7, .65, .6, .6, .6, .6, .6};
  Selection best;
  CHECK(select_checkpoint(run, best) == "epoch_2");

  RunResult tie;
  tie.per_epoch_dev_f1 = {.7, .7, .7};
  CHECK(select_checkpoint(tie, best) == "epoch_1");

  Selection fixed;
  fixed.mode = SelectionMode::kFixedEpoch;
  fixed.fixed_epoch = 9;
  CHECK(select_checkpoint(run, fixed) == "epoch_9");

  RunResult shortrun;
  shortrun.per_epoch_dev_f1 = {.5, .6};
  CHECK_THROWS_AS(select_checkpoint(shortrun, fixed), MissingCheckpointError);
  CHECK_THROWS_AS(select_checkpoint(RunResult{}, best), MissingCheckpointError);
}

TEST_CASE("mean and population std match the hand-computed aggregate") {
  const auto [mean, stddev] = mean_and_population_std({.8, .9});
  CHECK(mean == doctest::Approx(.85).epsilon(1e-12));
  CHECK(stddev == doctest::Approx(.05).epsilon(1e-12));
  const auto [m1, s1] = mean_and_population_std({.75});
  CHECK(m1 == doctest::Approx(.75));
  CHECK(s1 == 0.0);
}

TEST_CASE("train_one is deterministic given the seed") {
  auto harness = tiny_harness();
  const auto cfg = fast_config(3);
  const RunResult a = train_one(harness, cfg, 42);
  const RunResult b = train_one(harness, cfg, 42);
  REQUIRE(a.per_epoch_dev_f1.size() == 3);
  CHECK(a.per_epoch_dev_f1 == b.per_epoch_dev_f1);
  CHECK(a.per_epoch_train_f1 == b.per_epoch_train_f1);
  CHECK(a.best_epoch == b.best_epoch);

  const RunResult c = train_one(harness, cfg, 360);
  CHECK(c.per_epoch_dev_f1.size() == 3);
}

TEST_CASE("per-epoch metric curve has one entry per epoch") {
  auto harness = tiny_harness();
  auto cfg = fast_config(10);
  const RunResult run = train_one(harness, cfg, 42);
  CHECK(run.per_epoch_dev_f1.size() == 10);
  CHECK(run.per_epoch_train_f1.size() == 10);
}

TEST_CASE("overfit sanity: toy model reaches training F1 1.0 quickly") {
  auto harness = tiny_harness();
  auto cfg = fast_config(25);
  cfg.train_batch = 4;  // 4 steps per epoch -> 100 steps total
  cfg.lr = 5e-3;
  const RunResult run = train_one(harness, cfg, 42);
  double best_train = 0.0;
  for (double f1 : run.per_epoch_train_f1) best_train = std::max(best_train, f1);
  CHECK(best_train == doctest::Approx(1.0));
}

TEST_CASE("checkpoints round-trip bitwise") {
  namespace fs = std::filesystem;
  const std::string dir = fs::temp_directory_path() /
                          ("idiom_ckpt_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto harness = tiny_harness(Variant::kFull, dir);
  auto cfg = fast_config(2);
  const RunResult run = train_one(harness, cfg, 42);
  REQUIRE(fs::exists(dir + "/checkpoints/epoch_2.ckpt"));
  REQUIRE(fs::exists(dir + "/metrics.jsonl"));

  // Load into a freshly initialized model (different seed) and compare
  // logits bit for bit.
  std::mt19937_64 rng_a(1);
  std::mt19937_64 rng_b(999);
  auto model_a = harness.model_factory(rng_a);
  auto model_b = harness.model_factory(rng_b);
  load_checkpoint(dir + "/checkpoints/epoch_2.ckpt", model_a->parameters());
  load_checkpoint(dir + "/checkpoints/epoch_2.ckpt", model_b->parameters());
  for (const auto& inst : harness.dev_data) {
    const auto encs =
        encode_instance(inst, harness.variant, *harness.tokenizer, 128);
    const Eigen::RowVectorXd la = model_a->logits(encs);
    const Eigen::RowVectorXd lb = model_b->logits(encs);
    CHECK(la == lb);
  }
  const auto meta = read_checkpoint_meta(dir + "/checkpoints/epoch_2.ckpt");
  CHECK(meta.fingerprint == "test");
  fs::remove_all(dir);
}

TEST_CASE("storage-constrained mode keeps only best-so-far checkpoints") {
  namespace fs = std::filesystem;
  const std::string dir = fs::temp_directory_path() /
                          ("idiom_ckpt_best_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto harness = tiny_harness(Variant::kFull, dir);
  auto cfg = fast_config(4);
  cfg.keep_all_checkpoints = false;
  const RunResult run = train_one(harness, cfg, 42);
  int kept = 0;
  for (int e = 1; e <= 4; ++e) {
    if (fs::exists(dir + "/checkpoints/epoch_" + std::to_string(e) + ".ckpt")) {
      ++kept;
    }
  }
  CHECK(kept >= 1);
  // The best epoch's checkpoint always exists in this mode.
  CHECK(fs::exists(dir + "/checkpoints/epoch_" +
                   std::to_string(run.best_epoch) + ".ckpt"));
  fs::remove_all(dir);
}

TEST_CASE("corrupt checkpoints are rejected") {
  namespace fs = std::filesystem;
  const std::string dir = fs::temp_directory_path() /
                          ("idiom_ckpt_corrupt_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto harness = tiny_harness(Variant::kFull, dir);
  auto cfg = fast_config(1);
  train_one(harness, cfg, 42);
  const std::string path = dir + "/checkpoints/epoch_1.ckpt";

  // Flip one payload byte.
  std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(-16, std::ios::end);
  char byte;
  f.read(&byte, 1);
  f.seekp(-16, std::ios::end);
  byte = static_cast<char>(byte ^ 0x5A);
  f.write(&byte, 1);
  f.close();

  std::mt19937_64 rng(1);
  auto model = harness.model_factory(rng);
  CHECK_THROWS_AS(load_checkpoint(path, model->parameters()), CheckpointError);
  fs::remove_all(dir);
}

TEST_CASE("divergence detection aborts with the failing step") {
  auto harness = tiny_harness();
  harness.model_factory = [](std::mt19937_64& rng) {
    auto encoder = std::make_shared<ToyTransformerEncoder>(
        test::tiny_encoder_config(512), rng);
    ModelConfig mc;
    mc.variant = Variant::kFull;
    mc.d_proj = 8;
    mc.dropout = 0.0;
    auto model = std::make_unique<IdiomaticityModel>(encoder, mc, rng);
    // Poison the position embedding of position 0, which every sequence
    // uses: the first forward pass yields a non-finite loss.
    model->parameters()[1]->value(0, 0) =
        std::numeric_limits<double>::quiet_NaN();
    return model;
  };
  const auto cfg = fast_config(1);
  try {
    train_one(harness, cfg, 42);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }
}

TEST_CASE("sweep aggregates seeds and isolates failures") {
  auto harness = tiny_harness();
  auto cfg = fast_config(2);
  cfg.seeds = {42, 360};
  const SweepSummary summary = sweep(harness, cfg);
  REQUIRE(summary.runs.size() == 2);
  CHECK(summary.selected_dev_f1.size() == 2);
  const auto [mean, stddev] = mean_and_population_std(summary.selected_dev_f1);
  CHECK(summary.dev_mean == doctest::Approx(mean));
  CHECK(summary.dev_std == doctest::Approx(stddev));

  SUBCASE("single seed: mean equals the run, std is zero") {
    cfg.seeds = {42};
    const SweepSummary one = sweep(harness, cfg);
    REQUIRE(one.selected_dev_f1.size() == 1);
    CHECK(one.dev_mean == doctest::Approx(one.selected_dev_f1[0]));
    CHECK(one.dev_std == 0.0);
  }
}

TEST_CASE("one-shot pairing diagnostic over the toy dev set") {
  const auto train = load_toy("train.csv");
  const auto dev = load_toy("dev.csv");
  const auto cov = one_shot_coverage(train, dev);
  CHECK(cov.eval_mwes == 8);
  CHECK(cov.covered == 8);        // every dev MWE has training instances
  CHECK(cov.paired == 0);         // by design: one label per toy MWE
  CHECK(cov.uncovered.empty());
}
