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

#include "idiom/encoder.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "idiom/errors.hpp"

namespace idiom {

using nn::Mat;
using nn::Value;

ToyTransformerEncoder::ToyTransformerEncoder(ToyEncoderConfig config,
                                             std::mt19937_64& init_rng)
    : config_(config) {
  if (config_.d_model % config_.heads != 0) {
    throw ConfigError("encoder d_model must be divisible by heads");
  }
  const int d = config_.d_model;
  const double std0 = 0.02;
  token_embedding_ = std::make_shared<nn::Parameter>(
      "encoder.token_embedding",
      nn::randn(config_.vocab, d, init_rng, std0), /*decay=*/false);
  position_embedding_ = std::make_shared<nn::Parameter>(
      "encoder.position_embedding",
      nn::randn(config_.max_positions, d, init_rng, std0), /*decay=*/false);
  layers_.reserve(config_.layers);
  for (int l = 0; l < config_.layers; ++l) {
    const std::string prefix = "encoder.layer" + std::to_string(l) + ".";
    Layer layer;
    layer.wq = std::make_shared<nn::Parameter>(prefix + "wq",
                                               nn::randn(d, d, init_rng, std0));
    layer.wk = std::make_shared<nn::Parameter>(prefix + "wk",
                                               nn::randn(d, d, init_rng, std0));
    layer.wv = std::make_shared<nn::Parameter>(prefix + "wv",
                                               nn::randn(d, d, init_rng, std0));
    layer.wo = std::make_shared<nn::Parameter>(prefix + "wo",
                                               nn::randn(d, d, init_rng, std0));
    layer.attn_gain = std::make_shared<nn::Parameter>(
        prefix + "attn_ln.gain", Mat::Ones(1, d), /*decay=*/false);
    layer.attn_bias = std::make_shared<nn::Parameter>(
        prefix + "attn_ln.bias", Mat::Zero(1, d), /*decay=*/false);
    layer.ff_w1 = std::make_shared<nn::Parameter>(
        prefix + "ff.w1", nn::randn(d, config_.d_ff, init_rng, std0));
    layer.ff_b1 = std::make_shared<nn::Parameter>(
        prefix + "ff.b1", Mat::Zero(1, config_.d_ff), /*decay=*/false);
    layer.ff_w2 = std::make_shared<nn::Parameter>(
        prefix + "ff.w2", nn::randn(config_.d_ff, d, init_rng, std0));
    layer.ff_b2 = std::make_shared<nn::Parameter>(
        prefix + "ff.b2", Mat::Zero(1, d), /*decay=*/false);
    layer.ff_gain = std::make_shared<nn::Parameter>(
        prefix + "ff_ln.gain", Mat::Ones(1, d), /*decay=*/false);
    layer.ff_bias = std::make_shared<nn::Parameter>(
        prefix + "ff_ln.bias", Mat::Zero(1, d), /*decay=*/false);
    layers_.push_back(std::move(layer));
  }
}

Value ToyTransformerEncoder::forward(nn::Tape& tape, const EncodedInput& input,
                                     const nn::Value* extra_input_embedding,
                                     bool train,
                                     std::mt19937_64& dropout_rng) {
  const auto seq_len = static_cast<int>(input.token_ids.size());
  if (seq_len == 0) throw EmptySequenceError("empty token sequence");
  if (seq_len > config_.max_positions) {
    throw std::invalid_argument("sequence longer than max_positions");
  }

  std::vector<int> token_rows(input.token_ids.begin(), input.token_ids.end());
  std::vector<int> pos_rows(seq_len);
  for (int i = 0; i < seq_len; ++i) pos_rows[i] = i;

  Value x = tape.add(tape.rows(tape.param(token_embedding_), token_rows),
                     tape.rows(tape.param(position_embedding_), pos_rows));
  if (extra_input_embedding != nullptr) {
    x = tape.add(x, *extra_input_embedding);
  }

  // Additive key mask for padded positions.
  bool any_masked = false;
  for (auto m : input.attention_mask) any_masked |= (m == 0);
  Value key_mask;
  if (any_masked) {
    Mat mask = Mat::Zero(seq_len, seq_len);
    for (int j = 0; j < seq_len; ++j) {
      if (input.attention_mask[j] == 0) mask.col(j).setConstant(-1e9);
    }
    key_mask = tape.input(std::move(mask));
  }

  const int d = config_.d_model;
  const int dh = d / config_.heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  for (const Layer& layer : layers_) {
    Value q = tape.matmul(x, tape.param(layer.wq));
    Value k = tape.matmul(x, tape.param(layer.wk));
    Value v = tape.matmul(x, tape.param(layer.wv));

    std::vector<Value> head_outputs;
    head_outputs.reserve(config_.heads);
    for (int h = 0; h < config_.heads; ++h) {
      Value qh = tape.cols(q, h * dh, dh);
      Value kh = tape.cols(k, h * dh, dh);
      Value vh = tape.cols(v, h * dh, dh);
      Value scores =
          tape.mul_scalar(tape.matmul(qh, tape.transpose(kh)), scale);
      if (any_masked) scores = tape.add(scores, key_mask);
      Value attn = tape.softmax_rows(scores);
      attn = tape.dropout(attn, config_.dropout, dropout_rng, train);
      head_outputs.push_back(tape.matmul(attn, vh));
    }
    Value attn_out =
        tape.matmul(tape.concat_cols(head_outputs), tape.param(layer.wo));
    attn_out = tape.dropout(attn_out, config_.dropout, dropout_rng, train);
    x = tape.layer_norm_rows(tape.add(x, attn_out),
                             tape.param(layer.attn_gain),
                             tape.param(layer.attn_bias));

    Value ff = tape.add_row_broadcast(tape.matmul(x, tape.param(layer.ff_w1)),
                                      tape.param(layer.ff_b1));
    ff = tape.gelu(ff);
    ff = tape.add_row_broadcast(tape.matmul(ff, tape.param(layer.ff_w2)),
                                tape.param(layer.ff_b2));
    ff = tape.dropout(ff, config_.dropout, dropout_rng, train);
    x = tape.layer_norm_rows(tape.add(x, ff), tape.param(layer.ff_gain),
                             tape.param(layer.ff_bias));
  }
  return x;
}

void ToyTransformerEncoder::collect_parameters(
    std::vector<nn::ParamPtr>* out) const {
  out->push_back(token_embedding_);
  out->push_back(position_embedding_);
  for (const auto& layer : layers_) {
    out->push_back(layer.wq);
    out->push_back(layer.wk);
    out->push_back(layer.wv);
    out->push_back(layer.wo);
    out->push_back(layer.attn_gain);
    out->push_back(layer.attn_bias);
    out->push_back(layer.ff_w1);
    out->push_back(layer.ff_b1);
    out->push_back(layer.ff_w2);
    out->push_back(layer.ff_b2);
    out->push_back(layer.ff_gain);
    out->push_back(layer.ff_bias);
  }
}

std::string ToyTransformerEncoder::spec() const {
  std::ostringstream s;
  s << "toy(vocab=" << config_.vocab << ",d=" << config_.d_model
    << ",layers=" << config_.layers << ",heads=" << config_.heads
    << ",ff=" << config_.d_ff << ",maxpos=" << config_.max_positions << ")";
  return s.str();
}

}  // namespace idiom
