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

#ifndef IDIOM_ENCODER_HPP_
#define IDIOM_ENCODER_HPP_

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "idiom/encoding.hpp"
#include "idiom/nn.hpp"

namespace idiom {

// Behavioral contract over the pretrained (or toy) text encoder. All views
// of an instance go through one adapter instance, so they share parameters.
class EncoderAdapter {
 public:
  virtual ~EncoderAdapter() = default;

  virtual int hidden_size() const = 0;

  // Runs the encoder over one sequence. `extra_input_embedding`, when
  // non-null, is a seq_len × hidden matrix added to the input embeddings
  // (this is how the trainable segment table is injected). Returns the last
  // layer's hidden states, seq_len × hidden.
  virtual nn::Value forward(nn::Tape& tape, const EncodedInput& input,
                            const nn::Value* extra_input_embedding,
                            bool train, std::mt19937_64& dropout_rng) = 0;

  virtual void collect_parameters(std::vector<nn::ParamPtr>* out) const = 0;

  virtual std::string spec() const = 0;
};

// A small post-norm transformer encoder with learned positional embeddings.
// Random-initialized; stands in for the pretrained model in the CPU test
// tier and exercises every contract of the real thing.
struct ToyEncoderConfig {
  int vocab = 32768;
  int d_model = 16;
  int layers = 2;
  int heads = 2;
  int d_ff = 32;
  int max_positions = 512;
  double dropout = 0.0;  // internal dropout; feature dropout lives in the model
};

class ToyTransformerEncoder final : public EncoderAdapter {
 public:
  ToyTransformerEncoder(ToyEncoderConfig config, std::mt19937_64& init_rng);

  int hidden_size() const override { return config_.d_model; }

  nn::Value forward(nn::Tape& tape, const EncodedInput& input,
                    const nn::Value* extra_input_embedding, bool train,
                    std::mt19937_64& dropout_rng) override;

  void collect_parameters(std::vector<nn::ParamPtr>* out) const override;

  std::string spec() const override;

  const ToyEncoderConfig& config() const { return config_; }

 private:
  struct Layer {
    nn::ParamPtr wq, wk, wv, wo;
    nn::ParamPtr attn_gain, attn_bias;
    nn::ParamPtr ff_w1, ff_b1, ff_w2, ff_b2;
    nn::ParamPtr ff_gain, ff_bias;
  };

  ToyEncoderConfig config_;
  nn::ParamPtr token_embedding_;
  nn::ParamPtr position_embedding_;
  std::vector<Layer> layers_;
};

}  // namespace idiom

#endif  // IDIOM_ENCODER_HPP_
