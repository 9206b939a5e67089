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

#ifndef IDIOM_MODEL_HPP_
#define IDIOM_MODEL_HPP_

#include <memory>
#include <random>
#include <vector>

#include "idiom/encoder.hpp"
#include "idiom/encoding.hpp"
#include "idiom/nn.hpp"

namespace idiom {

// Logit index convention, used everywhere including the submission writer.
constexpr int kLogitNonIdiomatic = 0;
constexpr int kLogitIdiomatic = 1;

// Row 0 of the final hidden states.
Eigen::RowVectorXd extract_cls(const nn::Mat& hidden);

// Mean of the hidden rows at the MWE's subword positions.
Eigen::RowVectorXd extract_mwe(const nn::Mat& hidden,
                               const std::vector<std::int32_t>& mwe_indices);

struct ModelConfig {
  Variant variant = Variant::kFull;
  int d_proj = 768;       // projection size for the context-sensitive views
  double dropout = 0.1;   // on the concatenated feature vector
};

// The classifier consumes the concatenation of the features the variant
// produces: d_proj per context chunk, d_enc for the context-exclusive and
// MWE-exclusive views.
int classifier_input_dim(Variant variant, int d_enc, int d_proj);

// The idiomaticity classifier: a shared encoder, a zero-initialized
// 2-row segment-embedding table added to input embeddings, one projection
// shared by the context views, and a linear head over the concatenated
// features.
class IdiomaticityModel {
 public:
  IdiomaticityModel(std::shared_ptr<EncoderAdapter> encoder, ModelConfig config,
                    std::mt19937_64& init_rng);

  const ModelConfig& config() const { return config_; }
  const std::shared_ptr<EncoderAdapter>& encoder() const { return encoder_; }
  nn::ParamPtr segment_table() const { return seg_table_; }
  int classifier_input_dim() const;

  // All trainable parameters (encoder, segment table, heads).
  std::vector<nn::ParamPtr> parameters() const;
  // The head parameters only (projection + classifier).
  std::vector<nn::ParamPtr> head_parameters() const;

  // One view's feature: proj(v_CLS ++ v_MWE) for context chunks, raw v_CLS
  // for the context-exclusive view, raw v_MWE for the MWE-exclusive view.
  nn::Value view_feature(nn::Tape& tape, const EncodedInput& encoded,
                         bool train, std::mt19937_64& dropout_rng);

  // Full forward over the encodings of one instance, which must match the
  // variant's views exactly (VariantMismatchError otherwise). Returns 1×2
  // logits, index 0 = non-idiomatic, 1 = idiomatic.
  nn::Value forward(nn::Tape& tape, const std::vector<EncodedInput>& encodings,
                    bool train, std::mt19937_64& dropout_rng);

  // Softmax cross-entropy against a binary label.
  nn::Value loss(nn::Tape& tape, const nn::Value& logits, int label);

  // Convenience: forward without gradient bookkeeping, returns the logits.
  Eigen::RowVectorXd logits(const std::vector<EncodedInput>& encodings);

 private:
  nn::Value encode_view(nn::Tape& tape, const EncodedInput& encoded,
                        bool train, std::mt19937_64& dropout_rng);

  std::shared_ptr<EncoderAdapter> encoder_;
  ModelConfig config_;
  nn::ParamPtr seg_table_;  // 2 × d_enc, zero-initialized
  nn::ParamPtr proj_w_;     // 2·d_enc × d_proj
  nn::ParamPtr proj_b_;     // 1 × d_proj
  nn::ParamPtr cls_w_;      // feature_dim × 2
  nn::ParamPtr cls_b_;      // 1 × 2
};

}  // namespace idiom

#endif  // IDIOM_MODEL_HPP_
