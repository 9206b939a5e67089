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

#include "idiom/model.hpp"

#include <stdexcept>

#include "idiom/errors.hpp"

namespace idiom {

using nn::Mat;
using nn::Value;

Eigen::RowVectorXd extract_cls(const nn::Mat& hidden) {
  if (hidden.rows() == 0) {
    throw EmptySequenceError("extract_cls on an empty hidden-state matrix");
  }
  return hidden.row(0);
}

Eigen::RowVectorXd extract_mwe(const nn::Mat& hidden,
                               const std::vector<std::int32_t>& mwe_indices) {
  if (mwe_indices.empty()) {
    throw EmptyMweSpanError("extract_mwe with no MWE positions");
  }
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(hidden.cols());
  for (std::int32_t i : mwe_indices) {
    if (i < 0 || i >= hidden.rows()) {
      throw std::out_of_range("MWE index out of range");
    }
    acc += hidden.row(i);
  }
  return acc / static_cast<double>(mwe_indices.size());
}

int classifier_input_dim(Variant variant, int d_enc, int d_proj) {
  int dim = 0;
  for (ViewKind kind : views_for_variant(variant)) {
    switch (kind) {
      case ViewKind::kPrevTarget:
      case ViewKind::kTargetNext:
      case ViewKind::kTargetOnly:
      case ViewKind::kTripleConcat:
        dim += d_proj;
        break;
      case ViewKind::kContextExclusive:
      case ViewKind::kMweExclusive:
        dim += d_enc;
        break;
    }
  }
  return dim;
}

IdiomaticityModel::IdiomaticityModel(std::shared_ptr<EncoderAdapter> encoder,
                                     ModelConfig config,
                                     std::mt19937_64& init_rng)
    : encoder_(std::move(encoder)), config_(config) {
  const int d_enc = encoder_->hidden_size();
  const double std0 = 0.02;
  // Zero-initialized so that enabling or disabling segment embeddings is
  // indistinguishable at initialization.
  seg_table_ = std::make_shared<nn::Parameter>("model.segment_table",
                                               Mat::Zero(2, d_enc),
                                               /*decay=*/false);
  proj_w_ = std::make_shared<nn::Parameter>(
      "model.proj.weight", nn::randn(2 * d_enc, config_.d_proj, init_rng, std0));
  proj_b_ = std::make_shared<nn::Parameter>("model.proj.bias",
                                            Mat::Zero(1, config_.d_proj),
                                            /*decay=*/false);
  const int feat_dim = classifier_input_dim();
  cls_w_ = std::make_shared<nn::Parameter>(
      "model.classifier.weight", nn::randn(feat_dim, 2, init_rng, std0));
  cls_b_ = std::make_shared<nn::Parameter>("model.classifier.bias",
                                           Mat::Zero(1, 2), /*decay=*/false);
}

int IdiomaticityModel::classifier_input_dim() const {
  return idiom::classifier_input_dim(config_.variant, encoder_->hidden_size(),
                                     config_.d_proj);
}

std::vector<nn::ParamPtr> IdiomaticityModel::parameters() const {
  std::vector<nn::ParamPtr> out;
  encoder_->collect_parameters(&out);
  out.push_back(seg_table_);
  out.push_back(proj_w_);
  out.push_back(proj_b_);
  out.push_back(cls_w_);
  out.push_back(cls_b_);
  return out;
}

std::vector<nn::ParamPtr> IdiomaticityModel::head_parameters() const {
  return {proj_w_, proj_b_, cls_w_, cls_b_};
}

Value IdiomaticityModel::encode_view(nn::Tape& tape,
                                     const EncodedInput& encoded, bool train,
                                     std::mt19937_64& dropout_rng) {
  if (variant_uses_segments(config_.variant)) {
    std::vector<int> seg_rows(encoded.segment_ids.begin(),
                              encoded.segment_ids.end());
    Value extra = tape.rows(tape.param(seg_table_), std::move(seg_rows));
    return encoder_->forward(tape, encoded, &extra, train, dropout_rng);
  }
  return encoder_->forward(tape, encoded, nullptr, train, dropout_rng);
}

Value IdiomaticityModel::view_feature(nn::Tape& tape,
                                      const EncodedInput& encoded, bool train,
                                      std::mt19937_64& dropout_rng) {
  Value hidden = encode_view(tape, encoded, train, dropout_rng);
  const std::vector<int> mwe_idx(encoded.mwe_indices.begin(),
                                 encoded.mwe_indices.end());
  switch (encoded.view) {
    case ViewKind::kPrevTarget:
    case ViewKind::kTargetNext:
    case ViewKind::kTargetOnly:
    case ViewKind::kTripleConcat: {
      if (mwe_idx.empty()) {
        throw EmptyMweSpanError("context view with no marked MWE positions");
      }
      Value cls = tape.rows(hidden, {0});
      Value mwe = tape.mean_rows(hidden, mwe_idx);
      Value cat = tape.concat_cols({cls, mwe});
      return tape.add_row_broadcast(tape.matmul(cat, tape.param(proj_w_)),
                                    tape.param(proj_b_));
    }
    case ViewKind::kContextExclusive:
      return tape.rows(hidden, {0});
    case ViewKind::kMweExclusive:
      if (mwe_idx.empty()) {
        throw EmptyMweSpanError("MWE-exclusive view with no MWE positions");
      }
      return tape.mean_rows(hidden, mwe_idx);
  }
  throw std::logic_error("unhandled view kind");
}

Value IdiomaticityModel::forward(nn::Tape& tape,
                                 const std::vector<EncodedInput>& encodings,
                                 bool train, std::mt19937_64& dropout_rng) {
  const std::vector<ViewKind> expected = views_for_variant(config_.variant);
  if (encodings.size() != expected.size()) {
    throw VariantMismatchError(
        "variant " + to_string(config_.variant) + " expects " +
        std::to_string(expected.size()) + " views, got " +
        std::to_string(encodings.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (encodings[i].view != expected[i]) {
      throw VariantMismatchError("view " + std::to_string(i) + " is " +
                                 to_string(encodings[i].view) + ", expected " +
                                 to_string(expected[i]));
    }
  }
  std::vector<Value> features;
  features.reserve(encodings.size());
  for (const auto& encoded : encodings) {
    features.push_back(view_feature(tape, encoded, train, dropout_rng));
  }
  Value cat = tape.concat_cols(features);
  cat = tape.dropout(cat, config_.dropout, dropout_rng, train);
  return tape.add_row_broadcast(tape.matmul(cat, tape.param(cls_w_)),
                                tape.param(cls_b_));
}

Value IdiomaticityModel::loss(nn::Tape& tape, const Value& logits, int label) {
  return tape.cross_entropy_logits(logits, label);
}

Eigen::RowVectorXd IdiomaticityModel::logits(
    const std::vector<EncodedInput>& encodings) {
  nn::Tape tape;
  std::mt19937_64 rng(0);  // inference path, dropout disabled
  Value out = forward(tape, encodings, /*train=*/false, rng);
  return out->value.row(0);
}

}  // namespace idiom
