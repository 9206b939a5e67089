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

#include "idiom/pipeline.hpp"

namespace idiom {

std::vector<EncodedInput> encode_instance(const Instance& instance,
                                          const VariantConfig& variant,
                                          const TokenizerContract& tokenizer,
                                          int max_len) {
  const bool use_segments = variant_uses_segments(variant.variant);
  std::vector<EncodedInput> out;
  for (const TextChunk& chunk : build_views(instance, variant)) {
    out.push_back(encode_chunk(chunk, tokenizer, max_len, use_segments));
  }
  return out;
}

std::vector<Prediction> predict_instances(
    IdiomaticityModel& model, const std::vector<Instance>& instances,
    const VariantConfig& variant, const TokenizerContract& tokenizer,
    int max_len) {
  std::vector<Prediction> out;
  out.reserve(instances.size());
  for (const Instance& inst : instances) {
    const auto encodings = encode_instance(inst, variant, tokenizer, max_len);
    const Eigen::RowVectorXd logits = model.logits(encodings);
    const Eigen::RowVectorXd probs = nn::softmax_row(logits);
    Prediction pred;
    pred.instance_id = inst.id;
    pred.lang = inst.lang;
    pred.lang_raw = inst.lang_raw;
    pred.setting = inst.setting;
    pred.prob_idiomatic = probs(kLogitIdiomatic);
    pred.predicted = predicted_label(pred.prob_idiomatic);
    out.push_back(std::move(pred));
  }
  return out;
}

double evaluate_macro_f1(IdiomaticityModel& model,
                         const std::vector<Instance>& instances,
                         const VariantConfig& variant,
                         const TokenizerContract& tokenizer, int max_len) {
  const auto preds =
      predict_instances(model, instances, variant, tokenizer, max_len);
  std::vector<int> g;
  std::vector<int> p;
  g.reserve(preds.size());
  p.reserve(preds.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    g.push_back(instances[i].label == Label::kIdiomatic ? 1 : 0);
    p.push_back(preds[i].predicted == Label::kIdiomatic ? 1 : 0);
  }
  return macro_f1(g, p);
}

}  // namespace idiom
