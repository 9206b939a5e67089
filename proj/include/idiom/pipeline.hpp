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

#ifndef IDIOM_PIPELINE_HPP_
#define IDIOM_PIPELINE_HPP_

#include <vector>

#include "idiom/encoding.hpp"
#include "idiom/evaluation.hpp"
#include "idiom/model.hpp"
#include "idiom/tokenizer.hpp"

namespace idiom {

// Chunks and encodes one instance for the given variant.
std::vector<EncodedInput> encode_instance(const Instance& instance,
                                          const VariantConfig& variant,
                                          const TokenizerContract& tokenizer,
                                          int max_len);

// Scores instances with a frozen model.
std::vector<Prediction> predict_instances(
    IdiomaticityModel& model, const std::vector<Instance>& instances,
    const VariantConfig& variant, const TokenizerContract& tokenizer,
    int max_len);

// Macro-F1 of a frozen model on labeled instances.
double evaluate_macro_f1(IdiomaticityModel& model,
                         const std::vector<Instance>& instances,
                         const VariantConfig& variant,
                         const TokenizerContract& tokenizer, int max_len);

}  // namespace idiom

#endif  // IDIOM_PIPELINE_HPP_
