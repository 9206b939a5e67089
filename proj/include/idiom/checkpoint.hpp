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

#ifndef IDIOM_CHECKPOINT_HPP_
#define IDIOM_CHECKPOINT_HPP_

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "idiom/nn.hpp"

namespace idiom {

// Versioned parameter container: a JSON header (schema string, free-form
// metadata, tensor manifest) followed by raw little-endian float64 payload
// and a checksum. Loading verifies schema, manifest shapes and checksum.
inline constexpr const char* kCheckpointSchema = "idiomdetect.checkpoint.v1";

struct CheckpointMeta {
  std::string fingerprint;  // model/config fingerprint, checked at load
  nlohmann::json extra;     // tokenizer id, variant, encoder spec, ...
};

void save_checkpoint(const std::string& path,
                     const std::vector<nn::ParamPtr>& params,
                     const CheckpointMeta& meta);

// Loads parameter values in place; names and shapes must match exactly.
// Returns the stored metadata. Throws CheckpointError on corruption or
// shape/name mismatch (fingerprints are the caller's to compare).
CheckpointMeta load_checkpoint(const std::string& path,
                               const std::vector<nn::ParamPtr>& params);

// Reads only the metadata header.
CheckpointMeta read_checkpoint_meta(const std::string& path);

}  // namespace idiom

#endif  // IDIOM_CHECKPOINT_HPP_
