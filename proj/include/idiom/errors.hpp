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

#ifndef IDIOM_ERRORS_HPP_
#define IDIOM_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace idiom {

// Base class for all library errors. `code()` is a stable machine-readable
// tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define IDIOM_DEFINE_ERROR(NAME, CODE)                              \
  class NAME : public Error {                                       \
   public:                                                          \
    explicit NAME(const std::string& message) : Error(CODE, message) {} \
  }

// corpus
IDIOM_DEFINE_ERROR(MissingColumnError, "missing_column");
IDIOM_DEFINE_ERROR(MalformedRowError, "malformed_row");
IDIOM_DEFINE_ERROR(EmptyTargetError, "empty_target");
IDIOM_DEFINE_ERROR(MweNotFoundError, "mwe_not_found");

// chunking
IDIOM_DEFINE_ERROR(UnknownVariantError, "unknown_variant");

// encoding
IDIOM_DEFINE_ERROR(BudgetTooSmallError, "budget_too_small");

// model
IDIOM_DEFINE_ERROR(EmptySequenceError, "empty_sequence");
IDIOM_DEFINE_ERROR(EmptyMweSpanError, "empty_mwe_span");
IDIOM_DEFINE_ERROR(VariantMismatchError, "variant_mismatch");

// training
IDIOM_DEFINE_ERROR(DivergenceError, "divergence_detected");
IDIOM_DEFINE_ERROR(MissingCheckpointError, "missing_checkpoint");
IDIOM_DEFINE_ERROR(CheckpointError, "checkpoint_corrupt");
IDIOM_DEFINE_ERROR(FingerprintMismatchError, "fingerprint_mismatch");

// evaluation
IDIOM_DEFINE_ERROR(LengthMismatchError, "length_mismatch");
IDIOM_DEFINE_ERROR(UnmatchedIdError, "unmatched_id");
IDIOM_DEFINE_ERROR(InconsistentGroupingError, "inconsistent_grouping");

// config / cli
IDIOM_DEFINE_ERROR(ConfigError, "config_invalid");
IDIOM_DEFINE_ERROR(IoError, "io_error");

#undef IDIOM_DEFINE_ERROR

}  // namespace idiom

#endif  // IDIOM_ERRORS_HPP_
