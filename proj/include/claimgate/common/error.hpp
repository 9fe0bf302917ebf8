/*
 * Copyright 2026 The Claimgate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace claimgate {

// Stable, kebab-case error codes. They surface in CLI messages and in the
// review API's {code, message} bodies, so renaming one is a breaking change.
enum class ErrorCode {
  kUniverseTooLarge,
  kEvidenceTooLarge,
  kAtomOutOfRange,
  kEmptyClaim,
  kBoundsExceeded,
  kFormulaSyntax,
  kGenerationParseFailure,
  kTargetIsObservation,
  kProviderError,
  kProviderAuth,
  kProviderRateLimited,
  kAttachmentUnreadable,
  kAmbiguousMatcher,
  kUnmatchedRequest,
  kUnknownProvider,
  kInvalidRequest,
  kSchemaViolation,
  kMissingGraph,
  kEmptyClass,
  kJudgeParseFailure,
  kLengthMismatch,
  kInconsistentInputs,
  kGatingViolation,
  kUnknownCandidate,
  kConflict,
  kEmptyInput,
  kPartialFailure,
  kIo,
  kUsage,
};

std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const { return claimgate::code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace claimgate
