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

#include "claimgate/common/error.hpp"

namespace claimgate {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUniverseTooLarge: return "universe-too-large";
    case ErrorCode::kEvidenceTooLarge: return "evidence-too-large";
    case ErrorCode::kAtomOutOfRange: return "atom-out-of-range";
    case ErrorCode::kEmptyClaim: return "empty-claim";
    case ErrorCode::kBoundsExceeded: return "bounds-exceeded";
    case ErrorCode::kFormulaSyntax: return "formula-syntax";
    case ErrorCode::kGenerationParseFailure: return "generation-parse-failure";
    case ErrorCode::kTargetIsObservation: return "target-is-observation";
    case ErrorCode::kProviderError: return "provider-error";
    case ErrorCode::kProviderAuth: return "provider-auth";
    case ErrorCode::kProviderRateLimited: return "provider-rate-limited";
    case ErrorCode::kAttachmentUnreadable: return "attachment-unreadable";
    case ErrorCode::kAmbiguousMatcher: return "ambiguous-matcher";
    case ErrorCode::kUnmatchedRequest: return "unmatched-request";
    case ErrorCode::kUnknownProvider: return "unknown-provider";
    case ErrorCode::kInvalidRequest: return "invalid-request";
    case ErrorCode::kSchemaViolation: return "schema-violation";
    case ErrorCode::kMissingGraph: return "missing-graph";
    case ErrorCode::kEmptyClass: return "empty-class";
    case ErrorCode::kJudgeParseFailure: return "judge-parse-failure";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kInconsistentInputs: return "inconsistent-inputs";
    case ErrorCode::kGatingViolation: return "gating-violation";
    case ErrorCode::kUnknownCandidate: return "unknown-candidate";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kPartialFailure: return "partial-failure";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace claimgate
