// Copyright 2026 The PRIDE Toolkit Authors.
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

#include "pride/error.h"

#include <utility>

namespace pride {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyContentSet: return "EmptyContentSet";
    case ErrorCode::kMalformedParse: return "MalformedParse";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kZeroTotalDifficulty: return "ZeroTotalDifficulty";
    case ErrorCode::kZeroSuccessRate: return "ZeroSuccessRate";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kNoSuccesses: return "NoSuccesses";
    case ErrorCode::kConstantSeries: return "ConstantSeries";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kUnknownVariationTag: return "UnknownVariationTag";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kUnknownTag: return "UnknownTag";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kMissingSentId: return "MissingSentId";
    case ErrorCode::kBadColumnCount: return "BadColumnCount";
    case ErrorCode::kNonTreeHeads: return "NonTreeHeads";
    case ErrorCode::kDimensionDrift: return "DimensionDrift";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kShortTrajectory: return "ShortTrajectory";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kBadHeader: return "BadHeader";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kOrphanRecord: return "OrphanRecord";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out(error_code_name(d.code));
  if (d.line > 0) out += " at line " + std::to_string(d.line);
  if (!d.detail.empty()) out += ": " + d.detail;
  return out;
}

namespace {

std::string summarize(const std::string& source,
                      const std::vector<Diagnostic>& diagnostics) {
  std::string out = source + ": " + std::to_string(diagnostics.size()) +
                    " error(s)";
  if (!diagnostics.empty()) out += "; first: " + format_diagnostic(diagnostics[0]);
  return out;
}

}  // namespace

ReadError::ReadError(std::string source, std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? ErrorCode::kIoFailure : diagnostics[0].code,
            summarize(source, diagnostics)),
      source_(std::move(source)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace pride
