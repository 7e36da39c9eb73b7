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

#ifndef PRIDE_ERROR_H_
#define PRIDE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pride {

enum class ErrorCode {
  // instruction-model
  kEmptyContentSet,
  kMalformedParse,
  // keyword-similarity
  kZeroVector,
  kDimensionMismatch,
  kMissingEmbedding,
  // pride-metric
  kAlphaOutOfRange,
  kEmptyInput,
  kZeroTotalDifficulty,
  kZeroSuccessRate,
  // trajectory-analysis
  kTooShort,
  kBadK,
  kNoSuccesses,
  // stats-report
  kConstantSeries,
  kLengthMismatch,
  kDegenerateInput,
  kUnknownVariationTag,
  // io-formats
  kMalformedLine,
  kUnknownTag,
  kDuplicateId,
  kMissingSentId,
  kBadColumnCount,
  kNonTreeHeads,
  kDimensionDrift,
  kDuplicateKey,
  kShortTrajectory,
  kRaggedRows,
  kBadHeader,
  kIoFailure,
  kOrphanRecord,
};

std::string_view error_code_name(ErrorCode code);

// Base exception for every typed failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Diagnostic {
  ErrorCode code;
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string detail;
};

std::string format_diagnostic(const Diagnostic& d);

// Raised by readers. Carries every per-record failure found in one pass so
// callers can report all of them at once; code() is the first diagnostic's.
class ReadError : public Error {
 public:
  ReadError(std::string source, std::vector<Diagnostic> diagnostics);

  const std::string& source() const { return source_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string source_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace pride

#endif  // PRIDE_ERROR_H_
