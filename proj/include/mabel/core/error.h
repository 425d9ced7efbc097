//
// Copyright 2026 The MABEL-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef MABEL_CORE_ERROR_H_
#define MABEL_CORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mabel {

// Every failure the library reports carries one of these codes so that the
// command-line layer can map it onto a stable exit status.
enum class ErrorCode {
  kShapeMismatch,
  kNonFinite,
  kNotScalar,
  kZeroNorm,
  kNonPositiveTau,
  kBatchTooSmall,
  kNoMaskedPositions,
  kEmptyText,
  kIdOutOfRange,
  kMalformedLexicon,
  kMalformedLine,
  kEmptyCorpus,
  kDivergedLoss,
  kDegenerateLabels,
  kLabelOutOfRange,
  kBadMagic,
  kVersionMismatch,
  kTruncatedFile,
  kManifestMismatch,
  kEmptyInput,
  kEmptySet,
  kDimMismatch,
  kMissingGender,
  kBadTau,
  kOutOfRange,
  kMalformedItemFile,
  kInvalidConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mabel

#endif  // MABEL_CORE_ERROR_H_
