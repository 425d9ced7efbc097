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

#include "mabel/core/error.h"

namespace mabel {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNotScalar: return "NotScalar";
    case ErrorCode::kZeroNorm: return "ZeroNorm";
    case ErrorCode::kNonPositiveTau: return "NonPositiveTau";
    case ErrorCode::kBatchTooSmall: return "BatchTooSmall";
    case ErrorCode::kNoMaskedPositions: return "NoMaskedPositions";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kIdOutOfRange: return "IdOutOfRange";
    case ErrorCode::kMalformedLexicon: return "MalformedLexicon";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDivergedLoss: return "DivergedLoss";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kManifestMismatch: return "ManifestMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kMissingGender: return "MissingGender";
    case ErrorCode::kBadTau: return "BadTau";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kMalformedItemFile: return "MalformedItemFile";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace mabel
