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

#ifndef MABEL_TRAINER_CHECKPOINT_H_
#define MABEL_TRAINER_CHECKPOINT_H_

#include <cstdint>
#include <string>

#include "mabel/encoder/encoder.h"

namespace mabel {

inline constexpr char kCheckpointMagic[4] = {'M', 'B', 'L', '1'};
inline constexpr uint32_t kCheckpointVersion = 1;

struct CheckpointContents {
  EncoderModel model;
  std::string run_config;  // JSON text stored alongside the weights.
};

// Layout: magic, u32 LE version, u64 LE metadata length, JSON metadata
// (encoder config, vocabulary, parameter manifest, run config), then every
// parameter as little-endian doubles in manifest order.
void SaveCheckpoint(const EncoderModel& model, const std::string& run_config_json,
                    const std::string& path);

// Throws BadMagic, VersionMismatch, TruncatedFile or ManifestMismatch.
CheckpointContents LoadCheckpoint(const std::string& path);

}  // namespace mabel

#endif  // MABEL_TRAINER_CHECKPOINT_H_
