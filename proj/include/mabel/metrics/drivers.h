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

#ifndef MABEL_METRICS_DRIVERS_H_
#define MABEL_METRICS_DRIVERS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mabel/encoder/encoder.h"
#include "mabel/metrics/inputs.h"
#include "mabel/metrics/scores.h"

namespace mabel {

// Mean MLM log probability of `candidate` filling the single BLANK of
// `context`. A k-token candidate occupies k jointly masked positions. Absent
// when a candidate token is out of vocabulary or the filled sequence does not
// fit in maxlen.
std::optional<double> CandidateLogProb(const EncoderModel& model, const std::string& context,
                                       const std::string& candidate);

struct StereoSetRun {
  // One entry per record; a score is absent when that candidate is OOV.
  std::vector<std::optional<double>> stereotype;
  std::vector<std::optional<double>> anti_stereotype;
  std::vector<std::optional<double>> unrelated;
  std::vector<StereoItem> items;  // Records with all three scores.
  size_t skipped = 0;
};

StereoSetRun RunStereoSet(const EncoderModel& model,
                          const std::vector<StereoSetRecord>& records);

// Indices of the tokens of `a` not covered by a longest common subsequence
// with `b`.
std::vector<size_t> UniqueTokenPositions(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

struct CrowsRun {
  std::vector<CrowsItem> items;
  // Pairs with an OOV token, no unique token on one side, or too long.
  size_t skipped = 0;
};

CrowsRun RunCrows(const EncoderModel& model, const std::vector<CrowsRecord>& records);

// Pooled vector per concept averaged over templates with BLANK replaced by
// the concept; with no templates the concept itself is encoded.
Tensor EmbedConcepts(const EncoderModel& model, const std::vector<std::string>& concepts,
                     const std::vector<std::string>& templates,
                     Extraction extraction = Extraction::kPooled);

SeatScores RunSeat(const EncoderModel& model, const SeatSpec& spec,
                   Extraction extraction = Extraction::kPooled);

}  // namespace mabel

#endif  // MABEL_METRICS_DRIVERS_H_
