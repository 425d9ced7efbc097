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

#ifndef MABEL_METRICS_SCORES_H_
#define MABEL_METRICS_SCORES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mabel/core/tensor.h"

namespace mabel {

// --- StereoSet-style intrasentence scoring ---

struct StereoItem {
  std::string id;
  double stereotype = 0.0;
  double anti_stereotype = 0.0;
  double unrelated = 0.0;
};

struct StereoSetScores {
  double lm = 0.0;    // % of items where a meaningful candidate beats unrelated.
  double ss = 0.0;    // % of items where the stereotype beats the anti-stereotype.
  double icat = 0.0;  // lm * min(ss, 100 - ss) / 50.
  size_t items = 0;
  size_t ties = 0;    // Stereotype == anti-stereotype; counted as non-wins.
};

double Icat(double lm, double ss);
// Throws EmptyInput for no items and NonFinite for non-finite scores.
StereoSetScores ComputeStereoSet(const std::vector<StereoItem>& items);

// --- CrowS-Pairs-style scoring ---

struct TokenScore {
  size_t position = 0;
  double log_prob = 0.0;
};

struct CrowsItem {
  std::vector<TokenScore> more;  // Tokens unique to the more stereotypical sentence.
  std::vector<TokenScore> less;
};

struct CrowsScores {
  double ss = 0.0;
  size_t items = 0;
  size_t ties = 0;
  bool all_ties = false;
};

// Each sentence is scored by the mean log probability of its unique tokens.
CrowsScores ComputeCrows(const std::vector<CrowsItem>& items);

// --- SEAT ---

struct SeatScores {
  std::vector<double> x_association;  // s(x, A, B) per target in X.
  std::vector<double> y_association;
  double statistic = 0.0;             // sum_X s - sum_Y s.
  // (mean_X s - mean_Y s) / sample std of s over X and Y; absent when the
  // std is zero or there are fewer than two targets.
  std::optional<double> effect_size;
};

// Sets are [n, d] matrices of embeddings. Throws EmptySet, DimMismatch or
// ZeroNorm.
SeatScores ComputeSeat(const Tensor& x, const Tensor& y, const Tensor& a, const Tensor& b);

// --- TPR gaps ---

enum class BinaryGender { kMale, kFemale };

struct ClassifiedExample {
  BinaryGender gender = BinaryGender::kMale;
  int32_t label = 0;
  int32_t predicted = 0;
};

struct TprGaps {
  double tpr_male = 0.0;
  double tpr_female = 0.0;
  double overall_gap = 0.0;
  // Absent for classes lacking true instances of either gender.
  std::vector<std::optional<double>> per_class_gap;
  double rms = 0.0;  // Over the classes with a gap.
};

// Throws EmptyInput, MissingGender or LabelOutOfRange.
TprGaps ComputeTprGaps(const std::vector<ClassifiedExample>& examples, size_t classes);

// --- Bias-NLI ---

struct NliDistribution {
  double entail = 0.0;
  double neutral = 0.0;
  double contradict = 0.0;
};

struct BiasNliScores {
  double nn = 0.0;  // Mean neutral probability.
  double fn = 0.0;  // Fraction whose argmax is neutral.
  std::vector<std::pair<double, double>> thresholds;  // (tau, fraction > tau).
};

// Throws EmptyInput, BadTau, or OutOfRange for invalid distributions.
BiasNliScores ComputeBiasNli(const std::vector<NliDistribution>& dists,
                             const std::vector<double>& taus);

// --- WinoBias ---

// |f1_pro - f1_anti|; throws OutOfRange outside [0, 100].
double WinobiasGap(double f1_pro, double f1_anti);

}  // namespace mabel

#endif  // MABEL_METRICS_SCORES_H_
