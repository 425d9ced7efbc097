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

#include "mabel/metrics/drivers.h"

#include <algorithm>
#include <cmath>

#include "mabel/core/error.h"
#include "mabel/text/tokenizer.h"

namespace mabel {
namespace {

// Ids for normalized tokens, or nullopt when any is OOV.
std::optional<std::vector<int32_t>> InVocabIds(const Vocabulary& vocab,
                                               const std::vector<std::string>& tokens) {
  std::vector<int32_t> ids;
  ids.reserve(tokens.size());
  for (const std::string& t : tokens) {
    if (!vocab.Contains(t)) return std::nullopt;
    ids.push_back(vocab.Id(t));
  }
  return ids;
}

// Log-softmax of the MLM prediction for `targets[i]` at `positions[i]` of a
// single [CLS] ... [SEP] sequence.
std::vector<double> MaskedLogProbs(const EncoderModel& model, std::vector<int32_t> ids,
                                   const std::vector<size_t>& positions,
                                   const std::vector<int32_t>& targets) {
  TokenBatch batch;
  batch.rows = 1;
  batch.cols = ids.size();
  batch.ids = std::move(ids);
  batch.mask.assign(batch.cols, 1);
  const EncodedBatch enc = EncodeEval(model, batch);
  const size_t d = model.config().hidden;
  Tensor rows(Shape{positions.size(), d});
  for (size_t i = 0; i < positions.size(); ++i) {
    std::copy_n(enc.token_states.data.begin() + static_cast<std::ptrdiff_t>(positions[i] * d),
                d, rows.data.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  const Tensor logits = MlmLogitsEval(model, rows);
  const size_t v = logits.last_dim();
  std::vector<double> out(positions.size());
  for (size_t i = 0; i < positions.size(); ++i) {
    const double* row = logits.data.data() + i * v;
    const double mx = *std::max_element(row, row + v);
    double sum = 0.0;
    for (size_t j = 0; j < v; ++j) sum += std::exp(row[j] - mx);
    out[i] = row[targets[i]] - mx - std::log(sum);
  }
  return out;
}

}  // namespace

std::optional<double> CandidateLogProb(const EncoderModel& model, const std::string& context,
                                       const std::string& candidate) {
  const size_t blank = context.find("BLANK");
  if (blank == std::string::npos) {
    throw Error(ErrorCode::kMalformedItemFile, "context has no BLANK: " + context);
  }
  const Vocabulary& vocab = model.vocab();
  const auto cand = InVocabIds(vocab, NormalizedTokens(candidate));
  if (!cand || cand->empty()) return std::nullopt;
  std::vector<int32_t> ids{Vocabulary::kCls};
  for (const std::string& t : NormalizedTokens(context.substr(0, blank))) {
    ids.push_back(vocab.Id(t));
  }
  std::vector<size_t> positions;
  for (size_t k = 0; k < cand->size(); ++k) {
    positions.push_back(ids.size());
    ids.push_back(Vocabulary::kMask);
  }
  for (const std::string& t : NormalizedTokens(context.substr(blank + 5))) {
    ids.push_back(vocab.Id(t));
  }
  ids.push_back(Vocabulary::kSep);
  if (ids.size() > model.config().maxlen) return std::nullopt;
  const std::vector<double> lp = MaskedLogProbs(model, std::move(ids), positions, *cand);
  double sum = 0.0;
  for (double x : lp) sum += x;
  return sum / static_cast<double>(lp.size());
}

StereoSetRun RunStereoSet(const EncoderModel& model,
                          const std::vector<StereoSetRecord>& records) {
  StereoSetRun run;
  for (size_t i = 0; i < records.size(); ++i) {
    const StereoSetRecord& r = records[i];
    run.stereotype.push_back(CandidateLogProb(model, r.context, r.stereotype));
    run.anti_stereotype.push_back(CandidateLogProb(model, r.context, r.anti_stereotype));
    run.unrelated.push_back(CandidateLogProb(model, r.context, r.unrelated));
    if (run.stereotype.back() && run.anti_stereotype.back() && run.unrelated.back()) {
      run.items.push_back({std::to_string(i), *run.stereotype.back(),
                           *run.anti_stereotype.back(), *run.unrelated.back()});
    } else {
      ++run.skipped;
    }
  }
  return run;
}

std::vector<size_t> UniqueTokenPositions(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  const size_t n = a.size(), m = b.size();
  std::vector<std::vector<size_t>> lcs(n + 1, std::vector<size_t>(m + 1, 0));
  for (size_t i = n; i-- > 0;) {
    for (size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                               : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<size_t> unique;
  size_t i = 0, j = 0;
  while (i < n) {
    if (j < m && a[i] == b[j]) {
      ++i;
      ++j;
    } else if (j < m && lcs[i][j + 1] > lcs[i + 1][j]) {
      ++j;
    } else {
      unique.push_back(i++);
    }
  }
  return unique;
}

namespace {

// Scores of each unique token masked alone, or nullopt when unscorable.
std::optional<std::vector<TokenScore>> ScoreUnique(const EncoderModel& model,
                                                   const std::vector<std::string>& tokens,
                                                   const std::vector<size_t>& unique) {
  if (unique.empty() || tokens.size() + 2 > model.config().maxlen) return std::nullopt;
  const auto ids = InVocabIds(model.vocab(), tokens);
  if (!ids) return std::nullopt;
  std::vector<int32_t> seq{Vocabulary::kCls};
  seq.insert(seq.end(), ids->begin(), ids->end());
  seq.push_back(Vocabulary::kSep);
  std::vector<TokenScore> scores;
  for (size_t pos : unique) {
    std::vector<int32_t> masked = seq;
    masked[pos + 1] = Vocabulary::kMask;
    const double lp = MaskedLogProbs(model, std::move(masked), {pos + 1}, {seq[pos + 1]})[0];
    scores.push_back({pos, lp});
  }
  return scores;
}

}  // namespace

CrowsRun RunCrows(const EncoderModel& model, const std::vector<CrowsRecord>& records) {
  CrowsRun run;
  for (const CrowsRecord& r : records) {
    const std::vector<std::string> more = NormalizedTokens(r.sent_more);
    const std::vector<std::string> less = NormalizedTokens(r.sent_less);
    auto more_scores = ScoreUnique(model, more, UniqueTokenPositions(more, less));
    auto less_scores = ScoreUnique(model, less, UniqueTokenPositions(less, more));
    if (!more_scores || !less_scores) {
      ++run.skipped;
      continue;
    }
    run.items.push_back({std::move(*more_scores), std::move(*less_scores)});
  }
  return run;
}

Tensor EmbedConcepts(const EncoderModel& model, const std::vector<std::string>& concepts,
                     const std::vector<std::string>& templates, Extraction extraction) {
  const size_t d = model.config().hidden;
  Tensor out(Shape{concepts.size(), d});
  for (size_t c = 0; c < concepts.size(); ++c) {
    std::vector<std::string> texts;
    if (templates.empty()) {
      texts.push_back(concepts[c]);
    } else {
      for (const std::string& t : templates) {
        const size_t at = t.find("BLANK");
        if (at == std::string::npos) {
          throw Error(ErrorCode::kMalformedItemFile, "template has no BLANK: " + t);
        }
        texts.push_back(t.substr(0, at) + concepts[c] + t.substr(at + 5));
      }
    }
    const Tensor emb = EmbedSentences(model, texts, extraction);
    for (size_t k = 0; k < d; ++k) {
      double sum = 0.0;
      for (size_t r = 0; r < texts.size(); ++r) sum += emb.at(r, k);
      out.at(c, k) = sum / static_cast<double>(texts.size());
    }
  }
  return out;
}

SeatScores RunSeat(const EncoderModel& model, const SeatSpec& spec, Extraction extraction) {
  auto embed = [&](const std::vector<std::string>& words) {
    if (words.empty()) throw Error(ErrorCode::kEmptySet, "SEAT set is empty");
    return EmbedConcepts(model, words, spec.templates, extraction);
  };
  return ComputeSeat(embed(spec.targets_x), embed(spec.targets_y), embed(spec.attributes_a),
                     embed(spec.attributes_b));
}

}  // namespace mabel
