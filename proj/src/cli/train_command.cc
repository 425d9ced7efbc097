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

#include <filesystem>
#include <fstream>
#include <set>

#include "cli/commands.h"
#include "mabel/cli/app.h"
#include "mabel/cli/run_config.h"
#include "mabel/core/error.h"
#include "mabel/data/batch.h"
#include "mabel/data/corpus.h"
#include "mabel/data/synthetic.h"
#include "mabel/metrics/report.h"
#include "mabel/trainer/checkpoint.h"
#include "mabel/trainer/trainer.h"

namespace mabel::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct RunData {
  Corpus train;
  std::optional<Corpus> eval;
  Vocabulary vocab;
};

RunData LoadData(const RunConfig& config) {
  const GenderLexicon lexicon = config.lexicon.empty()
                                    ? GenderLexicon::Builtin()
                                    : GenderLexicon::LoadTsv(config.lexicon);
  std::set<NliLabel> labels;
  for (const std::string& l : config.labels) labels.insert(*ParseNliLabel(l));

  RunData data;
  const bool synthetic = config.train_data.empty();
  if (synthetic) {
    data.train = GenerateSyntheticCorpus(config.synthetic_seed, config.synthetic_pairs,
                                         config.synthetic_bias)
                     .corpus;
  } else {
    data.train = IngestNliJsonl(config.train_data, labels, lexicon, config.gender_filter);
  }
  if (!config.eval_data.empty()) {
    data.eval = IngestNliJsonl(config.eval_data, labels, lexicon, config.gender_filter);
  } else if (config.synthetic_eval_pairs > 0) {
    data.eval = GenerateSyntheticCorpus(config.synthetic_seed + 1, config.synthetic_eval_pairs,
                                        config.synthetic_bias)
                    .corpus;
  }

  if (!config.vocab.empty()) {
    data.vocab = Vocabulary::Load(config.vocab);
  } else {
    std::vector<std::string> texts = CorpusSentences(data.train);
    if (data.eval) {
      for (std::string& s : CorpusSentences(*data.eval)) texts.push_back(std::move(s));
    }
    if (synthetic || config.synthetic_eval_pairs > 0) {
      for (std::string& s : SyntheticVocabularyTexts()) texts.push_back(std::move(s));
    }
    data.vocab = Vocabulary::Build(texts);
  }
  return data;
}

ordered_json OptionalJson(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

int TrainRuns(const TrainOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config = LoadRunConfig(options.config, options.overrides);
  if (options.seed_sweep > 0) {
    nlohmann::json overrides = options.overrides;
    nlohmann::json seeds = nlohmann::json::array();
    for (size_t i = 0; i < options.seed_sweep; ++i) seeds.push_back(config.seeds.front() + i);
    overrides["seeds"] = seeds;
    config = LoadRunConfig(options.config, overrides);
  }
  const std::string resolved = config.ToJson().dump();
  const RunData data = LoadData(config);
  fs::create_directories(config.output_dir);

  std::optional<EncoderModel> init;
  if (!config.init_checkpoint.empty()) init = LoadCheckpoint(config.init_checkpoint).model;

  MetricReport report;
  std::vector<std::optional<double>> final_loss, final_alignment, initial_alignment;
  ordered_json runs = ordered_json::array();
  for (uint64_t seed : config.seeds) {
    const fs::path dir = fs::path(config.output_dir) / ("seed-" + std::to_string(seed));
    TrainConfig tc = config.Training(seed);
    tc.checkpoint_dir = dir.string();
    EncoderModel model = init ? *init : EncoderModel::Initialize(config.Encoder(), data.vocab, seed);
    tc.maxlen = std::min(tc.maxlen, model.config().maxlen);
    std::optional<double> initial_gap;
    if (data.eval) initial_gap = MeanAlignmentGap(model, *data.eval);

    TrainResult result = [&] {
      try {
        return Train(std::move(model), data.train, tc, data.eval ? &*data.eval : nullptr);
      } catch (const Error&) {
        err << "seed " << seed << " failed\n";
        throw;
      }
    }();

    std::ofstream trace(dir / "trace.jsonl", std::ios::trunc);
    for (const StepRecord& r : result.trace.steps) trace << StepRecordJson(r) << "\n";

    std::optional<double> final_gap;
    if (data.eval) final_gap = MeanAlignmentGap(result.model, *data.eval);
    const std::optional<double> last =
        result.trace.steps.empty() ? std::nullopt
                                   : std::optional<double>(result.trace.steps.back().loss.total);
    final_loss.push_back(last);
    final_alignment.push_back(final_gap);
    initial_alignment.push_back(initial_gap);
    for (const std::string& w : result.trace.warnings) {
      report.warnings.push_back("seed " + std::to_string(seed) + ": " + w);
    }

    ordered_json run;
    run["seed"] = seed;
    run["steps"] = result.trace.steps.size();
    run["final_loss"] = OptionalJson(last);
    run["initial_alignment"] = OptionalJson(initial_gap);
    run["final_alignment"] = OptionalJson(final_gap);
    run["wall_seconds"] = result.trace.wall_seconds;
    run["checkpoint"] = result.checkpoints.empty() ? "" : result.checkpoints.back();
    run["warnings"] = result.trace.warnings;
    runs.push_back(run);

    out << "seed " << seed << ": " << result.trace.steps.size() << " steps";
    if (last) out << ", final loss " << *last;
    if (final_gap) out << ", held-out alignment gap " << *final_gap;
    out << ", " << result.trace.wall_seconds << " s\n";
  }

  ordered_json run_json;
  run_json["config"] = config.ToJson();
  run_json["train_pairs"] = data.train.quads.size();
  run_json["provenance"] = data.train.provenance;
  run_json["runs"] = runs;
  std::ofstream(fs::path(config.output_dir) / "run.json", std::ios::trunc)
      << run_json.dump(2) << "\n";

  report.Add("final_loss", final_loss);
  if (data.eval) {
    report.Add("initial_alignment_gap", initial_alignment);
    report.Add("final_alignment_gap", final_alignment);
  }
  std::ofstream(fs::path(config.output_dir) / "report.json", std::ios::trunc)
      << ReportJson(report, resolved) << "\n";
  return kExitOk;
}

}  // namespace mabel::cli
