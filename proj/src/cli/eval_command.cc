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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cli/commands.h"
#include "mabel/cda/augment.h"
#include "mabel/cli/app.h"
#include "mabel/core/error.h"
#include "mabel/metrics/drivers.h"
#include "mabel/metrics/inputs.h"
#include "mabel/metrics/report.h"
#include "mabel/metrics/scores.h"
#include "mabel/trainer/checkpoint.h"
#include "mabel/trainer/classifier.h"

namespace mabel::cli {
namespace {

using nlohmann::ordered_json;
using Series = std::vector<std::optional<double>>;

constexpr size_t kBiosClasses = 28;

[[noreturn]] void Usage(const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, why);
}

// Accumulates named per-seed values in first-seen order.
class SeriesTable {
 public:
  explicit SeriesTable(size_t seeds) : seeds_(seeds) {}

  void Set(const std::string& name, size_t seed, std::optional<double> value) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, columns_.size()).first;
      columns_.emplace_back(name, Series(seeds_));
    }
    columns_[it->second].second[seed] = value;
  }

  void AddTo(MetricReport& report) const {
    for (const auto& [name, series] : columns_) report.Add(name, series);
  }

 private:
  size_t seeds_;
  std::map<std::string, size_t> index_;
  std::vector<std::pair<std::string, Series>> columns_;
};

struct LoadedModel {
  std::string path;
  EncoderModel model;
  std::string run_config;
};

std::vector<LoadedModel> LoadModels(const EvalOptions& options) {
  if (options.checkpoints.empty()) {
    Usage("metric '" + options.metric + "' needs at least one --checkpoint");
  }
  std::vector<LoadedModel> models;
  for (const std::string& path : options.checkpoints) {
    CheckpointContents c = LoadCheckpoint(path);
    models.push_back({path, std::move(c.model), std::move(c.run_config)});
  }
  return models;
}

const std::string& RequireItems(const EvalOptions& options) {
  if (options.items.empty()) Usage("metric '" + options.metric + "' needs --items");
  return options.items;
}

Extraction ExtractionFor(const EvalOptions& options, Extraction fallback) {
  if (options.extraction.empty()) return fallback;
  return options.extraction == "cls" ? Extraction::kCls : Extraction::kPooled;
}

void StereoSetMetric(const EvalOptions& options, SeriesTable& table, MetricReport& report) {
  const std::vector<StereoSetRecord> records = LoadStereoSetFile(RequireItems(options));
  const std::vector<LoadedModel> models = LoadModels(options);
  for (size_t s = 0; s < models.size(); ++s) {
    const StereoSetRun run = RunStereoSet(models[s].model, records);
    if (run.skipped > 0) {
      report.warnings.push_back(models[s].path + ": skipped " + std::to_string(run.skipped) +
                                " of " + std::to_string(records.size()) +
                                " items with out-of-vocabulary candidates");
    }
    const StereoSetScores scores = ComputeStereoSet(run.items);
    table.Set("lm", s, scores.lm);
    table.Set("ss", s, scores.ss);
    table.Set("icat", s, scores.icat);
    table.Set("ties", s, static_cast<double>(scores.ties));
    table.Set("scored_items", s, static_cast<double>(scores.items));
  }
}

void CrowsMetric(const EvalOptions& options, SeriesTable& table, MetricReport& report) {
  const std::vector<CrowsRecord> records = LoadCrowsFile(RequireItems(options));
  const std::vector<LoadedModel> models = LoadModels(options);
  for (size_t s = 0; s < models.size(); ++s) {
    const CrowsRun run = RunCrows(models[s].model, records);
    if (run.skipped > 0) {
      report.warnings.push_back(models[s].path + ": skipped " + std::to_string(run.skipped) +
                                " of " + std::to_string(records.size()) +
                                " pairs (out-of-vocabulary, too long or no unique token)");
    }
    const CrowsScores scores = ComputeCrows(run.items);
    if (scores.all_ties) report.warnings.push_back(models[s].path + ": every pair tied");
    table.Set("ss", s, scores.ss);
    table.Set("ties", s, static_cast<double>(scores.ties));
    table.Set("scored_items", s, static_cast<double>(scores.items));
  }
}

void SeatMetric(const EvalOptions& options, SeriesTable& table) {
  const SeatSpec spec = LoadSeatFile(RequireItems(options));
  const std::vector<LoadedModel> models = LoadModels(options);
  for (size_t s = 0; s < models.size(); ++s) {
    const SeatScores scores =
        RunSeat(models[s].model, spec, ExtractionFor(options, Extraction::kPooled));
    table.Set("statistic", s, scores.statistic);
    table.Set("effect_size", s, scores.effect_size);
  }
}

const std::vector<std::string>& RequireInputs(const EvalOptions& options) {
  if (options.inputs.empty()) Usage("metric '" + options.metric + "' needs --inputs");
  return options.inputs;
}

void TprMetric(const EvalOptions& options, SeriesTable& table, MetricReport& report) {
  std::vector<std::string> classes;
  const std::vector<std::string>& inputs = RequireInputs(options);
  double male_sum = 0.0, female_sum = 0.0, gap_sum = 0.0;
  for (size_t s = 0; s < inputs.size(); ++s) {
    const ClassifiedFile file = LoadClassifiedCsv(inputs[s]);
    if (s == 0) {
      classes = file.classes;
      if (classes.size() != kBiosClasses) {
        report.warnings.push_back("class list has " + std::to_string(classes.size()) +
                                  " classes; the occupation task defines " +
                                  std::to_string(kBiosClasses));
      }
    } else if (file.classes != classes) {
      throw Error(ErrorCode::kMalformedItemFile,
                  inputs[s] + ": class list differs from " + inputs[0]);
    }
    const TprGaps gaps = ComputeTprGaps(file.examples, classes.size());
    table.Set("gap", s, gaps.overall_gap);
    table.Set("rms", s, gaps.rms);
    table.Set("tpr_male", s, gaps.tpr_male);
    table.Set("tpr_female", s, gaps.tpr_female);
    for (size_t c = 0; c < classes.size(); ++c) {
      table.Set("gap." + classes[c], s, gaps.per_class_gap[c]);
    }
    male_sum += gaps.tpr_male;
    female_sum += gaps.tpr_female;
    gap_sum += gaps.overall_gap;
  }
  const double n = static_cast<double>(inputs.size());
  report.headlines.emplace_back(
      "gap", options.mean_of_gaps ? gap_sum / n : std::abs(male_sum - female_sum) / n);
}

void SetBiasNli(const BiasNliScores& scores, size_t s, SeriesTable& table) {
  table.Set("nn", s, scores.nn);
  table.Set("fn", s, scores.fn);
  for (const auto& [tau, fraction] : scores.thresholds) {
    std::ostringstream name;
    name << "t:" << tau;
    table.Set(name.str(), s, fraction);
  }
}

std::vector<TextExample> ToExamples(const std::vector<LabeledRecord>& records) {
  std::vector<TextExample> out;
  for (const LabeledRecord& r : records) {
    TextExample e;
    e.first = r.first;
    if (!r.second.empty()) e.second = r.second;
    out.push_back(std::move(e));
  }
  return out;
}

void BiasNliMetric(const EvalOptions& options, SeriesTable& table) {
  if (options.checkpoints.empty()) {
    const std::vector<std::string>& inputs = RequireInputs(options);
    for (size_t s = 0; s < inputs.size(); ++s) {
      SetBiasNli(ComputeBiasNli(LoadNliCsv(inputs[s]), options.taus), s, table);
    }
    return;
  }
  // Probe mode: fit a three-way probe on frozen features, then score the
  // evaluation pairs with its predicted distributions.
  if (options.train.empty()) Usage("biasnli with --checkpoint needs --train");
  const std::vector<LabeledRecord> train_records = LoadLabeledJsonl(options.train);
  const std::vector<LabeledRecord> items = LoadLabeledJsonl(RequireItems(options), false);
  std::vector<TextExample> train = ToExamples(train_records);
  std::vector<int32_t> labels;
  for (size_t i = 0; i < train_records.size(); ++i) {
    const auto label = ParseNliLabel(train_records[i].label);
    if (!label) {
      throw Error(ErrorCode::kMalformedItemFile,
                  options.train + ": unknown NLI label '" + train_records[i].label + "'");
    }
    labels.push_back(static_cast<int32_t>(*label));
  }
  const Extraction extraction = ExtractionFor(options, Extraction::kCls);
  for (size_t s = 0; s < options.checkpoints.size(); ++s) {
    const EncoderModel model = LoadCheckpoint(options.checkpoints[s]).model;
    const LinearClassifier probe =
        TrainProbe(ExampleFeatures(model, train, extraction), labels, 3, ProbeConfig{});
    const Tensor probs = probe.Probabilities(ExampleFeatures(model, ToExamples(items), extraction));
    std::vector<NliDistribution> dists;
    for (size_t i = 0; i < items.size(); ++i) {
      dists.push_back({probs.at(i, static_cast<size_t>(NliLabel::kEntailment)),
                       probs.at(i, static_cast<size_t>(NliLabel::kNeutral)),
                       probs.at(i, static_cast<size_t>(NliLabel::kContradiction))});
    }
    SetBiasNli(ComputeBiasNli(dists, options.taus), s, table);
  }
}

void WinobiasMetric(const EvalOptions& options, SeriesTable& table, MetricReport& report) {
  const std::vector<std::string>& inputs = RequireInputs(options);
  std::vector<std::pair<std::string, std::pair<double, double>>> sums;  // type -> (pro, anti)
  std::vector<std::pair<std::string, double>> gap_sums;
  for (size_t s = 0; s < inputs.size(); ++s) {
    const std::vector<WinobiasEntry> entries = LoadWinobiasJson(inputs[s]);
    if (s > 0 && entries.size() != sums.size()) {
      throw Error(ErrorCode::kMalformedItemFile, inputs[s] + ": types differ from " + inputs[0]);
    }
    for (size_t k = 0; k < entries.size(); ++k) {
      const WinobiasEntry& e = entries[k];
      const double gap = WinobiasGap(e.pro, e.anti);
      if (s == 0) {
        sums.push_back({e.type, {0.0, 0.0}});
        gap_sums.push_back({e.type, 0.0});
      } else if (sums[k].first != e.type) {
        throw Error(ErrorCode::kMalformedItemFile, inputs[s] + ": types differ from " + inputs[0]);
      }
      sums[k].second.first += e.pro;
      sums[k].second.second += e.anti;
      gap_sums[k].second += gap;
      table.Set(e.type + ".pro", s, e.pro);
      table.Set(e.type + ".anti", s, e.anti);
      table.Set(e.type + ".gap", s, gap);
    }
  }
  const double n = static_cast<double>(inputs.size());
  for (size_t k = 0; k < sums.size(); ++k) {
    const double headline = options.mean_of_gaps
                                ? gap_sums[k].second / n
                                : WinobiasGap(sums[k].second.first / n, sums[k].second.second / n);
    report.headlines.emplace_back(sums[k].first + ".gap", headline);
  }
}

void ProbeMetric(const EvalOptions& options, SeriesTable& table) {
  if (options.train.empty()) Usage("probe needs --train");
  const std::vector<LabeledRecord> train_records = LoadLabeledJsonl(options.train);
  const std::vector<LabeledRecord> test_records = LoadLabeledJsonl(RequireItems(options));
  std::vector<std::string> classes;
  auto class_of = [&](const std::string& label, bool add) -> int32_t {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it != classes.end()) return static_cast<int32_t>(it - classes.begin());
    if (!add) {
      throw Error(ErrorCode::kLabelOutOfRange, "test label '" + label + "' never seen in training");
    }
    classes.push_back(label);
    return static_cast<int32_t>(classes.size() - 1);
  };
  std::vector<int32_t> train_labels, test_labels;
  for (const LabeledRecord& r : train_records) train_labels.push_back(class_of(r.label, true));
  for (const LabeledRecord& r : test_records) test_labels.push_back(class_of(r.label, false));
  const bool gendered =
      !test_records.empty() && std::all_of(test_records.begin(), test_records.end(),
                                           [](const LabeledRecord& r) { return !r.gender.empty(); });
  const std::vector<TextExample> train = ToExamples(train_records);
  const std::vector<TextExample> test = ToExamples(test_records);
  const Extraction extraction = ExtractionFor(options, Extraction::kPooled);
  for (size_t s = 0; s < options.checkpoints.size() || s == 0; ++s) {
    if (options.checkpoints.empty()) LoadModels(options);
    const EncoderModel model = LoadCheckpoint(options.checkpoints[s]).model;
    const LinearClassifier probe = TrainProbe(ExampleFeatures(model, train, extraction),
                                              train_labels, classes.size(), ProbeConfig{});
    const Tensor test_features = ExampleFeatures(model, test, extraction);
    table.Set("accuracy", s, probe.Accuracy(test_features, test_labels));
    if (!gendered) continue;
    const std::vector<int32_t> predicted = probe.Predict(test_features);
    std::vector<ClassifiedExample> classified;
    for (size_t i = 0; i < test_records.size(); ++i) {
      const std::string& g = test_records[i].gender;
      if (g != "M" && g != "F") {
        throw Error(ErrorCode::kMalformedItemFile, options.items + ": gender must be M or F");
      }
      classified.push_back({g == "M" ? BinaryGender::kMale : BinaryGender::kFemale,
                            test_labels[i], predicted[i]});
    }
    const TprGaps gaps = ComputeTprGaps(classified, classes.size());
    table.Set("gap", s, gaps.overall_gap);
    table.Set("rms", s, gaps.rms);
  }
}

ordered_json EvalConfig(const EvalOptions& options) {
  ordered_json c;
  c["metric"] = options.metric;
  c["checkpoints"] = options.checkpoints;
  c["inputs"] = options.inputs;
  c["items"] = options.items;
  c["train"] = options.train;
  c["extraction"] = options.extraction.empty() ? "default" : options.extraction;
  c["taus"] = options.taus;
  c["gap_aggregation"] = options.mean_of_gaps ? "mean-of-gaps" : "gap-of-means";
  ordered_json runs = ordered_json::array();
  for (const std::string& path : options.checkpoints) {
    const std::string run_config = LoadCheckpoint(path).run_config;
    runs.push_back(run_config.empty() ? ordered_json(nullptr) : ordered_json::parse(run_config));
  }
  c["checkpoint_run_configs"] = runs;
  return c;
}

}  // namespace

int Evaluate(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  const bool per_checkpoint = options.metric == "stereoset" || options.metric == "crows" ||
                              options.metric == "seat" || options.metric == "probe" ||
                              (options.metric == "biasnli" && !options.checkpoints.empty());
  const size_t seeds = per_checkpoint ? options.checkpoints.size() : options.inputs.size();
  SeriesTable table(std::max<size_t>(seeds, 1));
  MetricReport report;
  if (options.metric == "stereoset") {
    StereoSetMetric(options, table, report);
  } else if (options.metric == "crows") {
    CrowsMetric(options, table, report);
  } else if (options.metric == "seat") {
    SeatMetric(options, table);
  } else if (options.metric == "tpr") {
    TprMetric(options, table, report);
  } else if (options.metric == "biasnli") {
    BiasNliMetric(options, table);
  } else if (options.metric == "winobias") {
    WinobiasMetric(options, table, report);
  } else if (options.metric == "probe") {
    ProbeMetric(options, table);
  } else {
    Usage("unknown metric '" + options.metric + "'");
  }
  table.AddTo(report);
  const std::string json = ReportJson(report, EvalConfig(options).dump());
  if (options.output.empty()) {
    out << json << "\n";
  } else {
    std::ofstream file(options.output, std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + options.output);
    file << json << "\n";
    err << "wrote " << options.output << "\n";
  }
  return kExitOk;
}

}  // namespace mabel::cli
