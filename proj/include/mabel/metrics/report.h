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

#ifndef MABEL_METRICS_REPORT_H_
#define MABEL_METRICS_REPORT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mabel {

// One metric across seeds. Missing per-seed values (undefined metrics) are
// kept as nulls and excluded from the mean and std.
struct MetricSeries {
  std::vector<std::optional<double>> per_seed;
  std::optional<double> mean;
  std::optional<double> std;  // Sample (n - 1) std; 0 for a single value.
  bool single_value = false;
};

MetricSeries Summarize(const std::vector<std::optional<double>>& per_seed);

struct MetricReport {
  std::vector<std::pair<std::string, MetricSeries>> metrics;  // Insertion order.
  // Aggregates that are not a per-seed mean, e.g. a gap of seed-averaged F1s.
  std::vector<std::pair<std::string, double>> headlines;
  std::vector<std::string> warnings;

  void Add(const std::string& name, const std::vector<std::optional<double>>& per_seed);
  const MetricSeries* Find(const std::string& name) const;
};

// {"metrics": {name: {"per_seed", "mean", "std", "n1"}}, "headline": {...},
//  "warnings": [...], "config": <resolved config>}. `config_json` must be JSON text or empty.
std::string ReportJson(const MetricReport& report, const std::string& config_json);

}  // namespace mabel

#endif  // MABEL_METRICS_REPORT_H_
