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

#include "mabel/metrics/report.h"

#include <cmath>

#include "json.hpp"

namespace mabel {

MetricSeries Summarize(const std::vector<std::optional<double>>& per_seed) {
  MetricSeries out;
  out.per_seed = per_seed;
  std::vector<double> values;
  for (const auto& v : per_seed) {
    if (v) values.push_back(*v);
  }
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  out.mean = mean;
  if (values.size() == 1) {
    out.std = 0.0;
    out.single_value = true;
    return out;
  }
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return out;
}

void MetricReport::Add(const std::string& name,
                       const std::vector<std::optional<double>>& per_seed) {
  metrics.emplace_back(name, Summarize(per_seed));
}

const MetricSeries* MetricReport::Find(const std::string& name) const {
  for (const auto& [n, series] : metrics) {
    if (n == name) return &series;
  }
  return nullptr;
}

std::string ReportJson(const MetricReport& report, const std::string& config_json) {
  using nlohmann::ordered_json;
  auto optional_json = [](const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  ordered_json root;
  ordered_json metrics = ordered_json::object();
  for (const auto& [name, series] : report.metrics) {
    ordered_json entry;
    ordered_json per_seed = ordered_json::array();
    for (const auto& v : series.per_seed) per_seed.push_back(optional_json(v));
    entry["per_seed"] = std::move(per_seed);
    entry["mean"] = optional_json(series.mean);
    entry["std"] = optional_json(series.std);
    entry["n1"] = series.single_value;
    metrics[name] = std::move(entry);
  }
  root["metrics"] = std::move(metrics);
  ordered_json headline = ordered_json::object();
  for (const auto& [name, value] : report.headlines) headline[name] = value;
  root["headline"] = std::move(headline);
  root["warnings"] = report.warnings;
  root["config"] =
      config_json.empty() ? ordered_json(nullptr) : ordered_json::parse(config_json);
  return root.dump(2);
}

}  // namespace mabel
