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

#include "mabel/metrics/inputs.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mabel/core/error.h"

namespace mabel {
namespace {

using nlohmann::json;

[[noreturn]] void Malformed(const std::string& path, size_t line, const std::string& why) {
  throw Error(ErrorCode::kMalformedItemFile,
              path + (line ? ":" + std::to_string(line) : "") + ": " + why);
}

std::ifstream Open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return in;
}

bool Blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Calls fn(object, line_no) for every non-blank JSONL line.
template <typename Fn>
void ForEachJsonLine(const std::string& path, Fn fn) {
  std::ifstream in = Open(path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      Malformed(path, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) Malformed(path, line_no, "expected a JSON object");
    fn(obj, line_no);
  }
}

std::string StringField(const json& obj, const char* name, const std::string& path,
                        size_t line) {
  auto it = obj.find(name);
  if (it == obj.end() || !it->is_string()) {
    Malformed(path, line, std::string("missing string field \"") + name + "\"");
  }
  return it->get<std::string>();
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const size_t b = cell.find_first_not_of(" \t\r");
    const size_t e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool ParseDouble(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

size_t CountOccurrences(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

std::vector<StereoSetRecord> LoadStereoSetFile(const std::string& path) {
  std::vector<StereoSetRecord> out;
  ForEachJsonLine(path, [&](const json& obj, size_t line) {
    StereoSetRecord r{StringField(obj, "context", path, line),
                      StringField(obj, "stereotype", path, line),
                      StringField(obj, "anti_stereotype", path, line),
                      StringField(obj, "unrelated", path, line)};
    if (CountOccurrences(r.context, "BLANK") != 1) {
      Malformed(path, line, "context must contain exactly one BLANK");
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<CrowsRecord> LoadCrowsFile(const std::string& path) {
  std::vector<CrowsRecord> out;
  ForEachJsonLine(path, [&](const json& obj, size_t line) {
    out.push_back({StringField(obj, "sent_more", path, line),
                   StringField(obj, "sent_less", path, line)});
  });
  return out;
}

ClassifiedFile LoadClassifiedCsv(const std::string& path) {
  std::ifstream in = Open(path);
  std::string line;
  size_t line_no = 0;
  ClassifiedFile out;
  while (std::getline(in, line)) {
    ++line_no;
    if (Blank(line)) continue;
    const std::vector<std::string> cells = SplitCsv(line);
    if (out.classes.empty()) {
      if (cells.size() < 5 || cells[0] != "gender" || cells[1] != "true" ||
          cells[2] != "pred") {
        Malformed(path, line_no,
                  "header must be gender,true,pred followed by at least two classes");
      }
      out.classes.assign(cells.begin() + 3, cells.end());
      continue;
    }
    if (cells.size() != 3) Malformed(path, line_no, "expected gender,true,pred");
    ClassifiedExample e;
    if (cells[0] == "M" || cells[0] == "m") {
      e.gender = BinaryGender::kMale;
    } else if (cells[0] == "F" || cells[0] == "f") {
      e.gender = BinaryGender::kFemale;
    } else {
      Malformed(path, line_no, "gender must be M or F");
    }
    auto class_index = [&](const std::string& cell) {
      auto it = std::find(out.classes.begin(), out.classes.end(), cell);
      if (it != out.classes.end()) return static_cast<int32_t>(it - out.classes.begin());
      int32_t idx = -1;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), idx);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || idx < 0 ||
          static_cast<size_t>(idx) >= out.classes.size()) {
        Malformed(path, line_no, "unknown class '" + cell + "'");
      }
      return idx;
    };
    e.label = class_index(cells[1]);
    e.predicted = class_index(cells[2]);
    out.examples.push_back(e);
  }
  if (out.classes.empty()) Malformed(path, 0, "missing header row");
  return out;
}

std::vector<NliDistribution> LoadNliCsv(const std::string& path) {
  std::ifstream in = Open(path);
  std::string line;
  size_t line_no = 0;
  std::vector<NliDistribution> out;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (Blank(line)) continue;
    const std::vector<std::string> cells = SplitCsv(line);
    double v[3];
    const bool numeric = cells.size() == 3 && ParseDouble(cells[0], &v[0]) &&
                         ParseDouble(cells[1], &v[1]) && ParseDouble(cells[2], &v[2]);
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // Header row.
      }
      Malformed(path, line_no, "expected p_entail,p_neutral,p_contradict");
    }
    first = false;
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

std::vector<WinobiasEntry> LoadWinobiasJson(const std::string& path) {
  std::ifstream in = Open(path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    Malformed(path, 0, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object() || root.empty()) Malformed(path, 0, "expected a non-empty object");
  std::vector<WinobiasEntry> out;
  for (const auto& [type, entry] : root.items()) {
    if (!entry.is_object() || !entry.contains("pro") || !entry.contains("anti") ||
        !entry["pro"].is_number() || !entry["anti"].is_number()) {
      Malformed(path, 0, "entry " + type + " needs numeric pro and anti");
    }
    out.push_back({type, entry["pro"].get<double>(), entry["anti"].get<double>()});
  }
  return out;
}

SeatSpec LoadSeatFile(const std::string& path) {
  std::ifstream in = Open(path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    Malformed(path, 0, std::string("invalid JSON: ") + e.what());
  }
  auto list = [&](const char* name, bool required) {
    std::vector<std::string> out;
    if (!root.is_object() || !root.contains(name)) {
      if (required) Malformed(path, 0, std::string("missing list \"") + name + "\"");
      return out;
    }
    try {
      out = root[name].get<std::vector<std::string>>();
    } catch (const json::exception&) {
      Malformed(path, 0, std::string("\"") + name + "\" must be a list of strings");
    }
    return out;
  };
  SeatSpec spec{list("targets_x", true), list("targets_y", true),
                list("attributes_a", true), list("attributes_b", true),
                list("templates", false)};
  for (const std::string& t : spec.templates) {
    if (CountOccurrences(t, "BLANK") != 1) {
      Malformed(path, 0, "template '" + t + "' must contain exactly one BLANK");
    }
  }
  return spec;
}

std::vector<LabeledRecord> LoadLabeledJsonl(const std::string& path, bool require_label) {
  std::vector<LabeledRecord> out;
  ForEachJsonLine(path, [&](const json& obj, size_t line) {
    LabeledRecord r;
    if (obj.contains("text")) {
      r.first = StringField(obj, "text", path, line);
    } else {
      r.first = StringField(obj, "premise", path, line);
      r.second = StringField(obj, "hypothesis", path, line);
    }
    auto label = obj.find("label");
    if (label == obj.end()) {
      if (require_label) Malformed(path, line, "missing label");
    } else if (label->is_string()) {
      r.label = label->get<std::string>();
    } else if (label->is_number_integer()) {
      r.label = std::to_string(label->get<int64_t>());
    } else {
      Malformed(path, line, "label must be a string or integer");
    }
    if (obj.contains("gender")) r.gender = StringField(obj, "gender", path, line);
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace mabel
