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

#include "mabel/trainer/checkpoint.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "mabel/core/error.h"

namespace mabel {
namespace {

using nlohmann::json;

template <typename T>
void AppendLittleEndian(std::string& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T ReadLittleEndian(const std::string& in, size_t offset) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

json ConfigToJson(const EncoderConfig& c) {
  return {{"hidden", c.hidden},     {"layers", c.layers},
          {"heads", c.heads},       {"ffn", c.ffn},
          {"maxlen", c.maxlen},     {"dropout", c.dropout},
          {"tied_mlm", c.tied_mlm}, {"layer_norm_eps", c.layer_norm_eps}};
}

EncoderConfig ConfigFromJson(const json& j) {
  EncoderConfig c;
  c.hidden = j.at("hidden").get<size_t>();
  c.layers = j.at("layers").get<size_t>();
  c.heads = j.at("heads").get<size_t>();
  c.ffn = j.at("ffn").get<size_t>();
  c.maxlen = j.at("maxlen").get<size_t>();
  c.dropout = j.at("dropout").get<double>();
  c.tied_mlm = j.at("tied_mlm").get<bool>();
  c.layer_norm_eps = j.at("layer_norm_eps").get<double>();
  return c;
}

}  // namespace

void SaveCheckpoint(const EncoderModel& model, const std::string& run_config_json,
                    const std::string& path) {
  json meta;
  meta["encoder"] = ConfigToJson(model.config());
  meta["vocab"] = model.vocab().tokens();
  json manifest = json::array();
  for (const NamedTensor& p : model.parameters()) {
    manifest.push_back({{"name", p.name}, {"shape", p.value.shape}});
  }
  meta["manifest"] = std::move(manifest);
  meta["run_config"] =
      run_config_json.empty() ? json(nullptr) : json::parse(run_config_json);
  const std::string meta_text = meta.dump();

  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  AppendLittleEndian<uint32_t>(out, kCheckpointVersion);
  AppendLittleEndian<uint64_t>(out, meta_text.size());
  out += meta_text;
  for (const NamedTensor& p : model.parameters()) {
    for (double v : p.value.data) AppendLittleEndian<double>(out, v);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorCode::kIo, "write failed for " + path);
}

CheckpointContents LoadCheckpoint(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot read " + path);
  const std::string in((std::istreambuf_iterator<char>(file)),
                       std::istreambuf_iterator<char>());
  constexpr size_t kHeader = sizeof(kCheckpointMagic) + 4 + 8;
  if (in.size() < sizeof(kCheckpointMagic) ||
      std::memcmp(in.data(), kCheckpointMagic, sizeof(kCheckpointMagic)) != 0) {
    throw Error(ErrorCode::kBadMagic, path + " is not a checkpoint");
  }
  if (in.size() < kHeader) throw Error(ErrorCode::kTruncatedFile, path + ": short header");
  const uint32_t version = ReadLittleEndian<uint32_t>(in, 4);
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path + ": version " + std::to_string(version) + ", expected " +
                    std::to_string(kCheckpointVersion));
  }
  const uint64_t meta_len = ReadLittleEndian<uint64_t>(in, 8);
  if (meta_len > in.size() - kHeader) {
    throw Error(ErrorCode::kTruncatedFile, path + ": metadata cut short");
  }
  json meta;
  EncoderConfig config;
  std::vector<std::string> tokens;
  std::vector<std::pair<std::string, Shape>> manifest;
  try {
    meta = json::parse(in.substr(kHeader, meta_len));
    config = ConfigFromJson(meta.at("encoder"));
    tokens = meta.at("vocab").get<std::vector<std::string>>();
    for (const json& entry : meta.at("manifest")) {
      manifest.emplace_back(entry.at("name").get<std::string>(),
                            entry.at("shape").get<Shape>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kManifestMismatch, path + ": bad metadata: " + e.what());
  }
  Vocabulary vocab = Vocabulary::FromTokens(tokens);
  if (manifest != ParameterManifest(config, vocab.size())) {
    throw Error(ErrorCode::kManifestMismatch,
                path + ": stored manifest does not match its encoder config");
  }
  size_t offset = kHeader + meta_len;
  std::vector<NamedTensor> params;
  for (const auto& [name, shape] : manifest) {
    Tensor t(shape);
    const size_t bytes = t.size() * sizeof(double);
    if (in.size() - offset < bytes) {
      throw Error(ErrorCode::kTruncatedFile, path + ": parameter " + name + " cut short");
    }
    for (size_t i = 0; i < t.size(); ++i) {
      t[i] = ReadLittleEndian<double>(in, offset + i * sizeof(double));
    }
    offset += bytes;
    params.push_back({name, std::move(t)});
  }
  if (offset != in.size()) {
    throw Error(ErrorCode::kManifestMismatch,
                path + ": " + std::to_string(in.size() - offset) + " trailing bytes");
  }
  CheckpointContents out{EncoderModel::FromParameters(config, std::move(vocab),
                                                      std::move(params)),
                         meta["run_config"].is_null() ? "" : meta["run_config"].dump()};
  return out;
}

}  // namespace mabel
