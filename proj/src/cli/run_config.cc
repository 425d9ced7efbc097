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

#include "mabel/cli/run_config.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "mabel/core/error.h"

namespace mabel {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, why);
}

template <typename T>
void Read(const json& obj, const char* key, T* field) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    if constexpr (std::is_same_v<T, size_t> || std::is_same_v<T, uint64_t>) {
      if (!it->is_number_integer() || it->get<int64_t>() < 0) {
        Invalid(std::string("key '") + key + "' must be a non-negative integer");
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) Invalid(std::string("key '") + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) Invalid(std::string("key '") + key + "' must be a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) Invalid(std::string("key '") + key + "' must be a string");
    }
    if constexpr (std::is_same_v<T, std::vector<uint64_t>>) {
      if (!it->is_array()) Invalid(std::string("key '") + key + "' must be a list");
      for (const json& v : *it) {
        if (!v.is_number_integer() || v.get<int64_t>() < 0) {
          Invalid(std::string("key '") + key + "' must list non-negative integers");
        }
      }
    }
    *field = it->get<T>();
  } catch (const json::exception&) {
    Invalid(std::string("key '") + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig RunConfig::FromJson(const json& obj) {
  if (!obj.is_object()) Invalid("config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "alpha", "lambda", "tau", "align_variant", "strict_exclusion", "ablate", "lr",
      "warmup_steps", "batch_size", "grad_accum", "epochs", "seeds", "mask_prob", "maxlen",
      "shuffle", "eval_every", "checkpoint_every", "hidden", "layers", "heads", "ffn",
      "dropout", "tied_mlm", "init_checkpoint", "train_data", "eval_data", "labels",
      "gender_filter", "lexicon", "vocab", "synthetic_pairs", "synthetic_bias",
      "synthetic_seed", "synthetic_eval_pairs", "output_dir"};
  for (const auto& [key, value] : obj.items()) {
    if (!kKeys.count(key)) Invalid("unknown key '" + key + "'");
  }
  RunConfig c;
  Read(obj, "alpha", &c.alpha);
  Read(obj, "lambda", &c.lambda);
  Read(obj, "tau", &c.tau);
  Read(obj, "align_variant", &c.align_variant);
  Read(obj, "strict_exclusion", &c.strict_exclusion);
  Read(obj, "ablate", &c.ablate);
  Read(obj, "lr", &c.lr);
  Read(obj, "warmup_steps", &c.warmup_steps);
  Read(obj, "batch_size", &c.batch_size);
  Read(obj, "grad_accum", &c.grad_accum);
  Read(obj, "epochs", &c.epochs);
  Read(obj, "seeds", &c.seeds);
  Read(obj, "mask_prob", &c.mask_prob);
  Read(obj, "maxlen", &c.maxlen);
  Read(obj, "shuffle", &c.shuffle);
  Read(obj, "eval_every", &c.eval_every);
  Read(obj, "checkpoint_every", &c.checkpoint_every);
  Read(obj, "hidden", &c.hidden);
  Read(obj, "layers", &c.layers);
  Read(obj, "heads", &c.heads);
  Read(obj, "ffn", &c.ffn);
  Read(obj, "dropout", &c.dropout);
  Read(obj, "tied_mlm", &c.tied_mlm);
  Read(obj, "init_checkpoint", &c.init_checkpoint);
  Read(obj, "train_data", &c.train_data);
  Read(obj, "eval_data", &c.eval_data);
  Read(obj, "labels", &c.labels);
  Read(obj, "gender_filter", &c.gender_filter);
  Read(obj, "lexicon", &c.lexicon);
  Read(obj, "vocab", &c.vocab);
  Read(obj, "synthetic_pairs", &c.synthetic_pairs);
  Read(obj, "synthetic_bias", &c.synthetic_bias);
  Read(obj, "synthetic_seed", &c.synthetic_seed);
  Read(obj, "synthetic_eval_pairs", &c.synthetic_eval_pairs);
  Read(obj, "output_dir", &c.output_dir);

  for (const std::string& a : c.ablate) {
    if (a != "no-cl" && a != "no-al" && a != "no-mlm") {
      Invalid("key 'ablate': unknown ablation '" + a + "'");
    }
  }
  if (c.seeds.empty()) Invalid("key 'seeds' must list at least one seed");
  if (std::set<uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size()) {
    Invalid("key 'seeds' has duplicates");
  }
  for (const std::string& l : c.labels) {
    if (!ParseNliLabel(l)) Invalid("key 'labels': unknown label '" + l + "'");
  }
  if (c.synthetic_bias < 0.0 || c.synthetic_bias > 1.0) {
    Invalid("key 'synthetic_bias' must lie in [0, 1]");
  }
  if (c.train_data.empty() && c.synthetic_pairs == 0) {
    Invalid("key 'synthetic_pairs' must be positive without train_data");
  }
  if (c.output_dir.empty()) Invalid("key 'output_dir' must not be empty");
  if (!ParseAlignVariant(c.align_variant)) {
    Invalid("key 'align_variant': unknown variant '" + c.align_variant + "'");
  }
  try {
    c.Encoder().Validate();
    c.Training(c.seeds.front()).Validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    Invalid(e.what());
  }
  return c;
}

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["lambda"] = lambda;
  j["tau"] = tau;
  j["align_variant"] = align_variant;
  j["strict_exclusion"] = strict_exclusion;
  j["ablate"] = ablate;
  j["lr"] = lr;
  j["warmup_steps"] = warmup_steps;
  j["batch_size"] = batch_size;
  j["grad_accum"] = grad_accum;
  j["epochs"] = epochs;
  j["seeds"] = seeds;
  j["mask_prob"] = mask_prob;
  j["maxlen"] = maxlen;
  j["shuffle"] = shuffle;
  j["eval_every"] = eval_every;
  j["checkpoint_every"] = checkpoint_every;
  j["hidden"] = hidden;
  j["layers"] = layers;
  j["heads"] = heads;
  j["ffn"] = ffn;
  j["dropout"] = dropout;
  j["tied_mlm"] = tied_mlm;
  j["init_checkpoint"] = init_checkpoint;
  j["train_data"] = train_data;
  j["eval_data"] = eval_data;
  j["labels"] = labels;
  j["gender_filter"] = gender_filter;
  j["lexicon"] = lexicon;
  j["vocab"] = vocab;
  j["synthetic_pairs"] = synthetic_pairs;
  j["synthetic_bias"] = synthetic_bias;
  j["synthetic_seed"] = synthetic_seed;
  j["synthetic_eval_pairs"] = synthetic_eval_pairs;
  j["output_dir"] = output_dir;
  return j;
}

EncoderConfig RunConfig::Encoder() const {
  EncoderConfig e;
  e.hidden = hidden;
  e.layers = layers;
  e.heads = heads;
  e.ffn = ffn;
  e.maxlen = maxlen;
  e.dropout = dropout;
  e.tied_mlm = tied_mlm;
  return e;
}

TrainConfig RunConfig::Training(uint64_t seed) const {
  TrainConfig t;
  t.objective.alpha = alpha;
  t.objective.lambda = lambda;
  t.objective.tau = tau;
  t.objective.align = ParseAlignVariant(align_variant).value_or(AlignVariant::kAl1);
  t.objective.strict_exclusion = strict_exclusion;
  auto has = [&](const char* name) {
    return std::find(ablate.begin(), ablate.end(), name) != ablate.end();
  };
  t.objective.use_cl = !has("no-cl");
  t.objective.use_al = !has("no-al");
  t.objective.use_mlm = !has("no-mlm");
  t.adam.lr = lr;
  t.adam.warmup_steps = warmup_steps;
  t.batch_size = batch_size;
  t.grad_accum = grad_accum;
  t.epochs = epochs;
  t.seed = seed;
  t.maxlen = maxlen;
  t.mask_prob = mask_prob;
  t.shuffle = shuffle;
  t.eval_every = eval_every;
  t.checkpoint_every = checkpoint_every;
  t.run_config_json = ToJson().dump();
  return t;
}

RunConfig LoadRunConfig(const std::string& path, const json& overrides) {
  json obj = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) Invalid("cannot read config " + path);
    try {
      obj = json::parse(in);
    } catch (const json::exception& e) {
      Invalid(path + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) Invalid(path + ": config must be a JSON object");
  }
  for (const auto& [key, value] : overrides.items()) obj[key] = value;
  return RunConfig::FromJson(obj);
}

std::pair<std::string, json> ParseOverride(const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    Invalid("override '" + assignment + "' must look like key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) value = text;
  return {key, value};
}

}  // namespace mabel
