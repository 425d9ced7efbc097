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

#include "mabel/cli/app.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mabel/cli/run_config.h"
#include "mabel/core/error.h"
#include "mabel/data/synthetic.h"
#include "mabel/metrics/drivers.h"
#include "mabel/trainer/checkpoint.h"

namespace mabel {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mabel_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path Write(const fs::path& p, const std::string& contents) {
  std::ofstream(p, std::ios::trunc) << contents;
  return p;
}

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// Tiny synthetic training setup that finishes in well under a second.
std::vector<std::string> TinyTrainArgs(const fs::path& output) {
  return {"train",          "--output",          output.string(),
          "--epochs",       "1",                 "--batch-size",
          "8",              "--set",             "synthetic_pairs=32",
          "--set",          "hidden=16",         "--set",
          "ffn=32",         "--set",             "layers=1",
          "--set",          "maxlen=16"};
}

// --- augment ----------------------------------------------------------------

TEST(CliAugmentTest, WritesAugmentedPairsAndStats) {
  const fs::path dir = Scratch("augment");
  const fs::path in = Write(dir / "in.jsonl",
                            R"({"premise": "The girl ate a bagel.", "hypothesis": "A girl ate.", "label": "entailment"})"
                            "\n"
                            R"({"premise": "He runs.", "hypothesis": "A man runs.", "label": "entailment"})"
                            "\n"
                            R"({"premise": "My mother sings.", "hypothesis": "She sings.", "label": "entailment"})"
                            "\n");
  const fs::path out = dir / "out.jsonl";
  const Result r = Invoke({"augment", "--input", in.string(), "--output", out.string(),
                        "--gender-filter"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<std::string> lines = Lines(ReadAll(out));
  ASSERT_EQ(lines.size(), 3u);
  for (const std::string& line : lines) {
    const json j = json::parse(line);
    EXPECT_TRUE(j.contains("premise_aug"));
    EXPECT_TRUE(j.contains("hypothesis_aug"));
  }
  EXPECT_EQ(json::parse(lines[0])["premise_aug"], "The boy ate a bagel.");
  const json stats = json::parse(r.out);
  EXPECT_EQ(stats["read"], 3);
  EXPECT_EQ(stats["kept"], 3);
  EXPECT_EQ(stats["changed_premise"], 3);
  EXPECT_EQ(stats["changed_hypothesis"], 3);
}

TEST(CliAugmentTest, DataErrorsExitTwo) {
  const fs::path dir = Scratch("augment_bad");
  const Result empty = Invoke({"augment", "--input", Write(dir / "e.jsonl", "").string()});
  EXPECT_EQ(empty.code, kExitData);
  EXPECT_NE(empty.err.find("EmptyCorpus"), std::string::npos);

  const fs::path neutral = Write(
      dir / "n.jsonl",
      R"({"premise": "A dog runs.", "hypothesis": "An animal runs.", "label": "entailment"})");
  EXPECT_EQ(Invoke({"augment", "--input", neutral.string(), "--gender-filter"}).code, kExitData);
  EXPECT_EQ(Invoke({"augment", "--input", neutral.string()}).code, kExitOk);

  const fs::path broken = Write(dir / "b.jsonl",
                                R"({"premise": "He runs.", "hypothesis": "A man runs.", "label": "entailment"})"
                                "\n{oops\n");
  const Result bad = Invoke({"augment", "--input", broken.string()});
  EXPECT_EQ(bad.code, kExitData);
  EXPECT_NE(bad.err.find(":2:"), std::string::npos) << bad.err;
}

// --- train ------------------------------------------------------------------

TEST(CliTrainTest, FansOutOverSeedsDeterministically) {
  const fs::path dir = Scratch("train_seeds");
  std::vector<std::string> args = TinyTrainArgs(dir / "a");
  args.insert(args.end(), {"--seeds", "1,2,3"});
  const Result r = Invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (int seed : {1, 2, 3}) {
    EXPECT_TRUE(fs::exists(dir / "a" / ("seed-" + std::to_string(seed)) / "model.ckpt"));
  }
  const json run = json::parse(ReadAll(dir / "a" / "run.json"));
  EXPECT_EQ(run["runs"].size(), 3u);
  EXPECT_EQ(run["config"]["seeds"], json({1, 2, 3}));

  std::vector<std::string> again = TinyTrainArgs(dir / "b");
  again.insert(again.end(), {"--seeds", "1,2,3"});
  ASSERT_EQ(Invoke(again).code, kExitOk);
  for (int seed : {1, 2, 3}) {
    const std::string sub = "seed-" + std::to_string(seed);
    EXPECT_EQ(ReadAll(dir / "a" / sub / "trace.jsonl"), ReadAll(dir / "b" / sub / "trace.jsonl"));
  }
  EXPECT_NE(ReadAll(dir / "a" / "seed-1" / "trace.jsonl"),
            ReadAll(dir / "a" / "seed-2" / "trace.jsonl"));
}

TEST(CliTrainTest, SeedSweepExpandsFromFirstSeed) {
  const fs::path dir = Scratch("train_sweep");
  std::vector<std::string> args = TinyTrainArgs(dir);
  args.insert(args.end(), {"--seeds", "5", "--seed-sweep", "2"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "seed-5" / "model.ckpt"));
  EXPECT_TRUE(fs::exists(dir / "seed-6" / "model.ckpt"));
  const json report = json::parse(ReadAll(dir / "report.json"));
  EXPECT_EQ(report["metrics"]["final_loss"]["per_seed"].size(), 2u);
  EXPECT_EQ(report["config"]["seeds"], json({5, 6}));
}

TEST(CliTrainTest, AblationOmitsTermFromTrace) {
  const fs::path dir = Scratch("train_ablate");
  std::vector<std::string> args = TinyTrainArgs(dir);
  args.insert(args.end(), {"--ablate", "no-mlm"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  const std::vector<std::string> lines = Lines(ReadAll(dir / "seed-1" / "trace.jsonl"));
  ASSERT_FALSE(lines.empty());
  for (const std::string& line : lines) {
    const json j = json::parse(line);
    EXPECT_FALSE(j.contains("l_mlm"));
    EXPECT_TRUE(j.contains("l_cl"));
  }
}

TEST(CliTrainTest, ConfigFileWithFlagOverrides) {
  const fs::path dir = Scratch("train_config");
  const fs::path config = Write(dir / "cfg.json", R"({"alpha": 0.2, "epochs": 3, "seeds": [4]})");
  std::vector<std::string> args = TinyTrainArgs(dir / "out");
  args.insert(args.end(), {"--config", config.string(), "--alpha", "0.3"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  const json run = json::parse(ReadAll(dir / "out" / "run.json"));
  EXPECT_DOUBLE_EQ(run["config"]["alpha"].get<double>(), 0.3);
  EXPECT_EQ(run["config"]["epochs"], 1);  // --epochs in the base args wins.
  EXPECT_EQ(run["config"]["seeds"], json({4}));
  EXPECT_DOUBLE_EQ(run["config"]["lr"].get<double>(), 5e-5);
}

TEST(CliTrainTest, ConfigErrorsExitOneNamingTheKey) {
  const fs::path dir = Scratch("train_badcfg");
  const fs::path config = Write(dir / "cfg.json", R"({"alpah": 0.2})");
  const Result r = Invoke({"train", "--config", config.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("alpah"), std::string::npos) << r.err;
  EXPECT_EQ(Invoke({"train", "--set", "tau=0"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"train", "--set", "batch_size=1"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"train", "--ablate", "no-everything"}).code, kExitUsage);
}

TEST(CliTrainTest, DivergenceExitsThree) {
  const fs::path dir = Scratch("train_nan");
  // A temperature this small overflows the contrastive gradient.
  std::vector<std::string> args = TinyTrainArgs(dir);
  args.insert(args.end(), {"--tau", "1e-308"});
  const Result r = Invoke(args);
  EXPECT_EQ(r.code, kExitDiverged) << r.err;
  EXPECT_NE(r.err.find("DivergedLoss"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("step 1"), std::string::npos) << r.err;
}

TEST(CliTrainTest, NonFiniteInitialWeightsAreADataError) {
  const fs::path dir = Scratch("train_nan_init");
  const EncoderConfig enc = RunConfig::FromJson(
                                json{{"hidden", 16}, {"ffn", 32}, {"layers", 1}, {"maxlen", 16}})
                                .Encoder();
  EncoderModel model =
      EncoderModel::Initialize(enc, Vocabulary::Build(SyntheticVocabularyTexts()), 1);
  model.MutableParam("mlm.decoder.bias")[0] = NAN;
  SaveCheckpoint(model, "{}", (dir / "nan.ckpt").string());
  std::vector<std::string> args = TinyTrainArgs(dir / "out");
  args.insert(args.end(), {"--set", "init_checkpoint=" + (dir / "nan.ckpt").string()});
  const Result r = Invoke(args);
  EXPECT_EQ(r.code, kExitData) << r.err;
  EXPECT_NE(r.err.find("NonFinite"), std::string::npos) << r.err;
}

// --- eval -------------------------------------------------------------------

fs::path TinyCheckpoint(const fs::path& dir) {
  static const std::vector<std::string> kTexts = {
      "the nurse is she", "the pilot is he", "this is a man", "this is a woman",
      "the person ate lunch", "nobody ate lunch", "the child read a book"};
  EncoderConfig enc;
  enc.hidden = 16;
  enc.ffn = 32;
  enc.layers = 1;
  enc.maxlen = 16;
  const fs::path path = dir / "tiny.ckpt";
  SaveCheckpoint(EncoderModel::Initialize(enc, Vocabulary::Build(kTexts), 3),
                 R"({"alpha": 0.05})", path.string());
  return path;
}

TEST(CliEvalTest, ThreeSeedFixturesGiveMeanTwoStdOne) {
  const fs::path dir = Scratch("eval_wb");
  std::vector<std::string> args = {"eval", "--metric", "winobias", "--inputs"};
  for (int k = 1; k <= 3; ++k) {
    args.push_back(Write(dir / ("wb" + std::to_string(k) + ".json"),
                         R"({"type1": {"pro": )" + std::to_string(50 + k) +
                             R"(, "anti": 50}, "type2": {"pro": 60, "anti": 60}})")
                       .string());
  }
  const Result r = Invoke(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json report = json::parse(r.out);
  const json& gap = report["metrics"]["type1.gap"];
  EXPECT_DOUBLE_EQ(gap["mean"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(gap["std"].get<double>(), 1.0);
  EXPECT_EQ(gap["n1"], false);
  EXPECT_DOUBLE_EQ(report["headline"]["type1.gap"].get<double>(), 2.0);
  EXPECT_EQ(report["config"]["metric"], "winobias");
}

TEST(CliEvalTest, WinobiasAggregationChoice) {
  const fs::path dir = Scratch("eval_wb_agg");
  const std::string a = Write(dir / "a.json", R"({"type1": {"pro": 80, "anti": 60}})").string();
  const std::string b = Write(dir / "b.json", R"({"type1": {"pro": 60, "anti": 70}})").string();
  const json gom = json::parse(Invoke({"eval", "--metric", "winobias", "--inputs", a, b}).out);
  EXPECT_DOUBLE_EQ(gom["headline"]["type1.gap"].get<double>(), 5.0);
  const json mog = json::parse(
      Invoke({"eval", "--metric", "winobias", "--mean-of-gaps", "--inputs", a, b}).out);
  EXPECT_DOUBLE_EQ(mog["headline"]["type1.gap"].get<double>(), 15.0);
}

TEST(CliEvalTest, SingleCheckpointFlagsSingleValue) {
  const fs::path dir = Scratch("eval_single");
  const fs::path ckpt = TinyCheckpoint(dir);
  const fs::path items = Write(dir / "ss.jsonl",
                               R"({"context": "the nurse is BLANK", "stereotype": "she", "anti_stereotype": "he", "unrelated": "lunch"})"
                               "\n"
                               R"({"context": "the BLANK is he", "stereotype": "pilot", "anti_stereotype": "nurse", "unrelated": "zebra"})");
  const Result r =
      Invoke({"eval", "--metric", "stereoset", "--checkpoint", ckpt.string(), "--items", items.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["metrics"]["icat"]["std"], 0.0);
  EXPECT_EQ(report["metrics"]["icat"]["n1"], true);
  EXPECT_EQ(report["metrics"]["scored_items"]["mean"], 1.0);
  ASSERT_EQ(report["warnings"].size(), 1u);
  EXPECT_EQ(report["config"]["checkpoint_run_configs"][0]["alpha"], 0.05);
}

TEST(CliEvalTest, ModelMetricsProduceReports) {
  const fs::path dir = Scratch("eval_models");
  const std::string ckpt = TinyCheckpoint(dir).string();
  const std::string crows = Write(dir / "crows.jsonl",
                                  R"({"sent_more": "the nurse is she", "sent_less": "the nurse is he"})")
                                .string();
  const Result c = Invoke({"eval", "--metric", "crows", "--checkpoint", ckpt, ckpt, "--items", crows});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(json::parse(c.out)["metrics"]["ss"]["per_seed"].size(), 2u);

  const std::string seat = Write(dir / "seat.json",
                                 R"({"targets_x": ["nurse"], "targets_y": ["pilot"],
                                     "attributes_a": ["she", "woman"], "attributes_b": ["he", "man"],
                                     "templates": ["this is a BLANK"]})")
                               .string();
  const Result s = Invoke({"eval", "--metric", "seat", "--checkpoint", ckpt, "--items", seat});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_TRUE(json::parse(s.out)["metrics"]["statistic"]["mean"].is_number());

  const std::string train = Write(dir / "train.jsonl",
                                  R"({"text": "the nurse is she", "label": "f", "gender": "F"})"
                                  "\n"
                                  R"({"text": "the pilot is he", "label": "m", "gender": "M"})"
                                  "\n"
                                  R"({"text": "this is a woman", "label": "f", "gender": "F"})"
                                  "\n"
                                  R"({"text": "this is a man", "label": "m", "gender": "M"})")
                                .string();
  const Result p = Invoke({"eval", "--metric", "probe", "--checkpoint", ckpt, "--train", train,
                        "--items", train});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  const json probe = json::parse(p.out);
  EXPECT_TRUE(probe["metrics"].contains("accuracy"));
  EXPECT_TRUE(probe["metrics"].contains("rms"));

  const std::string nli_train =
      Write(dir / "nli.jsonl",
            R"({"premise": "the person ate lunch", "hypothesis": "nobody ate lunch", "label": "contradiction"})"
            "\n"
            R"({"premise": "the child read a book", "hypothesis": "the child read a book", "label": "entailment"})"
            "\n"
            R"({"premise": "the person ate lunch", "hypothesis": "the child read a book", "label": "neutral"})")
          .string();
  const std::string bias_pairs =
      Write(dir / "bias.jsonl", R"({"premise": "this is a man", "hypothesis": "the nurse is she"})")
          .string();
  const Result b = Invoke({"eval", "--metric", "biasnli", "--checkpoint", ckpt, "--train", nli_train,
                        "--items", bias_pairs});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  const json nli = json::parse(b.out);
  EXPECT_TRUE(nli["metrics"].contains("t:0.5"));
  EXPECT_TRUE(nli["metrics"].contains("t:0.7"));
  EXPECT_EQ(nli["config"]["extraction"], "default");
}

TEST(CliEvalTest, FileMetricsProduceReports) {
  const fs::path dir = Scratch("eval_files");
  const std::string tpr = Write(dir / "cls.csv",
                                "gender,true,pred,nurse,pilot\n"
                                "M,nurse,nurse\nF,nurse,pilot\nM,pilot,pilot\nF,pilot,pilot\n")
                              .string();
  const Result t = Invoke({"eval", "--metric", "tpr", "--inputs", tpr});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  const json tj = json::parse(t.out);
  EXPECT_DOUBLE_EQ(tj["metrics"]["gap.nurse"]["mean"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(tj["metrics"]["rms"]["mean"].get<double>(), std::sqrt(0.5));
  ASSERT_EQ(tj["warnings"].size(), 1u);  // Two classes instead of 28.

  const std::string nli = Write(dir / "d.csv", "0,1,0\n0.6,0.3,0.1\n").string();
  const Result n = Invoke({"eval", "--metric", "biasnli", "--inputs", nli, "--taus", "0.2,0.5"});
  ASSERT_EQ(n.code, kExitOk) << n.err;
  const json nj = json::parse(n.out);
  EXPECT_DOUBLE_EQ(nj["metrics"]["fn"]["mean"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(nj["metrics"]["t:0.2"]["mean"].get<double>(), 1.0);
}

TEST(CliEvalTest, TprHeadlineAggregation) {
  const fs::path dir = Scratch("eval_tpr_agg");
  const std::string a = Write(dir / "a.csv",
                              "gender,true,pred,nurse,pilot\n"
                              "M,nurse,nurse\nM,pilot,pilot\nF,nurse,nurse\nF,pilot,nurse\n")
                            .string();
  const std::string b = Write(dir / "b.csv",
                              "gender,true,pred,nurse,pilot\n"
                              "F,nurse,nurse\nF,pilot,pilot\nM,nurse,nurse\nM,pilot,nurse\n")
                            .string();
  const Result means = Invoke({"eval", "--metric", "tpr", "--inputs", a, b});
  ASSERT_EQ(means.code, kExitOk) << means.err;
  EXPECT_DOUBLE_EQ(json::parse(means.out)["headline"]["gap"].get<double>(), 0.0);
  const Result gaps = Invoke({"eval", "--metric", "tpr", "--inputs", a, b, "--mean-of-gaps"});
  ASSERT_EQ(gaps.code, kExitOk) << gaps.err;
  const json gj = json::parse(gaps.out);
  EXPECT_DOUBLE_EQ(gj["headline"]["gap"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(gj["metrics"]["gap"]["mean"].get<double>(), 0.5);
  EXPECT_EQ(gj["config"]["gap_aggregation"], "mean-of-gaps");
}

TEST(CliEvalTest, ErrorsMapToExitCodes) {
  const fs::path dir = Scratch("eval_errors");
  const Result unknown = Invoke({"eval", "--metric", "bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(Invoke({"eval", "--metric", "stereoset"}).code, kExitUsage);

  const std::string ckpt = TinyCheckpoint(dir).string();
  const std::string bad = Write(dir / "bad.jsonl", R"({"context": "no blank", "stereotype": "a",
      "anti_stereotype": "b", "unrelated": "c"})").string();
  const Result schema = Invoke({"eval", "--metric", "stereoset", "--checkpoint", ckpt, "--items", bad});
  EXPECT_EQ(schema.code, kExitEvalInput);
  EXPECT_NE(schema.err.find("MalformedItemFile"), std::string::npos);
  EXPECT_EQ(Invoke({"eval", "--metric", "tpr", "--inputs", (dir / "missing.csv").string()}).code,
            kExitEvalInput);
  EXPECT_EQ(Invoke({"eval", "--metric", "winobias", "--inputs",
                 Write(dir / "wb.json", R"({"type1": {"pro": 120, "anti": 1}})").string()})
                .code,
            kExitEvalInput);
  EXPECT_EQ(Invoke({"eval", "--metric", "crows", "--checkpoint",
                 Write(dir / "junk.ckpt", "junk").string(), "--items", bad})
                .code,
            kExitEvalInput);
}

// --- export -----------------------------------------------------------------

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const std::string& line : Lines(text)) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(CliExportTest, OneConceptOneTemplate) {
  const fs::path dir = Scratch("export_one");
  const std::string ckpt = TinyCheckpoint(dir).string();
  const Result r = Invoke({"export", "--checkpoint", ckpt, "--concept", "nurse", "--template",
                        "this is a BLANK"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 2u);  // Header and one concept.
  ASSERT_EQ(rows[1].size(), 17u);
  EXPECT_EQ(rows[1][0], "nurse");

  const EncoderModel model = LoadCheckpoint(ckpt).model;
  const Tensor expected = EmbedConcepts(model, {"nurse"}, {"this is a BLANK"});
  for (size_t k = 0; k < 16; ++k) {
    EXPECT_NEAR(std::stod(rows[1][k + 1]), expected[k], 1e-12);
  }
}

TEST(CliExportTest, DuplicateTemplatesMatchSingleTemplate) {
  const fs::path dir = Scratch("export_dup");
  const std::string ckpt = TinyCheckpoint(dir).string();
  const std::string concepts = Write(dir / "c.txt", "nurse\npilot\n").string();
  const std::string once = Write(dir / "t1.txt", "this is a BLANK\n").string();
  const std::string twice = Write(dir / "t2.txt", "this is a BLANK\nthis is a BLANK\n").string();
  const auto a = ParseCsv(Invoke({"export", "--checkpoint", ckpt, "--concepts", concepts,
                               "--templates", once}).out);
  const fs::path out = dir / "out.csv";
  ASSERT_EQ(Invoke({"export", "--checkpoint", ckpt, "--concepts", concepts, "--templates", twice,
                 "--output", out.string()})
                .code,
            kExitOk);
  const auto b = ParseCsv(ReadAll(out));
  ASSERT_EQ(a.size(), 3u);
  ASSERT_EQ(b.size(), 3u);
  for (size_t r = 1; r < 3; ++r) {
    for (size_t k = 1; k < a[r].size(); ++k) {
      EXPECT_NEAR(std::stod(a[r][k]), std::stod(b[r][k]), 1e-12);
    }
  }
}

TEST(CliExportTest, EmptyTemplateListExitsFour) {
  const fs::path dir = Scratch("export_empty");
  const std::string ckpt = TinyCheckpoint(dir).string();
  const std::string none = Write(dir / "t.txt", "\n").string();
  EXPECT_EQ(Invoke({"export", "--checkpoint", ckpt, "--concept", "nurse", "--templates", none}).code,
            kExitEvalInput);
  EXPECT_EQ(Invoke({"export", "--checkpoint", ckpt, "--concept", "nurse"}).code, kExitEvalInput);
  EXPECT_EQ(Invoke({"export", "--checkpoint", ckpt, "--concept", "nurse", "--template", "no slot"})
                .code,
            kExitEvalInput);
}

}  // namespace
}  // namespace mabel
