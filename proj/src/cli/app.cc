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

#include <filesystem>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "mabel/cli/run_config.h"
#include "mabel/core/error.h"

namespace mabel {
namespace {

enum class Command { kAugment, kTrain, kEval, kExport };

bool IsConfigError(ErrorCode code) {
  return code == ErrorCode::kInvalidConfig || code == ErrorCode::kNonPositiveTau ||
         code == ErrorCode::kBatchTooSmall;
}

int ExitFor(const Error& e, Command command) {
  if (IsConfigError(e.code())) return kExitUsage;
  switch (command) {
    case Command::kAugment:
      return kExitData;
    case Command::kTrain:
      return e.code() == ErrorCode::kDivergedLoss ? kExitDiverged : kExitData;
    case Command::kEval:
    case Command::kExport:
      return kExitEvalInput;
  }
  return kExitData;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gender-debiasing toolkit: augmentation, training, evaluation, export.",
               "mabel"};
  app.require_subcommand(1);

  cli::AugmentOptions augment;
  CLI::App* augment_cmd =
      app.add_subcommand("augment", "Counterfactually augment an NLI JSONL file");
  augment_cmd->add_option("--input", augment.input, "NLI JSONL input")->required();
  augment_cmd->add_option("--output", augment.output,
                          "Augmented JSONL output (stdout when omitted)");
  augment_cmd->add_option("--lexicon", augment.lexicon, "Lexicon TSV (builtin when omitted)");
  augment_cmd->add_option("--labels", augment.labels, "Labels to keep")
      ->delimiter(',')
      ->capture_default_str();
  augment_cmd->add_flag("--gender-filter", augment.gender_filter,
                        "Drop pairs that augmentation leaves unchanged");

  cli::TrainOptions train;
  std::vector<std::string> sets, ablate, seeds;
  std::string output_dir, data, align;
  double alpha = 0, lambda = 0, tau = 0, lr = 0;
  size_t batch_size = 0, epochs = 0;
  CLI::App* train_cmd = app.add_subcommand("train", "Train one run per configured seed");
  train_cmd->add_option("--config", train.config, "RunConfig JSON file");
  CLI::Option* alpha_opt = train_cmd->add_option("--alpha", alpha, "Alignment weight");
  CLI::Option* lambda_opt = train_cmd->add_option("--lambda", lambda, "MLM weight");
  CLI::Option* tau_opt = train_cmd->add_option("--tau", tau, "Temperature");
  CLI::Option* align_opt = train_cmd->add_option("--align", align, "al1, al2 or al3");
  CLI::Option* lr_opt = train_cmd->add_option("--lr", lr, "Learning rate");
  CLI::Option* bs_opt = train_cmd->add_option("--batch-size", batch_size, "Pairs per batch");
  CLI::Option* epochs_opt = train_cmd->add_option("--epochs", epochs, "Epochs");
  train_cmd->add_option("--seeds", seeds, "Seeds, comma separated")->delimiter(',');
  train_cmd->add_option("--seed-sweep", train.seed_sweep,
                        "Run N consecutive seeds starting at the first configured seed");
  train_cmd->add_option("--ablate", ablate, "no-cl, no-al or no-mlm (repeatable)");
  train_cmd->add_option("--output", output_dir, "Output directory");
  train_cmd->add_option("--data", data, "Training NLI JSONL (synthetic when omitted)");
  train_cmd->add_option("--set", sets, "Override any config key: key=value (repeatable)");

  cli::EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Compute a bias metric report");
  eval_cmd->add_option("--metric", eval.metric, "Metric name")
      ->required()
      ->check(CLI::IsMember(
          {"stereoset", "crows", "seat", "tpr", "biasnli", "winobias", "probe"}));
  eval_cmd->add_option("--checkpoint", eval.checkpoints, "Checkpoint per seed (repeatable)");
  eval_cmd->add_option("--inputs", eval.inputs, "Precomputed input file per seed");
  eval_cmd->add_option("--items", eval.items, "Item or test file");
  eval_cmd->add_option("--train", eval.train, "Labeled JSONL for probe training");
  eval_cmd->add_option("--extraction", eval.extraction, "pooled or cls")
      ->check(CLI::IsMember({"pooled", "cls"}));
  eval_cmd->add_option("--taus", eval.taus, "Bias-NLI thresholds")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_flag("--mean-of-gaps", eval.mean_of_gaps,
                     "WinoBias and TPR headlines as the mean of per-seed gaps");
  eval_cmd->add_option("--output", eval.output, "Report path (stdout when omitted)");

  cli::ExportOptions exp;
  CLI::App* export_cmd =
      app.add_subcommand("export", "Write template-averaged concept vectors as CSV");
  export_cmd->add_option("--checkpoint", exp.checkpoint, "Checkpoint")->required();
  export_cmd->add_option("--concept", exp.concepts, "Concept word (repeatable)");
  export_cmd->add_option("--concepts", exp.concepts_file, "File with one concept per line");
  export_cmd->add_option("--template", exp.templates, "Template with BLANK (repeatable)");
  export_cmd->add_option("--templates", exp.templates_file, "File with one template per line");
  export_cmd->add_option("--extraction", exp.extraction, "pooled or cls")
      ->check(CLI::IsMember({"pooled", "cls"}))
      ->capture_default_str();
  export_cmd->add_option("--output", exp.output, "CSV path (stdout when omitted)");

  std::vector<std::string> argv_storage = {"mabel"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    CLI::App* shown = &app;
    for (CLI::App* sub : {augment_cmd, train_cmd, eval_cmd, export_cmd}) {
      if (sub->parsed()) shown = sub;
    }
    out << shown->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* shown = &app;
    for (CLI::App* sub : {augment_cmd, train_cmd, eval_cmd, export_cmd}) {
      if (sub->parsed()) shown = sub;
    }
    err << "error: " << e.what() << "\n\n" << shown->help();
    return kExitUsage;
  }

  Command command = Command::kAugment;
  try {
    if (augment_cmd->parsed()) {
      return cli::Augment(augment, out, err);
    }
    if (train_cmd->parsed()) {
      command = Command::kTrain;
      nlohmann::json& o = train.overrides;
      if (*alpha_opt) o["alpha"] = alpha;
      if (*lambda_opt) o["lambda"] = lambda;
      if (*tau_opt) o["tau"] = tau;
      if (*align_opt) o["align_variant"] = align;
      if (*lr_opt) o["lr"] = lr;
      if (*bs_opt) o["batch_size"] = batch_size;
      if (*epochs_opt) o["epochs"] = epochs;
      if (!seeds.empty()) {
        nlohmann::json list = nlohmann::json::array();
        for (const std::string& s : seeds) list.push_back(ParseOverride("s=" + s).second);
        o["seeds"] = list;
      }
      if (!ablate.empty()) o["ablate"] = ablate;
      if (!output_dir.empty()) o["output_dir"] = output_dir;
      if (!data.empty()) o["train_data"] = data;
      for (const std::string& s : sets) {
        auto [key, value] = ParseOverride(s);
        o[key] = value;
      }
      return cli::TrainRuns(train, out, err);
    }
    if (eval_cmd->parsed()) {
      command = Command::kEval;
      return cli::Evaluate(eval, out, err);
    }
    command = Command::kExport;
    return cli::Export(exp, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return ExitFor(e, command);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "Io: " << e.what() << "\n";
    return command == Command::kEval || command == Command::kExport ? kExitEvalInput
                                                                    : kExitData;
  }
}

}  // namespace mabel
