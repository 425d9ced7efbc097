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

#ifndef MABEL_CLI_APP_H_
#define MABEL_CLI_APP_H_

#include <ostream>
#include <string>
#include <vector>

namespace mabel {

// Process exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitDiverged = 3,
  kExitEvalInput = 4,
};

// Runs one subcommand (augment, train, eval, export). `args` excludes the
// program name. Never throws; failures are reported on `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mabel

#endif  // MABEL_CLI_APP_H_
