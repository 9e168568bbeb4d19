// Copyright 2026 The Battlelog Authors
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


#ifndef BATTLELOG_TOOLS_CLI_H_
#define BATTLELOG_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace battlelog::cli {

// Process exit codes, one per error family.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 2,     // bad flags or arguments
  kExitIo = 3,        // unreadable input or unwritable output
  kExitData = 4,      // malformed logs, tables, teams or datasets
  kExitInternal = 5,  // anything unexpected
};

// Runs one invocation. args[0] is the program name. Normal output goes to
// `out`; progress and diagnostics go to `err` as one JSON object per line.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace battlelog::cli

#endif  // BATTLELOG_TOOLS_CLI_H_
