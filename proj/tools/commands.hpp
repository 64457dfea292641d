// Copyright 2026 The bosonsim Authors
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

#ifndef BOSONSIM_TOOLS_COMMANDS_HPP
#define BOSONSIM_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bosonsim::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kCapacityError = 3,
  kDegeneratePostselection = 4,
  kNonConvergence = 5,
};

/// Runs one `bosonsim` invocation. `args` excludes the program name.
/// Results go to `out` unless a command's --output names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bosonsim::cli

#endif  // BOSONSIM_TOOLS_COMMANDS_HPP
