// Copyright 2026 The mvgini Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MVGINI_CLI__CLI_HPP_
#define MVGINI_CLI__CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace mvgini::cli
{

/// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kNumerical = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace mvgini::cli

#endif  // MVGINI_CLI__CLI_HPP_
