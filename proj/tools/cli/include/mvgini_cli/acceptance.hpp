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

#ifndef MVGINI_CLI__ACCEPTANCE_HPP_
#define MVGINI_CLI__ACCEPTANCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mvgini::cli
{

struct CheckResult
{
  int id = 0;
  std::string title;
  bool pass = false;
  /// Deterministic for a fixed seed: numbers only, no timings.
  std::string detail;
};

struct AcceptanceOptions
{
  std::uint64_t seed = 7;
  /// Multiplies every pass tolerance. Values below 1 tighten the suite; 0
  /// makes any non-zero error fail. Debug aid for checking sensitivity.
  double tolerance_factor = 1.0;
  /// Run only these checks (1-based ids); empty means all.
  std::vector<int> only;
};

inline constexpr int kCheckCount = 11;

/// Runs the acceptance checks in id order, calling `on_result` after each.
std::vector<CheckResult> run_acceptance(
  const AcceptanceOptions & options, const std::function<void(const CheckResult &)> & on_result = {});

/// "PASS  [id] title: detail" or "FAIL  ...".
std::string format_result(const CheckResult & r);

}  // namespace mvgini::cli

#endif  // MVGINI_CLI__ACCEPTANCE_HPP_
