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

#ifndef MVGINI__REPORT_HPP_
#define MVGINI__REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvgini/ingest.hpp"
#include "mvgini/sample.hpp"
#include "mvgini/types.hpp"

namespace mvgini
{

inline constexpr std::string_view kPooledGroup = "All";

/// Uniform-weight samples per group plus the pooled sample.
struct Panels
{
  std::vector<std::string> metric_names;
  /// Groups that met the size threshold, ordered by name.
  std::map<std::string, WeightedSample> groups;
  /// Every record, including those of excluded groups.
  WeightedSample pooled;
  /// (group, size) of groups below the threshold.
  std::vector<std::pair<std::string, Index>> excluded;
  Index dropped_rows = 0;
};

/// Throws std::invalid_argument if min_group_size < 2. Records without a group
/// only enter the pooled sample.
Panels panelize(const Dataset & data, Index min_group_size = 2);

struct ReportRow
{
  std::string group;
  Index n = 0;
  /// One-dimensional Gini of each raw metric; NaN where undefined.
  Vector metric_ginis;
  /// Multivariate index; empty when it could not be computed (see note).
  std::optional<double> g;
  /// Decomposition weights (p = 1 only).
  Vector weights;
  bool negativity_warning = false;
  double worst_negative = 0.0;
  std::string note;
};

struct MetricSummary
{
  std::string metric;
  double mean = 0.0;
  /// Population standard deviation.
  double std_dev = 0.0;
};

struct InequalityReport
{
  double p = 1.0;
  std::vector<std::string> metric_names;
  /// Group rows ordered by name, then the pooled row.
  std::vector<ReportRow> rows;
  std::vector<MetricSummary> summary;
  Matrix correlation;
  std::vector<std::pair<std::string, Index>> excluded;
  Index dropped_rows = 0;
};

/// Pooled summary statistics and correlation only; rows stay empty.
InequalityReport summarize(const Panels & panels);

/// Per-group inequality table plus pooled summary statistics and correlation.
/// A group whose index cannot be computed (singular covariance, zero whitened
/// mean) gets a note instead of failing the report. `threads` parallelizes
/// across groups and never changes the output.
InequalityReport report(const Panels & panels, double p = 1.0, unsigned threads = 0);

enum class ReportFormat { table, csv, json };
std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Tables to text. Column order: group, n, per-metric Ginis in input order,
/// G, weights, negativity flag, worst negative entry, note. Table mode prints
/// 3 decimals; csv and json print full round-trip precision.
std::string serialize_report(const InequalityReport & r, ReportFormat format);

/// Summary statistics (mean, standard deviation per metric) alone.
std::string serialize_summary(const InequalityReport & r, ReportFormat format);
/// Correlation matrix alone.
std::string serialize_correlation(const InequalityReport & r, ReportFormat format);

}  // namespace mvgini

#endif  // MVGINI__REPORT_HPP_
