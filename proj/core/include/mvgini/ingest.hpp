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

#ifndef MVGINI__INGEST_HPP_
#define MVGINI__INGEST_HPP_

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "mvgini/types.hpp"

namespace mvgini
{

/// Header plus data rows of a comma-separated file. Quoted fields may contain
/// commas, doubled quotes and line breaks. Blank lines are skipped.
struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::istream & in);
CsvTable read_csv(const std::filesystem::path & path);

/// One entity (a company, in the market-concentration use case).
struct CompanyRecord
{
  std::string name;
  std::string group;
  Vector metrics;
};

struct Dataset
{
  std::vector<std::string> metric_names;
  std::vector<CompanyRecord> records;
  /// Data rows dropped by the cleaning rule.
  Index dropped = 0;
  /// records.size() + dropped.
  Index total_rows = 0;
};

/// Which metric values survive cleaning. Missing, non-numeric and non-finite
/// cells are always dropped.
enum class CleaningRule {
  /// Drop rows with any metric <= 0.
  positive,
  /// Drop rows with any metric < 0; zeros are kept.
  non_negative,
};

/// Loads the named metric columns. Rows failing `rule` are dropped and counted.
///
/// `group_column` and `name_column` may be empty, in which case every record
/// gets an empty group / name. Throws DataError for an unreadable file, a
/// missing column (named in the message) or zero surviving rows.
Dataset load_csv(
  const std::filesystem::path & path, const std::vector<std::string> & metric_columns,
  const std::string & group_column = {}, const std::string & name_column = {},
  CleaningRule rule = CleaningRule::positive);

/// Splits "a,b , c" into trimmed, non-empty names.
std::vector<std::string> split_list(const std::string & list);

}  // namespace mvgini

#endif  // MVGINI__INGEST_HPP_
