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

#include "mvgini/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

namespace mvgini
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view cell)
{
  cell = trim(cell);
  if (cell.empty()) {
    return std::nullopt;
  }
  if (cell.front() == '+') {
    cell.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

Index find_column(const CsvTable & table, const std::string & name)
{
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw DataError("missing column '" + name + "'");
  }
  return static_cast<Index>(it - table.header.begin());
}

}  // namespace

CsvTable parse_csv(std::istream & in)
{
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool header_done = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.size() == 1 && trim(row[0]).empty();
    if (!blank) {
      if (!header_done) {
        for (auto & h : row) {
          h = std::string(trim(h));
        }
        table.header = std::move(row);
        header_done = true;
      } else {
        table.rows.push_back(std::move(row));
      }
    }
    row.clear();
  };

  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::string_view s = text;
  if (s.starts_with("\xEF\xBB\xBF")) {
    s.remove_prefix(3);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field_started || trim(field).empty()) {
          field.clear();
          in_quotes = true;
          field_started = true;
        } else {
          field.push_back(ch);
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < s.size() && s[i + 1] == '\n') {
          ++i;
        }
        end_row();
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(ch);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw DataError("unterminated quoted field");
  }
  if (field_started || !field.empty() || !row.empty()) {
    end_row();
  }
  if (!header_done) {
    throw DataError("file has no header row");
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read input file '" + path.string() + "'");
  }
  return parse_csv(in);
}

Dataset load_csv(
  const std::filesystem::path & path, const std::vector<std::string> & metric_columns,
  const std::string & group_column, const std::string & name_column, CleaningRule rule)
{
  if (metric_columns.empty()) {
    throw std::invalid_argument("at least one metric column is required");
  }
  const CsvTable table = read_csv(path);

  std::vector<Index> metric_idx;
  metric_idx.reserve(metric_columns.size());
  for (const auto & name : metric_columns) {
    metric_idx.push_back(find_column(table, name));
  }
  // -1 = column not requested.
  const Index group_idx = group_column.empty() ? -1 : find_column(table, group_column);
  const Index name_idx = name_column.empty() ? -1 : find_column(table, name_column);

  auto cell = [](const std::vector<std::string> & row, Index i) -> std::string_view {
    const auto k = static_cast<std::size_t>(i);
    return k < row.size() ? std::string_view(row[k]) : std::string_view{};
  };

  Dataset out;
  out.metric_names = metric_columns;
  const auto d = static_cast<Index>(metric_columns.size());
  for (const auto & row : table.rows) {
    ++out.total_rows;
    CompanyRecord rec;
    rec.metrics.resize(d);
    bool ok = true;
    for (Index j = 0; j < d && ok; ++j) {
      const auto value = parse_number(cell(row, metric_idx[static_cast<std::size_t>(j)]));
      ok = value && (rule == CleaningRule::positive ? *value > 0.0 : *value >= 0.0);
      if (ok) {
        rec.metrics[j] = *value;
      }
    }
    if (!ok) {
      ++out.dropped;
      continue;
    }
    if (group_idx >= 0) {
      rec.group = std::string(trim(cell(row, group_idx)));
    }
    if (name_idx >= 0) {
      rec.name = std::string(trim(cell(row, name_idx)));
    }
    out.records.push_back(std::move(rec));
  }
  if (out.records.empty()) {
    throw DataError(
      "no usable rows in '" + path.string() + "' (" + std::to_string(out.dropped) + " dropped)");
  }
  return out;
}

std::vector<std::string> split_list(const std::string & list)
{
  std::vector<std::string> out;
  std::string_view rest = list;
  while (true) {
    const auto pos = rest.find(',');
    const auto item = trim(rest.substr(0, pos));
    if (!item.empty()) {
      out.emplace_back(item);
    }
    if (pos == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace mvgini
