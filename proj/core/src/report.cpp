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

#include "mvgini/report.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mvgini/gini.hpp"
#include "mvgini/parallel.hpp"

namespace mvgini
{

namespace
{

WeightedSample to_sample(const std::vector<const CompanyRecord *> & members, Index d)
{
  Matrix points(static_cast<Index>(members.size()), d);
  for (std::size_t a = 0; a < members.size(); ++a) {
    points.row(static_cast<Index>(a)) = members[a]->metrics.transpose();
  }
  return WeightedSample(std::move(points));
}

ReportRow compute_row(
  const std::string & group, const WeightedSample & s, double p, const std::vector<std::string> & names)
{
  ReportRow row;
  row.group = group;
  row.n = s.size();
  row.metric_ginis = Vector::Constant(s.dim(), std::numeric_limits<double>::quiet_NaN());
  for (Index j = 0; j < s.dim(); ++j) {
    try {
      row.metric_ginis[j] = gini_1d(s.column(j), s.weights());
    } catch (const NumericalError &) {
    }
  }
  try {
    GiniOptions opts;
    opts.threads = 1;
    const GiniResult g = p == 1.0 ? gini_1_decomposed(s, opts) : gini_p(s, p, ExactEstimator{}, opts);
    row.g = g.value;
    row.weights = g.weights;
    row.negativity_warning = g.negativity.any;
    row.worst_negative = g.negativity.worst;
  } catch (const Error & e) {
    const auto flat = moments(s).degenerate_component;
    row.note = flat ? fmt::format("metric '{}' has zero variance in this group",
                                  names[static_cast<std::size_t>(*flat)])
                    : std::string(e.what());
  }
  return row;
}

using Json = nlohmann::ordered_json;

Json number_or_null(double v)
{
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json vector_json(const Vector & v)
{
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    arr.push_back(number_or_null(v[i]));
  }
  return arr;
}

std::string full(double v)
{
  return std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string{};
}

std::string fixed3(double v)
{
  return std::isfinite(v) ? fmt::format("{:.3f}", v) : std::string("-");
}

std::string csv_quote(const std::string & s)
{
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (const char c : s) {
    out += c;
    if (c == '"') {
      out += '"';
    }
  }
  return out + "\"";
}

std::string g_label(double p)
{
  if (std::isinf(p)) {
    return "G_inf";
  }
  return fmt::format("G_{:g}", p);
}

Json summary_json(const InequalityReport & r)
{
  Json arr = Json::array();
  for (const auto & s : r.summary) {
    arr.push_back({{"metric", s.metric}, {"mean", s.mean}, {"std_dev", s.std_dev}});
  }
  return arr;
}

Json correlation_json(const InequalityReport & r)
{
  Json arr = Json::array();
  for (Index i = 0; i < r.correlation.rows(); ++i) {
    arr.push_back(vector_json(r.correlation.row(i).transpose()));
  }
  return arr;
}

std::string summary_table(const InequalityReport & r)
{
  std::string out = fmt::format("{:<16} {:>12} {:>12}\n", "metric", "mean", "std_dev");
  for (const auto & s : r.summary) {
    out += fmt::format("{:<16} {:>12.3e} {:>12.3e}\n", s.metric, s.mean, s.std_dev);
  }
  return out;
}

std::string correlation_table(const InequalityReport & r)
{
  std::string out = fmt::format("{:<16}", "");
  for (const auto & m : r.metric_names) {
    out += fmt::format(" {:>12}", m);
  }
  out += '\n';
  for (Index i = 0; i < r.correlation.rows(); ++i) {
    out += fmt::format("{:<16}", r.metric_names[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < r.correlation.cols(); ++j) {
      out += fmt::format(" {:>12.3f}", r.correlation(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

Panels panelize(const Dataset & data, Index min_group_size)
{
  if (min_group_size < 2) {
    throw std::invalid_argument("min_group_size must be at least 2");
  }
  if (data.records.empty()) {
    throw DataError("dataset has no records");
  }
  const auto d = static_cast<Index>(data.metric_names.size());
  std::map<std::string, std::vector<const CompanyRecord *>> members;
  std::vector<const CompanyRecord *> all;
  all.reserve(data.records.size());
  for (const auto & rec : data.records) {
    all.push_back(&rec);
    if (!rec.group.empty()) {
      members[rec.group].push_back(&rec);
    }
  }

  Panels out{data.metric_names, {}, to_sample(all, d), {}, data.dropped};
  for (const auto & [group, recs] : members) {
    const auto size = static_cast<Index>(recs.size());
    if (size < min_group_size) {
      out.excluded.emplace_back(group, size);
    } else {
      out.groups.emplace(group, to_sample(recs, d));
    }
  }
  return out;
}

InequalityReport summarize(const Panels & panels)
{
  InequalityReport out;
  out.metric_names = panels.metric_names;
  out.excluded = panels.excluded;
  out.dropped_rows = panels.dropped_rows;
  const MomentSummary m = moments(panels.pooled);
  for (std::size_t j = 0; j < panels.metric_names.size(); ++j) {
    const auto i = static_cast<Index>(j);
    out.summary.push_back({panels.metric_names[j], m.mean[i], std::sqrt(m.variances[i])});
  }
  out.correlation = m.correlation;
  return out;
}

InequalityReport report(const Panels & panels, double p, unsigned threads)
{
  if (!(p >= 1.0)) {
    throw std::invalid_argument("p must be >= 1");
  }
  InequalityReport out = summarize(panels);
  out.p = p;

  std::vector<std::pair<std::string, const WeightedSample *>> jobs;
  for (const auto & [group, sample] : panels.groups) {
    jobs.emplace_back(group, &sample);
  }
  jobs.emplace_back(std::string(kPooledGroup), &panels.pooled);

  out.rows.resize(jobs.size());
  for_each_chunk(jobs.size(), threads, [&](std::size_t k) {
    out.rows[k] = compute_row(jobs[k].first, *jobs[k].second, p, panels.metric_names);
  });
  return out;
}

std::optional<ReportFormat> parse_report_format(std::string_view name)
{
  if (name == "table") {
    return ReportFormat::table;
  }
  if (name == "csv") {
    return ReportFormat::csv;
  }
  if (name == "json") {
    return ReportFormat::json;
  }
  return std::nullopt;
}

std::string serialize_report(const InequalityReport & r, ReportFormat format)
{
  const std::size_t d = r.metric_names.size();
  switch (format) {
    case ReportFormat::table: {
      std::string out = "Summary statistics\n" + summary_table(r) + "\nCorrelation matrix\n" +
                        correlation_table(r) + "\nInequality\n";
      out += fmt::format("{:<20} {:>7}", "group", "n");
      for (const auto & m : r.metric_names) {
        out += fmt::format(" {:>12}", "gini_" + m);
      }
      out += fmt::format(" {:>8}", g_label(r.p));
      for (const auto & m : r.metric_names) {
        out += fmt::format(" {:>12}", "w_" + m);
      }
      out += "  note\n";
      for (const auto & row : r.rows) {
        out += fmt::format("{:<20} {:>7}", row.group, row.n);
        for (Index j = 0; j < row.metric_ginis.size(); ++j) {
          out += fmt::format(" {:>12}", fixed3(row.metric_ginis[j]));
        }
        out += fmt::format(" {:>8}", row.g ? fixed3(*row.g) : std::string("-"));
        for (std::size_t j = 0; j < d; ++j) {
          const auto i = static_cast<Index>(j);
          out += fmt::format(" {:>12}", i < row.weights.size() ? fixed3(row.weights[i]) : "-");
        }
        std::string note = row.note;
        if (row.negativity_warning) {
          note = fmt::format("negative whitened entry {:.3g}{}{}", row.worst_negative,
                             note.empty() ? "" : "; ", note);
        }
        out += "  " + note + "\n";
      }
      for (const auto & [group, size] : r.excluded) {
        out += fmt::format("excluded: {} (n = {})\n", group, size);
      }
      if (r.dropped_rows > 0) {
        out += fmt::format("dropped rows: {}\n", r.dropped_rows);
      }
      return out;
    }
    case ReportFormat::csv: {
      std::string out = "group,n";
      for (const auto & m : r.metric_names) {
        out += ",gini_" + m;
      }
      out += ",G";
      for (const auto & m : r.metric_names) {
        out += ",weight_" + m;
      }
      out += ",negativity_warning,worst_negative,note\n";
      for (const auto & row : r.rows) {
        out += csv_quote(row.group) + "," + std::to_string(row.n);
        for (Index j = 0; j < row.metric_ginis.size(); ++j) {
          out += "," + full(row.metric_ginis[j]);
        }
        out += "," + (row.g ? full(*row.g) : std::string{});
        for (std::size_t j = 0; j < d; ++j) {
          const auto i = static_cast<Index>(j);
          out += "," + (i < row.weights.size() ? full(row.weights[i]) : std::string{});
        }
        out += std::string(",") + (row.negativity_warning ? "true" : "false") + "," +
               full(row.worst_negative) + "," + csv_quote(row.note) + "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      Json rows = Json::array();
      for (const auto & row : r.rows) {
        rows.push_back({
          {"group", row.group},
          {"n", row.n},
          {"metric_ginis", vector_json(row.metric_ginis)},
          {"G", row.g ? Json(*row.g) : Json(nullptr)},
          {"weights", row.weights.size() > 0 ? vector_json(row.weights) : Json(nullptr)},
          {"negativity_warning", row.negativity_warning},
          {"worst_negative", row.worst_negative},
          {"note", row.note.empty() ? Json(nullptr) : Json(row.note)},
        });
      }
      Json excluded = Json::array();
      for (const auto & [group, size] : r.excluded) {
        excluded.push_back({{"group", group}, {"n", size}});
      }
      Json doc = {
        {"p", std::isinf(r.p) ? Json("inf") : Json(r.p)},
        {"metrics", r.metric_names},
        {"rows", rows},
        {"summary", summary_json(r)},
        {"correlation", correlation_json(r)},
        {"excluded_groups", excluded},
        {"dropped_rows", r.dropped_rows},
      };
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string serialize_summary(const InequalityReport & r, ReportFormat format)
{
  switch (format) {
    case ReportFormat::table:
      return summary_table(r);
    case ReportFormat::csv: {
      std::string out = "metric,mean,std_dev\n";
      for (const auto & s : r.summary) {
        out += csv_quote(s.metric) + "," + full(s.mean) + "," + full(s.std_dev) + "\n";
      }
      return out;
    }
    case ReportFormat::json:
      return summary_json(r).dump(2) + "\n";
  }
  return {};
}

std::string serialize_correlation(const InequalityReport & r, ReportFormat format)
{
  switch (format) {
    case ReportFormat::table:
      return correlation_table(r);
    case ReportFormat::csv: {
      std::string out = "metric";
      for (const auto & m : r.metric_names) {
        out += "," + csv_quote(m);
      }
      out += '\n';
      for (Index i = 0; i < r.correlation.rows(); ++i) {
        out += csv_quote(r.metric_names[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < r.correlation.cols(); ++j) {
          out += "," + full(r.correlation(i, j));
        }
        out += '\n';
      }
      return out;
    }
    case ReportFormat::json: {
      Json doc = {{"metrics", r.metric_names}, {"correlation", correlation_json(r)}};
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace mvgini
