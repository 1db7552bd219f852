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

#include "mvgini_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mvgini/mvgini.hpp"
#include "mvgini_cli/acceptance.hpp"

namespace mvgini::cli
{

namespace
{

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct InputFlags
{
  std::string input;
  std::string columns;
  std::string group;
  std::string name;
  bool allow_zero = false;
  std::string format = "table";
  std::string out;
  unsigned threads = 0;
};

void add_input_flags(CLI::App & cmd, InputFlags & f, bool grouped)
{
  cmd.add_option("--input", f.input, "CSV file with a header row")->required();
  cmd.add_option("--columns", f.columns, "comma-separated metric columns, in output order")->required();
  if (grouped) {
    cmd.add_option("--group", f.group, "column holding the group label (e.g. country)");
  }
  cmd.add_option("--name", f.name, "column holding the row label");
  cmd.add_flag("--allow-zero", f.allow_zero, "keep rows whose metrics are zero (negatives are still dropped)");
  cmd.add_option("--out", f.out, "write the result to this file instead of standard output");
  cmd.add_option("--threads", f.threads, "worker threads (0 = all cores); never changes results")
    ->capture_default_str();
}

void add_format_flag(CLI::App & cmd, InputFlags & f, std::vector<std::string> allowed)
{
  cmd.add_option("--format", f.format, "output format")
    ->check(CLI::IsMember(std::move(allowed)))
    ->capture_default_str();
}

Dataset load(const InputFlags & f)
{
  const std::vector<std::string> columns = split_list(f.columns);
  if (columns.empty()) {
    throw UsageError("--columns must name at least one column");
  }
  return load_csv(f.input, columns, f.group, f.name,
                  f.allow_zero ? CleaningRule::non_negative : CleaningRule::positive);
}

WeightedSample pooled(const Dataset & d)
{
  Matrix points(static_cast<Index>(d.records.size()), static_cast<Index>(d.metric_names.size()));
  for (std::size_t a = 0; a < d.records.size(); ++a) {
    points.row(static_cast<Index>(a)) = d.records[a].metrics.transpose();
  }
  return WeightedSample(std::move(points));
}

void emit(const InputFlags & f, const std::string & text, std::ostream & out)
{
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  file << text;
  if (!file) {
    throw DataError("cannot write output file '" + f.out + "'");
  }
}

double parse_order(const std::string & text)
{
  if (text == "inf" || text == "infinity" || text == "max") {
    return kMaxNorm;
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !(value >= 1.0)) {
    throw UsageError("--p must be a number >= 1 or 'inf', got '" + text + "'");
  }
  return value;
}

std::string order_label(double p)
{
  return std::isinf(p) ? std::string("inf") : fmt::format("{:g}", p);
}

Json order_json(double p)
{
  return std::isinf(p) ? Json("inf") : Json(p);
}

std::vector<double> parse_list(const std::string & text, const char * flag)
{
  std::vector<double> out;
  for (const auto & item : split_list(text)) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || end != item.data() + item.size()) {
      throw UsageError(fmt::format("{} expects numbers, got '{}'", flag, item));
    }
    out.push_back(value);
  }
  return out;
}

Json vector_json(const Vector & v)
{
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
  }
  return out;
}

Json negativity_json(const Negativity & n)
{
  Json out{{"warning", n.any}};
  if (n.any) {
    out["worst"] = n.worst;
    out["row"] = n.point;
    out["component"] = n.component;
  }
  return out;
}

std::string negativity_text(const Negativity & n, const std::vector<std::string> & names)
{
  if (!n.any) {
    return "none";
  }
  return fmt::format(
    "warning: whitened entry {:.6g} at row {}, component {} (the [0, 1] bound is not guaranteed)",
    n.worst, n.point, names[static_cast<std::size_t>(n.component)]);
}

// ---------------------------------------------------------------- summary/corr

struct TableFlags
{
  InputFlags in;
  Index min_group_size = 2;
};

int cmd_summary(const TableFlags & f, bool correlation, std::ostream & out)
{
  const auto fmt_kind = *parse_report_format(f.in.format);
  const InequalityReport r = summarize(panelize(load(f.in), f.min_group_size));
  emit(f.in, correlation ? serialize_correlation(r, fmt_kind) : serialize_summary(r, fmt_kind), out);
  return kOk;
}

// ------------------------------------------------------------------------ gini

struct GiniFlags
{
  InputFlags in;
  std::string p = "1";
  std::string method = "zca-cor";
  std::string estimator = "exact";
  std::uint64_t pairs = 1'000'000;
  std::uint64_t seed = 0;
  Index exact_cap = kDefaultExactCap;
};

std::string gini_text(const GiniResult & g, const Dataset & d, const std::string & estimator, const std::string & format)
{
  const auto & names = d.metric_names;
  const auto n = static_cast<Index>(d.records.size());
  if (format == "json") {
    Json j;
    j["p"] = order_json(g.p);
    j["method"] = std::string(to_string(g.method));
    j["estimator"] = estimator;
    j["n"] = n;
    j["dropped_rows"] = d.dropped;
    j["metrics"] = names;
    j["G"] = g.value;
    j["normalizer"] = g.normalizer;
    j["weights"] = g.weights.size() ? vector_json(g.weights) : Json(nullptr);
    j["component_ginis"] = g.component_ginis.size() ? vector_json(g.component_ginis) : Json(nullptr);
    if (g.pair_sample) {
      j["pair_sample"] = {{"seed", g.pair_sample->seed},
                          {"pairs", g.pair_sample->pair_count},
                          {"std_error", g.pair_sample->std_error}};
    } else {
      j["pair_sample"] = nullptr;
    }
    j["negativity"] = negativity_json(g.negativity);
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string header = "p,method,estimator,n,G,normalizer,seed,pairs,std_error";
    std::string row = fmt::format("{},{},{},{},{:.17g},{:.17g}", order_label(g.p), to_string(g.method),
                                  estimator, n, g.value, g.normalizer);
    if (g.pair_sample) {
      row += fmt::format(",{},{},{:.17g}", g.pair_sample->seed, g.pair_sample->pair_count, g.pair_sample->std_error);
    } else {
      row += ",,,";
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
      header += ",weight_" + names[j];
      row += g.weights.size() ? fmt::format(",{:.17g}", g.weights[static_cast<Index>(j)]) : ",";
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
      header += ",component_gini_" + names[j];
      row += g.component_ginis.size() ? fmt::format(",{:.17g}", g.component_ginis[static_cast<Index>(j)]) : ",";
    }
    header += ",negativity_warning,worst_negative\n";
    row += fmt::format(",{},{:.17g}\n", g.negativity.any ? "true" : "false", g.negativity.worst);
    return header + row;
  }

  std::string text = fmt::format("G_{} = {:.12f}\n", order_label(g.p), g.value);
  text += fmt::format("  whitening   {}\n", to_string(g.method));
  text += fmt::format("  rows        {} used, {} dropped\n", n, d.dropped);
  text += fmt::format("  normalizer  M_{} = {:.12g}\n", order_label(g.p), g.normalizer);
  if (g.pair_sample) {
    text += fmt::format("  estimator   pair sample, {} pairs, seed {}, std error {:.3e}\n",
                        g.pair_sample->pair_count, g.pair_sample->seed, g.pair_sample->std_error);
  } else {
    text += "  estimator   exact\n";
  }
  text += fmt::format("  negativity  {}\n", negativity_text(g.negativity, names));
  if (g.weights.size()) {
    std::size_t width = 9;
    for (const auto & name : names) {
      width = std::max(width, name.size());
    }
    text += fmt::format("\n  {:<{}}  {:>8}  {:>14}\n", "component", width, "weight", "component Gini");
    for (std::size_t j = 0; j < names.size(); ++j) {
      const auto i = static_cast<Index>(j);
      const std::string cg = g.component_ginis.size() ? fmt::format("{:.6f}", g.component_ginis[i]) : "n/a";
      text += fmt::format("  {:<{}}  {:>8.6f}  {:>14}\n", names[j], width, g.weights[i], cg);
    }
  }
  return text;
}

int cmd_gini(const GiniFlags & f, std::ostream & out)
{
  const double p = parse_order(f.p);
  const Dataset d = load(f.in);
  GiniOptions options;
  options.method = *parse_whitening_method(f.method);
  options.exact_cap = f.exact_cap;
  options.threads = f.in.threads;
  Estimator estimator = ExactEstimator{};
  if (f.estimator == "pairs") {
    estimator = PairSampleEstimator{f.seed, f.pairs};
  }
  const GiniResult g = gini_p(pooled(d), p, estimator, options);
  emit(f.in, gini_text(g, d, f.estimator, f.in.format), out);
  return kOk;
}

// ---------------------------------------------------------------------- whiten

struct WhitenFlags
{
  InputFlags in;
  std::string method = "zca-cor";
  bool check_scale = false;
  std::string q;
};

WhiteningTransform fit_or_explain(WhiteningMethod method, const MomentSummary & m)
{
  try {
    return fit(method, m);
  } catch (const NumericalError & e) {
    const std::string what = e.what();
    if (what.find("eigenvalue") != std::string::npos) {
      throw;
    }
    const double smallest = sym_eigen(m.covariance).values.minCoeff();
    throw NumericalError(fmt::format("{} (smallest covariance eigenvalue {:.6g})", what, smallest));
  }
}

int cmd_whiten(const WhitenFlags & f, std::ostream & out)
{
  const WhiteningMethod method = *parse_whitening_method(f.method);
  std::vector<double> q_values;
  if (f.check_scale) {
    if (f.q.empty()) {
      throw UsageError("--check-scale-stability needs --q");
    }
    q_values = parse_list(f.q, "--q");
  } else if (!f.q.empty()) {
    throw UsageError("--q is only used with --check-scale-stability");
  }

  const Dataset d = load(f.in);
  const WeightedSample s = pooled(d);
  if (f.check_scale && static_cast<Index>(q_values.size()) != s.dim()) {
    throw UsageError(fmt::format("--q has {} entries but there are {} columns", q_values.size(), s.dim()));
  }
  const MomentSummary m = moments(s);
  const WhiteningTransform t = fit_or_explain(method, m);
  const Negativity neg = find_negative_entries(apply(t, s));
  std::optional<double> deviation;
  if (f.check_scale) {
    deviation = scale_stability_check(method, s, Eigen::Map<const Vector>(q_values.data(), s.dim()));
  }

  std::string text;
  if (f.in.format == "json") {
    Json j;
    j["method"] = std::string(to_string(method));
    j["scale_stable_method"] = is_scale_stable(method);
    j["n"] = s.size();
    j["metrics"] = d.metric_names;
    Json rows = Json::array();
    for (Index i = 0; i < t.dim(); ++i) {
      rows.push_back(vector_json(t.matrix.row(i).transpose()));
    }
    j["matrix"] = rows;
    j["whiteness_residual"] = whiteness_residual(t);
    j["inverse_residual"] = inverse_residual(t);
    j["negativity"] = negativity_json(neg);
    if (deviation) {
      j["scale_stability"] = {{"q", q_values}, {"deviation", *deviation}};
    }
    text = j.dump(2) + "\n";
  } else {
    text = fmt::format("method {} ({})\n", to_string(method),
                       is_scale_stable(method) ? "scale stable" : "not scale stable");
    text += fmt::format("rows {}, columns {}\n\nW =\n", s.size(), s.dim());
    for (Index i = 0; i < t.dim(); ++i) {
      text += " ";
      for (Index k = 0; k < t.dim(); ++k) {
        text += fmt::format(" {:>14.8f}", t.matrix(i, k));
      }
      text += "\n";
    }
    text += fmt::format("\nwhiteness residual  max|W S W^T - I| = {:.3e}\n", whiteness_residual(t));
    text += fmt::format("inverse residual    max|W^T W S - I| = {:.3e}\n", inverse_residual(t));
    text += fmt::format("negativity          {}\n", negativity_text(neg, d.metric_names));
    if (deviation) {
      text += fmt::format("scale stability     q = ({}), max deviation {:.6e}\n", fmt::join(q_values, ", "), *deviation);
    }
  }
  emit(f.in, text, out);
  return kOk;
}

// ---------------------------------------------------------------------- report

struct ReportFlags
{
  InputFlags in;
  Index min_group_size = 2;
  std::string p = "1";
};

int cmd_report(const ReportFlags & f, std::ostream & out)
{
  const double p = parse_order(f.p);
  const InequalityReport r = report(panelize(load(f.in), f.min_group_size), p, f.in.threads);
  emit(f.in, serialize_report(r, *parse_report_format(f.in.format)), out);
  return kOk;
}

// ---------------------------------------------------------------------- verify

struct VerifyFlags
{
  std::uint64_t seed = 7;
  double tolerance_factor = 1.0;
  std::vector<int> only;
};

int cmd_verify(const VerifyFlags & f, std::ostream & out)
{
  AcceptanceOptions options;
  options.seed = f.seed;
  options.tolerance_factor = f.tolerance_factor;
  options.only = f.only;
  out << "mvgini verify, seed " << f.seed;
  if (f.tolerance_factor != 1.0) {
    out << ", tolerance factor " << f.tolerance_factor;
  }
  out << "\n";
  const auto results = run_acceptance(options, [&](const CheckResult & r) { out << format_result(r) << "\n" << std::flush; });
  const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult & r) { return r.pass; });
  out << passed << "/" << results.size() << " checks passed\n";
  return passed == static_cast<std::ptrdiff_t>(results.size()) ? kOk : kNumerical;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Multivariate Gini-type inequality indices for multi-metric data", "mvgini"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mvgini 0.1.0");

  const std::vector<std::string> table_formats{"table", "csv", "json"};

  TableFlags summary_flags;
  auto * summary = app.add_subcommand("summary", "per-metric mean and standard deviation");
  add_input_flags(*summary, summary_flags.in, true);
  add_format_flag(*summary, summary_flags.in, table_formats);
  summary->add_option("--min-group-size", summary_flags.min_group_size, "smallest group kept")->capture_default_str();

  TableFlags corr_flags;
  auto * corr = app.add_subcommand("corr", "correlation matrix of the metrics");
  add_input_flags(*corr, corr_flags.in, true);
  add_format_flag(*corr, corr_flags.in, table_formats);
  corr->add_option("--min-group-size", corr_flags.min_group_size, "smallest group kept")->capture_default_str();

  GiniFlags gini_flags;
  auto * gini = app.add_subcommand("gini", "multivariate Gini index of all rows");
  add_input_flags(*gini, gini_flags.in, false);
  add_format_flag(*gini, gini_flags.in, table_formats);
  gini->add_option("--p", gini_flags.p, "norm order: a number >= 1 or 'inf'")->capture_default_str();
  gini->add_option("--method", gini_flags.method, "whitening (scale-stable methods only)")
    ->check(CLI::IsMember({"zca-cor", "zca_cor", "cholesky"}))
    ->capture_default_str();
  gini->add_option("--estimator", gini_flags.estimator, "exact double sum or seeded pair sample")
    ->check(CLI::IsMember({"exact", "pairs"}))
    ->capture_default_str();
  gini->add_option("--pairs", gini_flags.pairs, "pair count for --estimator pairs")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();
  gini->add_option("--seed", gini_flags.seed, "seed for --estimator pairs")->capture_default_str();
  gini->add_option("--exact-cap", gini_flags.exact_cap, "largest row count accepted by the exact estimator")
    ->check(CLI::PositiveNumber)
    ->capture_default_str();

  WhitenFlags whiten_flags;
  auto * whiten = app.add_subcommand("whiten", "fit a whitening matrix and print diagnostics");
  add_input_flags(*whiten, whiten_flags.in, false);
  add_format_flag(*whiten, whiten_flags.in, {"table", "json"});
  whiten->add_option("--method", whiten_flags.method, "whitening method")
    ->check(CLI::IsMember({"zca", "pca", "cholesky", "zca-cor", "zca_cor"}))
    ->capture_default_str();
  whiten->add_flag("--check-scale-stability", whiten_flags.check_scale,
                   "compare whitening of the data and of the data scaled by --q");
  whiten->add_option("--q", whiten_flags.q, "comma-separated positive scale factors, one per column");

  ReportFlags report_flags;
  auto * report_cmd = app.add_subcommand("report", "per-group and pooled inequality report");
  add_input_flags(*report_cmd, report_flags.in, true);
  add_format_flag(*report_cmd, report_flags.in, table_formats);
  report_cmd->add_option("--min-group-size", report_flags.min_group_size, "smallest group reported")
    ->check(CLI::Range(Index{2}, std::numeric_limits<Index>::max()))
    ->capture_default_str();
  report_cmd->add_option("--p", report_flags.p, "norm order: a number >= 1 or 'inf'")->capture_default_str();

  VerifyFlags verify_flags;
  auto * verify = app.add_subcommand("verify", "run the built-in acceptance checks");
  verify->add_option("--seed", verify_flags.seed, "seed for the randomized checks")->capture_default_str();
  verify->add_option("--tolerance-factor", verify_flags.tolerance_factor,
                     "debug: multiply every pass tolerance (0 makes any error fail)")
    ->check(CLI::NonNegativeNumber)
    ->capture_default_str();
  verify->add_option("--only", verify_flags.only, "run only these check ids")
    ->delimiter(',')
    ->check(CLI::Range(1, kCheckCount));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (summary->parsed()) {
      return cmd_summary(summary_flags, false, out);
    }
    if (corr->parsed()) {
      return cmd_summary(corr_flags, true, out);
    }
    if (gini->parsed()) {
      return cmd_gini(gini_flags, out);
    }
    if (whiten->parsed()) {
      return cmd_whiten(whiten_flags, out);
    }
    if (report_cmd->parsed()) {
      return cmd_report(report_flags, out);
    }
    return cmd_verify(verify_flags, out);
  } catch (const UsageError & e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument & e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError & e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DataError & e) {
    err << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
}

}  // namespace mvgini::cli
