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

#include "mvgini/gini.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mvgini/parallel.hpp"

namespace mvgini
{

namespace
{

// A mean is treated as zero when it is below this fraction of the largest
// absolute value in the data.
constexpr double kZeroMeanRelTol = 1e-13;

constexpr Index kRowsPerChunk = 32;
constexpr std::size_t kPairsPerChunk = 1 << 16;
constexpr std::size_t kPairsPerBlock = kPairsPerChunk * 16;

void require_order(double p)
{
  if (!(p >= 1.0)) {
    throw std::invalid_argument("p must be >= 1");
  }
}

// ||a - b||_p for two contiguous points of length d.
struct L1
{
  double operator()(const double * a, const double * b, Index d) const
  {
    double s = 0.0;
    for (Index i = 0; i < d; ++i) {
      s += std::abs(a[i] - b[i]);
    }
    return s;
  }
};

struct L2
{
  double operator()(const double * a, const double * b, Index d) const
  {
    double s = 0.0;
    for (Index i = 0; i < d; ++i) {
      const double t = a[i] - b[i];
      s += t * t;
    }
    return std::sqrt(s);
  }
};

struct LInf
{
  double operator()(const double * a, const double * b, Index d) const
  {
    double s = 0.0;
    for (Index i = 0; i < d; ++i) {
      s = std::max(s, std::abs(a[i] - b[i]));
    }
    return s;
  }
};

struct LP
{
  double p;
  double operator()(const double * a, const double * b, Index d) const
  {
    double s = 0.0;
    for (Index i = 0; i < d; ++i) {
      s += std::pow(std::abs(a[i] - b[i]), p);
    }
    return std::pow(s, 1.0 / p);
  }
};

template <typename Fn>
decltype(auto) with_norm(double p, Fn && fn)
{
  if (p == 1.0) {
    return fn(L1{});
  }
  if (p == 2.0) {
    return fn(L2{});
  }
  if (std::isinf(p)) {
    return fn(LInf{});
  }
  return fn(LP{p});
}

// Points as columns so each point's components are contiguous.
struct PointMajor
{
  Matrix data;
  Index d;
  Index n;
  const double * point(Index a) const { return data.data() + a * d; }
};

PointMajor point_major(const WeightedSample & s)
{
  return {s.points().transpose(), s.dim(), s.size()};
}

// sum_{a,b} w_a w_b ||y_a - y_b||_p, as 2 * sum_{a<b}.
template <typename Norm>
double exact_pair_sum(const PointMajor & y, const Vector & w, Norm norm, unsigned threads)
{
  const Index n = y.n;
  const std::size_t chunks = static_cast<std::size_t>((n + kRowsPerChunk - 1) / kRowsPerChunk);
  std::vector<double> partial(chunks, 0.0);
  for_each_chunk(chunks, threads, [&](std::size_t c) {
    const Index lo = static_cast<Index>(c) * kRowsPerChunk;
    const Index hi = std::min(n, lo + kRowsPerChunk);
    double chunk_sum = 0.0;
    for (Index a = lo; a < hi; ++a) {
      const double * pa = y.point(a);
      double row = 0.0;
      for (Index b = a + 1; b < n; ++b) {
        row += w[b] * norm(pa, y.point(b), y.d);
      }
      chunk_sum += w[a] * row;
    }
    partial[c] = chunk_sum;
  });
  double total = 0.0;
  for (const double v : partial) {
    total += v;
  }
  return 2.0 * total;
}

struct RunningMoments
{
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x)
  {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const RunningMoments & other)
  {
    if (other.count == 0.0) {
      return;
    }
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }
};

template <typename Norm>
RunningMoments sampled_pair_moments(
  const PointMajor & y, const Vector & w, Norm norm, const PairSampleEstimator & est,
  unsigned threads)
{
  std::vector<double> cdf(static_cast<std::size_t>(w.size()));
  std::partial_sum(w.data(), w.data() + w.size(), cdf.begin());
  const double total_weight = cdf.back();
  const auto last = static_cast<std::uint32_t>(cdf.size() - 1);

  std::mt19937_64 gen(est.seed);
  auto draw = [&]() -> std::uint32_t {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * total_weight;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min(static_cast<std::uint32_t>(it - cdf.begin()), last);
  };

  RunningMoments acc;
  std::vector<std::uint32_t> pairs;
  std::uint64_t remaining = est.pairs;
  while (remaining > 0) {
    const std::size_t block = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kPairsPerBlock));
    remaining -= block;
    pairs.resize(2 * block);
    for (std::size_t k = 0; k < block; ++k) {
      pairs[2 * k] = draw();
      pairs[2 * k + 1] = draw();
    }
    const std::size_t chunks = (block + kPairsPerChunk - 1) / kPairsPerChunk;
    std::vector<RunningMoments> partial(chunks);
    for_each_chunk(chunks, threads, [&](std::size_t c) {
      const std::size_t lo = c * kPairsPerChunk;
      const std::size_t hi = std::min(block, lo + kPairsPerChunk);
      RunningMoments local;
      for (std::size_t k = lo; k < hi; ++k) {
        local.add(norm(y.point(pairs[2 * k]), y.point(pairs[2 * k + 1]), y.d));
      }
      partial[c] = local;
    });
    for (const auto & part : partial) {
      acc.merge(part);
    }
  }
  return acc;
}

double max_abs(const Matrix & m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

double p_norm(const Vector & v, double p)
{
  require_order(p);
  if (v.size() == 0) {
    return 0.0;
  }
  if (p == 1.0) {
    return v.cwiseAbs().sum();
  }
  if (p == 2.0) {
    return v.norm();
  }
  if (std::isinf(p)) {
    return v.cwiseAbs().maxCoeff();
  }
  return std::pow(v.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

double gini_1d(std::span<const double> values, std::span<const double> weights)
{
  if (values.size() != weights.size()) {
    throw std::invalid_argument("values and weights differ in length");
  }
  if (values.empty()) {
    throw std::invalid_argument("gini_1d needs at least one value");
  }
  const std::size_t n = values.size();
  double total_weight = 0.0;
  double weighted_sum = 0.0;
  double scale = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    total_weight += weights[a];
    weighted_sum += weights[a] * values[a];
    scale = std::max(scale, std::abs(values[a]));
  }
  if (!(total_weight > 0.0)) {
    throw DataError("all-zero weights");
  }
  const double mean = weighted_sum / total_weight;
  if (!(std::abs(mean) > kZeroMeanRelTol * scale)) {
    throw NumericalError("undefined inequality for zero-mean component");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  // For sorted v: sum_{j<k} w_j w_k (v_k - v_j), accumulated with prefix sums
  // of w and w·v on mean-centered values.
  double prefix_w = 0.0;
  double prefix_wv = 0.0;
  double half_sum = 0.0;
  for (const std::size_t k : order) {
    const double w = weights[k] / total_weight;
    const double v = values[k] - mean;
    half_sum += w * (v * prefix_w - prefix_wv);
    prefix_w += w;
    prefix_wv += w * v;
  }
  // Full double sum is 2 * half_sum; divide by 2|mean|.
  return half_sum / std::abs(mean);
}

double gini_1d(const Vector & values, const Vector & weights)
{
  return gini_1d(
    std::span<const double>(values.data(), static_cast<std::size_t>(values.size())),
    std::span<const double>(weights.data(), static_cast<std::size_t>(weights.size())));
}

double mahalanobis_norm_p(const WhiteningTransform & t, const Vector & mean, double p)
{
  if (mean.size() != t.dim()) {
    throw std::invalid_argument("mean has wrong dimension for whitening transform");
  }
  return p_norm(t.apply(mean), p);
}

Vector decomposition_weights(const Vector & whitened_mean)
{
  const Vector abs = whitened_mean.cwiseAbs();
  const double total = abs.sum();
  if (!(total > 0.0)) {
    throw NumericalError("whitened mean has zero p-norm");
  }
  return abs / total;
}

GiniResult gini_p(
  const WeightedSample & s, double p, const Estimator & estimator, const GiniOptions & options)
{
  require_order(p);
  const WhiteningTransform t = fit(options.method, moments(s));
  const WeightedSample white = apply(t, s);
  const Vector whitened_mean = t.apply(t.fitted_moments.mean);

  GiniResult out;
  out.p = p;
  out.method = options.method;
  out.normalizer = p_norm(whitened_mean, p);
  if (!(out.normalizer > kZeroMeanRelTol * std::max(1.0, max_abs(white.points())))) {
    throw NumericalError("whitened mean has zero p-norm");
  }
  out.negativity = find_negative_entries(white);

  const PointMajor y = point_major(white);
  const Vector & w = white.weights();
  if (std::holds_alternative<ExactEstimator>(estimator)) {
    if (s.size() > options.exact_cap) {
      throw DataError(
        "sample has " + std::to_string(s.size()) + " points, above the exact-estimator cap of " +
        std::to_string(options.exact_cap) + "; use the pair-sample estimator");
    }
    const double pair_sum =
      with_norm(p, [&](auto norm) { return exact_pair_sum(y, w, norm, options.threads); });
    out.value = pair_sum / (2.0 * out.normalizer);
  } else {
    const auto & est = std::get<PairSampleEstimator>(estimator);
    if (est.pairs < 2) {
      throw std::invalid_argument("pair-sample estimator needs at least two pairs");
    }
    if (s.size() > static_cast<Index>(std::numeric_limits<std::uint32_t>::max())) {
      throw std::invalid_argument("sample too large for the pair-sample estimator");
    }
    const RunningMoments acc = with_norm(
      p, [&](auto norm) { return sampled_pair_moments(y, w, norm, est, options.threads); });
    const double scale = 1.0 / (2.0 * out.normalizer);
    const double variance = acc.m2 / (acc.count - 1.0);
    out.value = acc.mean * scale;
    out.pair_sample = PairSampleInfo{est.seed, est.pairs, std::sqrt(variance / acc.count) * scale};
  }

  if (p == 1.0) {
    out.weights = decomposition_weights(whitened_mean);
    Vector ginis(s.dim());
    try {
      for (Index i = 0; i < s.dim(); ++i) {
        ginis[i] = gini_1d(white.column(i), w);
      }
      out.component_ginis = std::move(ginis);
    } catch (const NumericalError &) {
      out.component_ginis.resize(0);
    }
  }
  return out;
}

GiniResult gini_1_decomposed(const WeightedSample & s, const GiniOptions & options)
{
  const WhiteningTransform t = fit(options.method, moments(s));
  const WeightedSample white = apply(t, s);
  const Vector whitened_mean = t.apply(t.fitted_moments.mean);

  GiniResult out;
  out.p = 1.0;
  out.method = options.method;
  out.normalizer = whitened_mean.cwiseAbs().sum();
  if (!(out.normalizer > kZeroMeanRelTol * std::max(1.0, max_abs(white.points())))) {
    throw NumericalError("whitened mean has zero p-norm");
  }
  out.weights = decomposition_weights(whitened_mean);
  out.component_ginis.resize(s.dim());
  for (Index i = 0; i < s.dim(); ++i) {
    out.component_ginis[i] = gini_1d(white.column(i), white.weights());
  }
  out.value = out.weights.dot(out.component_ginis);
  out.negativity = find_negative_entries(white);
  return out;
}

double gaussian_g1_closed_form(const Vector & mean, const Matrix & cov)
{
  const WhiteningTransform t = fit_zca_cor(moments_from(mean, cov));
  const double norm = t.apply(mean).cwiseAbs().sum();
  if (!(norm > 0.0)) {
    throw NumericalError("non-null mean required for the Gaussian closed form");
  }
  return static_cast<double>(mean.size()) / (std::sqrt(std::numbers::pi) * norm);
}

}  // namespace mvgini
