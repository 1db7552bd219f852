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

#ifndef MVGINI__GINI_HPP_
#define MVGINI__GINI_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <variant>

#include "mvgini/sample.hpp"
#include "mvgini/types.hpp"
#include "mvgini/whitening.hpp"

namespace mvgini
{

/// Use as `p` for the max-norm.
inline constexpr double kMaxNorm = std::numeric_limits<double>::infinity();

/// Default sample-size cap for the exact O(n²) estimator.
inline constexpr Index kDefaultExactCap = 20000;

/// Standard l_p norm; p = kMaxNorm gives the max-norm. Requires p >= 1.
double p_norm(const Vector & v, double p);

/// Weighted one-dimensional Gini index:
///   sum_{a,b} w_a w_b |x_a - x_b| / (2 |mean|)
/// over the product measure (diagonal pairs included). Weights need not be
/// normalized. Runs in O(n log n).
///
/// Throws NumericalError("undefined inequality for zero-mean component")
/// when the weighted mean vanishes relative to the data scale.
double gini_1d(std::span<const double> values, std::span<const double> weights);
double gini_1d(const Vector & values, const Vector & weights);

/// ||W·mean||_p.
double mahalanobis_norm_p(const WhiteningTransform & t, const Vector & mean, double p);

struct ExactEstimator
{
};

struct PairSampleEstimator
{
  std::uint64_t seed = 0;
  std::uint64_t pairs = 1'000'000;
};

using Estimator = std::variant<ExactEstimator, PairSampleEstimator>;

struct PairSampleInfo
{
  std::uint64_t seed = 0;
  std::uint64_t pair_count = 0;
  double std_error = 0.0;
};

struct GiniResult
{
  double p = 1.0;
  WhiteningMethod method = WhiteningMethod::zca_cor;
  /// G_p.
  double value = 0.0;
  /// M_p = ||W·m||_p.
  double normalizer = 0.0;
  /// |m*_i| / sum_j |m*_j|; empty unless p == 1.
  Vector weights;
  /// One-dimensional Gini of each whitened component; empty unless p == 1 and
  /// every whitened component has a non-zero mean.
  Vector component_ginis;
  /// Set when the pair-sample estimator produced `value`.
  std::optional<PairSampleInfo> pair_sample;
  Negativity negativity;

  bool is_exact() const noexcept { return !pair_sample.has_value(); }
};

struct GiniOptions
{
  /// The index is scale invariant only for scale-stable methods.
  WhiteningMethod method = WhiteningMethod::zca_cor;
  Index exact_cap = kDefaultExactCap;
  /// 0 = hardware concurrency. Never changes the result.
  unsigned threads = 0;
};

/// Multivariate Gini-type index
///   G_p = E||W(X - Y)||_p / (2 M_p),  X, Y iid from the sample.
///
/// Exact: full double sum over support pairs. Pair sample: `pairs` index pairs
/// drawn from the weights with a seeded mt19937_64, evaluated in fixed chunks
/// with a fixed reduction order, so the result depends only on the seed.
GiniResult gini_p(
  const WeightedSample & s, double p, const Estimator & estimator = ExactEstimator{},
  const GiniOptions & options = {});

/// G_1 as the |m*|-weighted combination of the one-dimensional Ginis of the
/// whitened components. Throws NumericalError if any whitened component has a
/// zero mean.
GiniResult gini_1_decomposed(const WeightedSample & s, const GiniOptions & options = {});

/// |m*_i| / sum_j |m*_j|.
Vector decomposition_weights(const Vector & whitened_mean);

/// G_1 of N(mean, cov): d / (sqrt(pi) ||W·mean||_1) with W the zca-cor matrix.
double gaussian_g1_closed_form(const Vector & mean, const Matrix & cov);

}  // namespace mvgini

#endif  // MVGINI__GINI_HPP_
