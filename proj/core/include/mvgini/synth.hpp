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

#ifndef MVGINI__SYNTH_HPP_
#define MVGINI__SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mvgini/sample.hpp"
#include "mvgini/types.hpp"
#include "mvgini/whitening.hpp"

/// Synthetic distributions, worked-example fixtures and brute-force oracles.
///
/// Nothing here shares code with the fast paths in gini.cpp; the oracles are
/// the reference those paths are tested against.
namespace mvgini::synth
{

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng & rng);
/// Standard normal via Box-Muller; consumes two draws.
double standard_normal(Rng & rng);

/// n uniform-weight draws mean + C·z, z standard normal, C = cholesky_lower(cov).
WeightedSample gen_gaussian(const Vector & mean, const Matrix & cov, Index n, std::uint64_t seed);

/// 2^d-point design mean + C·s, s in {-1, +1}^d, uniform weights. Its
/// population mean and covariance are exactly `mean` and C·Cᵀ = cov.
WeightedSample design_sample(const Vector & mean, const Matrix & cov);

inline constexpr int kMaxProductDim = 12;

/// Exact product measure of d iid coordinates, each shift or 2 + shift with
/// probability 1/2. G_1 = 1 / (2 (1 + shift)).
WeightedSample gen_shifted_coins(double shift, int d);

/// Exact product measure of d iid coordinates, each 0 with probability 1 - p
/// and 1 / (sqrt(p) (1 - p)) with probability p. Per-coordinate mean is
/// sqrt(p) / (1 - p), variance 1 / (1 - p), and G_1 = 1 - p.
WeightedSample gen_sparse_two_point(double p, int d);

inline constexpr Index kBruteForceCap = 2000;

/// Naive double sum over all ordered pairs and components, in index order.
double brute_force_gini_p(const WeightedSample & s, double p, const WhiteningTransform & t);

/// sum_{a,b} w_a w_b |x_a - x_b| / (2 |mean|), O(n²), no sorting.
double brute_force_gini_1d(const Vector & values, const Vector & weights);

/// The two-dimensional PCA counterexample: X with mean (1, 1) and covariance
/// [[4, -2], [-2, 3]], and Y = diag(2, 1)·X.
///
/// The `rounded_*` members are the commonly quoted 2-decimal values for this
/// example, kept verbatim. The quoted eigenvectors are the rows of Zᵀ written
/// as columns, so their signs do not match A·v = θ·v; the quoted whitening
/// matrices multiply by that matrix directly and so still equal Θ^{-1/2}·Zᵀ.
struct PcaCounterexample
{
  Vector q;
  MomentSummary base_moments;
  MomentSummary scaled_moments;
  /// Exact 4-point realizations of the two moment sets.
  WeightedSample base_sample;
  WeightedSample scaled_sample;

  /// Reference values, 2 decimals.
  Vector rounded_base_eigenvalues;
  Vector rounded_scaled_eigenvalues;
  /// Reference eigenvectors as columns, 2 decimals (signs as printed).
  Matrix rounded_base_eigenvectors;
  Matrix rounded_scaled_eigenvectors;
  /// Reference whitening matrices, 2 decimals.
  Matrix rounded_base_pca;
  Matrix rounded_scaled_pca;
  /// Reference whitened means, W_X·m_X and W_Y·m_Y, 2 decimals.
  Vector rounded_base_whitened_mean;
  Vector rounded_scaled_whitened_mean;

  std::vector<std::string> sources;
};

PcaCounterexample pca_counterexample();

/// Random symmetric positive-definite matrix AᵀA + eps·I with well-spread
/// eigenvalues.
Matrix random_spd(Rng & rng, Index d);
/// Random orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Matrix random_orthogonal(Rng & rng, Index d);
/// Gaussian sample with random positive mean and random SPD covariance.
WeightedSample random_sample(Rng & rng, Index n, Index d);
/// Non-negative sample: non-negative mixtures of exponential and uniform
/// sources, with random non-uniform weights.
WeightedSample random_nonnegative_sample(Rng & rng, Index n, Index d);

/// Writes the sample as a uniform-weight CSV panel (header then one row per
/// replicated point). Point a is repeated w_a·N times for the smallest
/// N <= max_rows that makes every count integral; throws DataError if none
/// exists.
void export_csv(
  const WeightedSample & s, const std::vector<std::string> & columns,
  const std::filesystem::path & path, Index max_rows = 100000);

}  // namespace mvgini::synth

#endif  // MVGINI__SYNTH_HPP_
