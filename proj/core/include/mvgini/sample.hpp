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

#ifndef MVGINI__SAMPLE_HPP_
#define MVGINI__SAMPLE_HPP_

#include <optional>

#include "mvgini/types.hpp"

namespace mvgini
{

/// Finite weighted empirical distribution on R^d.
///
/// Rows of `points()` are support points, columns are components. Weights are
/// non-negative and normalized to sum to one. Duplicate points are kept as-is.
class WeightedSample
{
public:
  /// Validates and normalizes. Throws DataError on non-finite entries, negative
  /// weights, or weights summing to zero.
  WeightedSample(Matrix points, std::optional<Vector> weights = std::nullopt);

  const Matrix & points() const noexcept { return points_; }
  const Vector & weights() const noexcept { return weights_; }
  Index size() const noexcept { return points_.rows(); }
  Index dim() const noexcept { return points_.cols(); }

  /// Component `j` of every support point.
  auto column(Index j) const { return points_.col(j); }

  /// The sample of Q·X for Q = diag(q).
  WeightedSample scaled(const Vector & q) const;
  /// The sample of X + c.
  WeightedSample shifted(const Vector & c) const;
  /// The sample of A·X for a d'×d matrix A.
  WeightedSample transformed(const Matrix & a) const;

private:
  struct Trusted {};
  WeightedSample(Trusted, Matrix points, Vector weights);

  Matrix points_;
  Vector weights_;
};

WeightedSample make_sample(Matrix points, std::optional<Vector> weights = std::nullopt);

/// First and second moments of a weighted sample (population convention).
struct MomentSummary
{
  Vector mean;
  Matrix covariance;
  /// Diagonal of covariance, i.e. the diagonal of V.
  Vector variances;
  /// Correlation matrix P. Rows/columns of degenerate components are set to
  /// the identity pattern; see `degenerate_component`.
  Matrix correlation;
  /// First component whose variance is zero relative to its second moment, if any.
  std::optional<Index> degenerate_component;

  Index dim() const noexcept { return mean.size(); }
  Eigen::DiagonalMatrix<double, Eigen::Dynamic> variance_diag() const
  {
    return variances.asDiagonal();
  }
};

MomentSummary moments(const WeightedSample & sample);

/// Moment summary from known parameters (for closed-form evaluation).
/// Throws std::invalid_argument on shape mismatch or an asymmetric covariance.
MomentSummary moments_from(const Vector & mean, const Matrix & covariance);

}  // namespace mvgini

#endif  // MVGINI__SAMPLE_HPP_
