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

#include "mvgini/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mvgini
{

namespace
{

// A component is degenerate when its standard deviation is below this
// fraction of its root mean square.
constexpr double kDegenerateRelStd = 1e-12;

}  // namespace

WeightedSample::WeightedSample(Matrix points, std::optional<Vector> weights)
: points_(std::move(points))
{
  const Index n = points_.rows();
  if (n < 1 || points_.cols() < 1) {
    throw DataError("sample needs at least one point and one component");
  }
  if (!points_.allFinite()) {
    throw DataError("sample contains non-finite values");
  }
  if (weights) {
    if (weights->size() != n) {
      throw DataError(
        "weight count " + std::to_string(weights->size()) + " does not match point count " +
        std::to_string(n));
    }
    weights_ = std::move(*weights);
    if (!weights_.allFinite()) {
      throw DataError("weights contain non-finite values");
    }
    for (Index a = 0; a < n; ++a) {
      if (weights_[a] < 0.0) {
        throw DataError("negative weight at index " + std::to_string(a));
      }
    }
    const double total = weights_.sum();
    if (!(total > 0.0)) {
      throw DataError("all-zero weights");
    }
    weights_ /= total;
  } else {
    weights_ = Vector::Constant(n, 1.0 / static_cast<double>(n));
  }
}

WeightedSample::WeightedSample(Trusted, Matrix points, Vector weights)
: points_(std::move(points)), weights_(std::move(weights))
{
}

WeightedSample WeightedSample::scaled(const Vector & q) const
{
  if (q.size() != dim()) {
    throw std::invalid_argument("scale vector has wrong dimension");
  }
  return WeightedSample(Trusted{}, points_ * q.asDiagonal(), weights_);
}

WeightedSample WeightedSample::shifted(const Vector & c) const
{
  if (c.size() != dim()) {
    throw std::invalid_argument("shift vector has wrong dimension");
  }
  Matrix moved = points_.rowwise() + c.transpose();
  return WeightedSample(Trusted{}, std::move(moved), weights_);
}

WeightedSample WeightedSample::transformed(const Matrix & a) const
{
  if (a.cols() != dim()) {
    throw std::invalid_argument(
      "transform expects dimension " + std::to_string(a.cols()) + ", sample has " +
      std::to_string(dim()));
  }
  return WeightedSample(Trusted{}, points_ * a.transpose(), weights_);
}

WeightedSample make_sample(Matrix points, std::optional<Vector> weights)
{
  return WeightedSample(std::move(points), std::move(weights));
}

namespace
{

void fill_correlation(MomentSummary & m, const Vector & second_moment)
{
  const Index d = m.dim();
  m.variances = m.covariance.diagonal();
  m.correlation = Matrix::Identity(d, d);
  Vector inv_sd = Vector::Zero(d);
  for (Index i = 0; i < d; ++i) {
    const double rms = std::sqrt(second_moment[i]);
    const double sd = std::sqrt(std::max(m.variances[i], 0.0));
    if (!(sd > kDegenerateRelStd * rms)) {
      if (!m.degenerate_component) {
        m.degenerate_component = i;
      }
      continue;
    }
    inv_sd[i] = 1.0 / sd;
  }
  for (Index j = 0; j < d; ++j) {
    for (Index i = j + 1; i < d; ++i) {
      const double r = std::clamp(m.covariance(i, j) * inv_sd[i] * inv_sd[j], -1.0, 1.0);
      m.correlation(i, j) = r;
      m.correlation(j, i) = r;
    }
  }
}

}  // namespace

MomentSummary moments(const WeightedSample & sample)
{
  const Matrix & x = sample.points();
  const Vector & w = sample.weights();
  const Index d = sample.dim();

  MomentSummary m;
  m.mean = x.transpose() * w;

  // Two-pass form: center first, then accumulate.
  const Matrix centered = x.rowwise() - m.mean.transpose();
  m.covariance = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = j; i < d; ++i) {
      const double c = (centered.col(i).array() * centered.col(j).array() * w.array()).sum();
      m.covariance(i, j) = c;
      m.covariance(j, i) = c;
    }
  }
  const Vector second = (x.array().square().colwise() * w.array()).colwise().sum().transpose();
  fill_correlation(m, second);
  return m;
}

MomentSummary moments_from(const Vector & mean, const Matrix & covariance)
{
  const Index d = mean.size();
  if (covariance.rows() != d || covariance.cols() != d) {
    throw std::invalid_argument("covariance shape does not match mean dimension");
  }
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("covariance is not symmetric");
  }
  MomentSummary m;
  m.mean = mean;
  m.covariance = 0.5 * (covariance + covariance.transpose());
  const Vector second = m.covariance.diagonal() + mean.cwiseAbs2();
  fill_correlation(m, second);
  return m;
}

}  // namespace mvgini
