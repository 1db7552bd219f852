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

#include "mvgini/whitening.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "mvgini/linalg.hpp"

namespace mvgini
{

std::string_view to_string(WhiteningMethod method)
{
  switch (method) {
    case WhiteningMethod::zca:
      return "zca";
    case WhiteningMethod::pca:
      return "pca";
    case WhiteningMethod::cholesky:
      return "cholesky";
    case WhiteningMethod::zca_cor:
      return "zca-cor";
  }
  return "unknown";
}

std::optional<WhiteningMethod> parse_whitening_method(std::string_view name)
{
  if (name == "zca") {
    return WhiteningMethod::zca;
  }
  if (name == "pca") {
    return WhiteningMethod::pca;
  }
  if (name == "cholesky") {
    return WhiteningMethod::cholesky;
  }
  if (name == "zca-cor" || name == "zca_cor") {
    return WhiteningMethod::zca_cor;
  }
  return std::nullopt;
}

bool is_scale_stable(WhiteningMethod method)
{
  return method == WhiteningMethod::cholesky || method == WhiteningMethod::zca_cor;
}

namespace
{

// Eigendecomposition of a matrix that must be positive definite.
EigenDecomposition positive_definite_eigen(const Matrix & matrix, const char * what)
{
  EigenDecomposition eig = sym_eigen(matrix);
  const double smallest = eig.values[eig.values.size() - 1];
  const double threshold = kPositiveDefiniteRelTol * eig.values[0];
  if (!(smallest > threshold) || !(smallest > 0.0)) {
    std::ostringstream msg;
    msg << what << " is singular or indefinite: smallest eigenvalue " << smallest;
    throw NumericalError(msg.str());
  }
  return eig;
}

}  // namespace

WhiteningTransform fit_zca(const MomentSummary & m)
{
  const EigenDecomposition eig = positive_definite_eigen(m.covariance, "covariance");
  return {WhiteningMethod::zca, spectral_function(eig, [](double t) { return 1.0 / std::sqrt(t); }),
          m};
}

WhiteningTransform fit_pca(const MomentSummary & m)
{
  const EigenDecomposition eig = positive_definite_eigen(m.covariance, "covariance");
  const Vector scale = eig.values.unaryExpr([](double t) { return 1.0 / std::sqrt(t); });
  return {WhiteningMethod::pca, scale.asDiagonal() * eig.vectors.transpose(), m};
}

WhiteningTransform fit_cholesky(const MomentSummary & m)
{
  const Matrix c = cholesky_lower(m.covariance);
  const Index d = c.rows();
  Matrix w = c.triangularView<Eigen::Lower>().solve(Matrix::Identity(d, d));
  w.triangularView<Eigen::StrictlyUpper>().setZero();
  return {WhiteningMethod::cholesky, std::move(w), m};
}

WhiteningTransform fit_zca_cor(const MomentSummary & m)
{
  if (m.degenerate_component) {
    throw NumericalError(
      "component " + std::to_string(*m.degenerate_component) + " has zero variance");
  }
  const EigenDecomposition eig = positive_definite_eigen(m.correlation, "correlation matrix");
  const Matrix inv_sqrt_p = spectral_function(eig, [](double t) { return 1.0 / std::sqrt(t); });
  const Vector inv_sd = m.variances.unaryExpr([](double v) { return 1.0 / std::sqrt(v); });
  return {WhiteningMethod::zca_cor, inv_sqrt_p * inv_sd.asDiagonal(), m};
}

WhiteningTransform fit(WhiteningMethod method, const MomentSummary & m)
{
  switch (method) {
    case WhiteningMethod::zca:
      return fit_zca(m);
    case WhiteningMethod::pca:
      return fit_pca(m);
    case WhiteningMethod::cholesky:
      return fit_cholesky(m);
    case WhiteningMethod::zca_cor:
      return fit_zca_cor(m);
  }
  throw std::invalid_argument("unknown whitening method");
}

WeightedSample apply(const WhiteningTransform & t, const WeightedSample & s)
{
  if (s.dim() != t.dim()) {
    throw std::invalid_argument(
      "whitening transform has dimension " + std::to_string(t.dim()) + ", sample has " +
      std::to_string(s.dim()));
  }
  return s.transformed(t.matrix);
}

double whiteness_residual(const WhiteningTransform & t)
{
  const Matrix & w = t.matrix;
  const Matrix white = w * t.fitted_moments.covariance * w.transpose();
  return (white - Matrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
}

double inverse_residual(const WhiteningTransform & t)
{
  const Matrix inv = t.fitted_moments.covariance.inverse();
  const Matrix gram = t.matrix.transpose() * t.matrix;
  return (gram - inv).cwiseAbs().maxCoeff() / inv.cwiseAbs().maxCoeff();
}

Negativity find_negative_entries(const WeightedSample & s, double tolerance)
{
  Negativity out;
  const Matrix & x = s.points();
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index a = 0; a < x.rows(); ++a) {
      if (x(a, j) < out.worst) {
        out.worst = x(a, j);
        out.point = a;
        out.component = j;
      }
    }
  }
  out.any = out.worst < -tolerance;
  if (!out.any) {
    out = Negativity{};
  }
  return out;
}

double scale_stability_check(WhiteningMethod method, const WeightedSample & s, const Vector & q)
{
  if (q.size() != s.dim()) {
    throw std::invalid_argument("scale vector has wrong dimension");
  }
  for (Index i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0.0) || !std::isfinite(q[i])) {
      throw std::invalid_argument("scale factors must be positive and finite");
    }
  }
  const WeightedSample rescaled = s.scaled(q);
  const WeightedSample base = apply(fit(method, moments(s)), s);
  const WeightedSample other = apply(fit(method, moments(rescaled)), rescaled);
  return (base.points() - other.points()).cwiseAbs().maxCoeff();
}

}  // namespace mvgini
