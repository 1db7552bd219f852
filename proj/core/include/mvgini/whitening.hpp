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

#ifndef MVGINI__WHITENING_HPP_
#define MVGINI__WHITENING_HPP_

#include <optional>
#include <string_view>

#include "mvgini/sample.hpp"
#include "mvgini/types.hpp"

namespace mvgini
{

enum class WhiteningMethod { zca, pca, cholesky, zca_cor };

std::string_view to_string(WhiteningMethod method);
/// Accepts "zca", "pca", "cholesky", "zca-cor" and "zca_cor".
std::optional<WhiteningMethod> parse_whitening_method(std::string_view name);

/// True for the methods whose output is unchanged under positive diagonal
/// rescaling of the input (cholesky, zca_cor).
bool is_scale_stable(WhiteningMethod method);

/// A fitted whitening matrix W with W·Σ·Wᵀ = I and Wᵀ·W = Σ⁻¹.
struct WhiteningTransform
{
  WhiteningMethod method;
  Matrix matrix;
  MomentSummary fitted_moments;

  Index dim() const noexcept { return matrix.rows(); }
  Vector apply(const Vector & x) const { return matrix * x; }
};

/// Σ^{-1/2}, the symmetric inverse square root of the covariance.
WhiteningTransform fit_zca(const MomentSummary & m);
/// Θ^{-1/2}·Zᵀ where Σ = Z·Θ·Zᵀ under the sym_eigen sign convention.
WhiteningTransform fit_pca(const MomentSummary & m);
/// C⁻¹ where Σ = C·Cᵀ; lower triangular with positive diagonal.
WhiteningTransform fit_cholesky(const MomentSummary & m);
/// P^{-1/2}·V^{-1/2} with the symmetric root of the correlation matrix.
WhiteningTransform fit_zca_cor(const MomentSummary & m);

WhiteningTransform fit(WhiteningMethod method, const MomentSummary & m);

/// Maps every support point through t.matrix; weights are unchanged.
WeightedSample apply(const WhiteningTransform & t, const WeightedSample & s);

/// Max-abs entry of W·Σ·Wᵀ − I.
double whiteness_residual(const WhiteningTransform & t);
/// Max-abs entry of Wᵀ·W − Σ⁻¹ divided by the max-abs entry of Σ⁻¹.
double inverse_residual(const WhiteningTransform & t);

/// Most negative entry of a (whitened) sample.
struct Negativity
{
  bool any = false;
  double worst = 0.0;
  Index point = -1;
  Index component = -1;
};

/// Reports entries below -tolerance.
Negativity find_negative_entries(const WeightedSample & s, double tolerance = 1e-9);

/// max over the support of |S(Q·X) − S(X)|, each whitening fitted on its own
/// sample moments, Q = diag(q).
double scale_stability_check(WhiteningMethod method, const WeightedSample & s, const Vector & q);

}  // namespace mvgini

#endif  // MVGINI__WHITENING_HPP_
