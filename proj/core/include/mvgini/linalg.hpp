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

#ifndef MVGINI__LINALG_HPP_
#define MVGINI__LINALG_HPP_

#include "mvgini/types.hpp"

namespace mvgini
{

/// Relative threshold for positive-definiteness. A Cholesky pivot at or below
/// this fraction of its own diagonal entry, or an eigenvalue at or below this
/// fraction of the largest one, counts as singular.
inline constexpr double kPositiveDefiniteRelTol = 1e-12;

/// Spectral decomposition A = V·diag(values)·Vᵀ of a symmetric matrix.
///
/// Eigenvalues are in descending order. Eigenvectors are the columns of
/// `vectors`; each is signed so that its entry of largest magnitude is
/// positive (the lowest index wins ties).
struct EigenDecomposition
{
  Vector values;
  Matrix vectors;
};

/// Throws std::invalid_argument if `matrix` is not square and symmetric within
/// 1e-10 (relative to its largest entry), NumericalError if the solver fails.
EigenDecomposition sym_eigen(const Matrix & matrix);

/// Lower-triangular C with positive diagonal and C·Cᵀ = matrix.
///
/// Throws NumericalError naming the first pivot that falls at or below
/// kPositiveDefiniteRelTol times the matching diagonal entry.
Matrix cholesky_lower(const Matrix & matrix);

/// V·diag(f(values))·Vᵀ.
template <typename F>
Matrix spectral_function(const EigenDecomposition & eig, F && f)
{
  const Vector mapped = eig.values.unaryExpr(std::forward<F>(f));
  return eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
}

}  // namespace mvgini

#endif  // MVGINI__LINALG_HPP_
