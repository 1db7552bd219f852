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

#include "mvgini/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace mvgini
{

namespace
{

void require_symmetric(const Matrix & matrix)
{
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw std::invalid_argument("matrix must be square and non-empty");
  }
  if (!matrix.allFinite()) {
    throw std::invalid_argument("matrix contains non-finite values");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (max asymmetry " << asym << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix & matrix)
{
  require_symmetric(matrix);
  const Index d = matrix.rows();
  const Matrix sym = 0.5 * (matrix + matrix.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }

  EigenDecomposition out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  // Eigen returns ascending order; a stable sort keeps tied eigenvalues in solver order.
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return solver.eigenvalues()[a] > solver.eigenvalues()[b];
  });
  for (Index k = 0; k < d; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values[k] = solver.eigenvalues()[src];
    Vector v = solver.eigenvectors().col(src);
    Index lead = 0;
    for (Index i = 1; i < d; ++i) {
      if (std::abs(v[i]) > std::abs(v[lead])) {
        lead = i;
      }
    }
    if (v[lead] < 0.0) {
      v = -v;
    }
    out.vectors.col(k) = v;
  }

  const double residual =
    (out.vectors * out.values.asDiagonal() * out.vectors.transpose() - sym).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  if (!(residual <= 1e-9 * scale)) {
    std::ostringstream msg;
    msg << "symmetric eigensolver reconstruction residual " << residual << " too large";
    throw NumericalError(msg.str());
  }
  return out;
}

Matrix cholesky_lower(const Matrix & matrix)
{
  require_symmetric(matrix);
  const Index d = matrix.rows();
  Matrix c = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    double pivot = matrix(j, j);
    for (Index k = 0; k < j; ++k) {
      pivot -= c(j, k) * c(j, k);
    }
    // Relative to the column's own diagonal so that rescaling coordinates never changes the verdict.
    if (!(pivot > kPositiveDefiniteRelTol * matrix(j, j)) || !(pivot > 0.0)) {
      std::ostringstream msg;
      msg << "matrix is not positive definite: pivot " << j << " is " << pivot;
      throw NumericalError(msg.str());
    }
    const double diag = std::sqrt(pivot);
    c(j, j) = diag;
    for (Index i = j + 1; i < d; ++i) {
      double s = matrix(i, j);
      for (Index k = 0; k < j; ++k) {
        s -= c(i, k) * c(j, k);
      }
      c(i, j) = s / diag;
    }
  }
  return c;
}

}  // namespace mvgini
