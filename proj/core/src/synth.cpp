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

#include "mvgini/synth.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include <Eigen/QR>
#include <fmt/format.h>

#include "mvgini/linalg.hpp"

namespace mvgini::synth
{

double uniform01(Rng & rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng & rng)
{
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

WeightedSample gen_gaussian(const Vector & mean, const Matrix & cov, Index n, std::uint64_t seed)
{
  if (n < 2) {
    throw std::invalid_argument("gen_gaussian needs n >= 2");
  }
  if (cov.rows() != mean.size()) {
    throw std::invalid_argument("covariance shape does not match mean");
  }
  const Matrix c = cholesky_lower(cov);
  const Index d = mean.size();
  Rng rng(seed);
  Matrix z(n, d);
  for (Index a = 0; a < n; ++a) {
    for (Index i = 0; i < d; ++i) {
      z(a, i) = standard_normal(rng);
    }
  }
  Matrix points = z * c.transpose();
  points.rowwise() += mean.transpose();
  return WeightedSample(std::move(points));
}

namespace
{

// Product measure of d iid coordinates with two-point marginal {lo, hi}.
WeightedSample two_point_product(double lo, double hi, double p_hi, int d)
{
  if (d < 1 || d > kMaxProductDim) {
    throw std::invalid_argument(
      "product dimension must be between 1 and " + std::to_string(kMaxProductDim));
  }
  const Index count = Index{1} << d;
  Matrix points(count, d);
  Vector weights(count);
  for (Index k = 0; k < count; ++k) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      const bool high = ((k >> i) & 1) != 0;
      points(k, i) = high ? hi : lo;
      w *= high ? p_hi : 1.0 - p_hi;
    }
    weights[k] = w;
  }
  return WeightedSample(std::move(points), std::move(weights));
}

}  // namespace

WeightedSample gen_shifted_coins(double shift, int d)
{
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    throw std::invalid_argument("shift must be finite and non-negative");
  }
  return two_point_product(shift, 2.0 + shift, 0.5, d);
}

WeightedSample gen_sparse_two_point(double p, int d)
{
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("p must lie in (0, 1)");
  }
  return two_point_product(0.0, 1.0 / (std::sqrt(p) * (1.0 - p)), p, d);
}

WeightedSample design_sample(const Vector & mean, const Matrix & cov)
{
  const Matrix c = cholesky_lower(cov);
  const Index d = mean.size();
  if (d > kMaxProductDim) {
    throw std::invalid_argument("design sample dimension too large");
  }
  const Index count = Index{1} << d;
  Matrix points(count, d);
  for (Index k = 0; k < count; ++k) {
    Vector s(d);
    for (Index i = 0; i < d; ++i) {
      s[i] = ((k >> i) & 1) != 0 ? 1.0 : -1.0;
    }
    points.row(k) = (mean + c * s).transpose();
  }
  return WeightedSample(std::move(points));
}

double brute_force_gini_p(const WeightedSample & s, double p, const WhiteningTransform & t)
{
  if (s.size() > kBruteForceCap) {
    throw std::invalid_argument("brute-force oracle is capped at 2000 points");
  }
  if (!(p >= 1.0)) {
    throw std::invalid_argument("p must be >= 1");
  }
  const Index n = s.size();
  const Index d = s.dim();
  const Matrix & x = s.points();
  const Vector & w = s.weights();
  const Matrix & wm = t.matrix;

  auto norm_of = [&](const Vector & v) {
    double acc = 0.0;
    for (Index i = 0; i < d; ++i) {
      const double a = std::abs(v[i]);
      if (std::isinf(p)) {
        acc = std::max(acc, a);
      } else {
        acc += std::pow(a, p);
      }
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
  };

  double integral = 0.0;
  Vector diff(d);
  Vector white(d);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index i = 0; i < d; ++i) {
        diff[i] = x(a, i) - x(b, i);
      }
      for (Index i = 0; i < d; ++i) {
        double acc = 0.0;
        for (Index j = 0; j < d; ++j) {
          acc += wm(i, j) * diff[j];
        }
        white[i] = acc;
      }
      integral += w[a] * w[b] * norm_of(white);
    }
  }

  Vector mean = Vector::Zero(d);
  for (Index a = 0; a < n; ++a) {
    for (Index i = 0; i < d; ++i) {
      mean[i] += w[a] * x(a, i);
    }
  }
  Vector white_mean(d);
  for (Index i = 0; i < d; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < d; ++j) {
      acc += wm(i, j) * mean[j];
    }
    white_mean[i] = acc;
  }
  return integral / (2.0 * norm_of(white_mean));
}

double brute_force_gini_1d(const Vector & values, const Vector & weights)
{
  const Index n = values.size();
  double total = 0.0;
  double mean = 0.0;
  for (Index a = 0; a < n; ++a) {
    total += weights[a];
    mean += weights[a] * values[a];
  }
  mean /= total;
  double sum = 0.0;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      sum += weights[a] * weights[b] * std::abs(values[a] - values[b]);
    }
  }
  return sum / (total * total) / (2.0 * std::abs(mean));
}

namespace
{

Vector vec2(double a, double b)
{
  Vector v(2);
  v << a, b;
  return v;
}

Matrix mat2(double a, double b, double c, double d)
{
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

PcaCounterexample pca_counterexample()
{
  const Vector q = vec2(2.0, 1.0);
  const Vector mean = vec2(1.0, 1.0);
  const Matrix cov = mat2(4.0, -2.0, -2.0, 3.0);
  WeightedSample base = design_sample(mean, cov);
  WeightedSample scaled = base.scaled(q);

  return PcaCounterexample{
    .q = q,
    .base_moments = moments_from(mean, cov),
    .scaled_moments =
      moments_from(q.asDiagonal() * mean, q.asDiagonal() * cov * q.asDiagonal()),
    .base_sample = std::move(base),
    .scaled_sample = std::move(scaled),
    .rounded_base_eigenvalues = vec2(5.56, 1.44),
    .rounded_scaled_eigenvalues = vec2(17.13, 1.87),
    .rounded_base_eigenvectors = mat2(0.78, -0.61, 0.61, 0.78),
    .rounded_scaled_eigenvectors = mat2(0.96, -0.27, 0.27, 0.96),
    .rounded_base_pca = mat2(0.33, -0.26, 0.51, 0.66),
    .rounded_scaled_pca = mat2(0.23, -0.06, 0.20, 0.71),
    .rounded_base_whitened_mean = vec2(0.07, 1.17),
    .rounded_scaled_whitened_mean = vec2(0.40, 1.11),
    .sources =
      {
        "moments, q: reference worked example (exact)",
        "eigenvalues, eigenvectors, whitening matrices, whitened means: reference values, rounded to "
        "2 decimals",
        "samples: derived 4-point Cholesky design realizing the moments exactly",
      },
  };
}

Matrix random_spd(Rng & rng, Index d)
{
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      a(i, j) = standard_normal(rng);
    }
  }
  Matrix spd = a.transpose() * a / static_cast<double>(d);
  spd.diagonal().array() += 0.25;
  return 0.5 * (spd + spd.transpose());
}

Matrix random_orthogonal(Rng & rng, Index d)
{
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      a(i, j) = standard_normal(rng);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

WeightedSample random_sample(Rng & rng, Index n, Index d)
{
  Vector scales(d);
  Vector mean(d);
  for (Index i = 0; i < d; ++i) {
    scales[i] = std::pow(10.0, 2.0 * uniform01(rng) - 1.0);
    mean[i] = scales[i] * (0.5 + 3.0 * uniform01(rng));
  }
  const Matrix cov = scales.asDiagonal() * random_spd(rng, d) * scales.asDiagonal();
  const Matrix c = cholesky_lower(cov);
  Matrix points(n, d);
  for (Index a = 0; a < n; ++a) {
    Vector z(d);
    for (Index i = 0; i < d; ++i) {
      z[i] = standard_normal(rng);
    }
    points.row(a) = (mean + c * z).transpose();
  }
  return WeightedSample(std::move(points));
}

WeightedSample random_nonnegative_sample(Rng & rng, Index n, Index d)
{
  Matrix mix(d, d);
  Vector scales(d);
  for (Index i = 0; i < d; ++i) {
    scales[i] = std::pow(10.0, 4.0 * uniform01(rng) - 2.0);
    for (Index j = 0; j < d; ++j) {
      mix(i, j) = i == j ? 1.0 : 0.5 * uniform01(rng);
    }
  }
  Matrix points(n, d);
  Vector weights(n);
  for (Index a = 0; a < n; ++a) {
    Vector source(d);
    for (Index j = 0; j < d; ++j) {
      // Alternate exponential and uniform sources.
      source[j] = (j % 2 == 0) ? -std::log(1.0 - uniform01(rng)) : uniform01(rng);
    }
    points.row(a) = (scales.asDiagonal() * (mix * source)).transpose();
    weights[a] = 0.5 + uniform01(rng);
  }
  return WeightedSample(std::move(points), std::move(weights));
}

void export_csv(
  const WeightedSample & s, const std::vector<std::string> & columns,
  const std::filesystem::path & path, Index max_rows)
{
  if (static_cast<Index>(columns.size()) != s.dim()) {
    throw std::invalid_argument("column name count does not match sample dimension");
  }
  const Vector & w = s.weights();
  const Index n = s.size();

  std::vector<Index> repeats(static_cast<std::size_t>(n), 1);
  const bool uniform = (w.array() == w[0]).all();
  if (!uniform) {
    bool found = false;
    for (Index total = 1; total <= max_rows && !found; ++total) {
      found = true;
      Index rows = 0;
      for (Index a = 0; a < n; ++a) {
        const double exact = w[a] * static_cast<double>(total);
        const double rounded = std::round(exact);
        if (std::abs(exact - rounded) > 1e-9 * static_cast<double>(total)) {
          found = false;
          break;
        }
        repeats[static_cast<std::size_t>(a)] = static_cast<Index>(rounded);
        rows += static_cast<Index>(rounded);
      }
      found = found && rows == total;
    }
    if (!found) {
      throw DataError("sample weights are not representable with at most " + std::to_string(max_rows) + " rows");
    }
  }

  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open " + path.string() + " for writing");
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i == 0 ? "" : ",") << columns[i];
  }
  out << '\n';
  for (Index a = 0; a < n; ++a) {
    std::string row;
    for (Index i = 0; i < s.dim(); ++i) {
      row += fmt::format("{}{:.17g}", i == 0 ? "" : ",", s.points()(a, i));
    }
    for (Index r = 0; r < repeats[static_cast<std::size_t>(a)]; ++r) {
      out << row << '\n';
    }
  }
  if (!out) {
    throw DataError("failed writing " + path.string());
  }
}

}  // namespace mvgini::synth
