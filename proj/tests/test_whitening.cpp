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

#include <array>
#include <cmath>
#include <tuple>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <gtest/gtest.h>

#include "mvgini/gini.hpp"
#include "mvgini/linalg.hpp"
#include "mvgini/synth.hpp"
#include "mvgini/whitening.hpp"
#include "test_support.hpp"

namespace mvgini
{
namespace
{

using test::max_abs_diff;

constexpr std::array kAllMethods = {
  WhiteningMethod::zca, WhiteningMethod::pca, WhiteningMethod::cholesky, WhiteningMethod::zca_cor};

MomentSummary moments_of(const Matrix & cov)
{
  return moments_from(Vector::Ones(cov.rows()), cov);
}

Matrix diag49()
{
  Matrix m = Matrix::Zero(2, 2);
  m.diagonal() << 4, 9;
  return m;
}

Matrix counterexample_cov()
{
  Matrix m(2, 2);
  m << 4, -2, -2, 3;
  return m;
}

TEST(Whitening, MethodNames)
{
  for (const auto method : kAllMethods) {
    EXPECT_EQ(parse_whitening_method(to_string(method)), method);
  }
  EXPECT_EQ(parse_whitening_method("zca_cor"), WhiteningMethod::zca_cor);
  EXPECT_FALSE(parse_whitening_method("zca-corr"));
  EXPECT_TRUE(is_scale_stable(WhiteningMethod::cholesky));
  EXPECT_TRUE(is_scale_stable(WhiteningMethod::zca_cor));
  EXPECT_FALSE(is_scale_stable(WhiteningMethod::pca));
  EXPECT_FALSE(is_scale_stable(WhiteningMethod::zca));
}

TEST(Whitening, IdentityCovarianceGivesIdentity)
{
  const MomentSummary m = moments_of(Matrix::Identity(3, 3));
  for (const auto method : kAllMethods) {
    EXPECT_LT(max_abs_diff(fit(method, m).matrix, Matrix::Identity(3, 3)), 1e-15)
      << to_string(method);
  }
}

TEST(Whitening, DiagonalCovariance)
{
  Matrix expected = Matrix::Zero(2, 2);
  expected.diagonal() << 0.5, 1.0 / 3.0;
  const MomentSummary m = moments_of(diag49());
  EXPECT_LT(max_abs_diff(fit_zca(m).matrix, expected), 1e-15);
  EXPECT_LT(max_abs_diff(fit_cholesky(m).matrix, expected), 1e-15);
  EXPECT_LT(max_abs_diff(fit_zca_cor(m).matrix, expected), 1e-15);
}

TEST(Whitening, ZcaIsSymmetricAndWhite)
{
  const WhiteningTransform t = fit_zca(moments_of(counterexample_cov()));
  EXPECT_LT(max_abs_diff(t.matrix, t.matrix.transpose()), 1e-12);
  EXPECT_LT(whiteness_residual(t), 1e-10);
}

TEST(Whitening, PcaEigenpairsMatchReferenceMagnitudes)
{
  // The reference eigenvectors are (0.78, 0.61), (-0.61, 0.78) and
  // (0.96, 0.27), (-0.27, 0.96); the true ones differ from these in sign
  // (e.g. (0.788, -0.615)), so only magnitudes are compared, at 2-decimal
  // truncation tolerance.
  for (const auto & [cov, values, vec] : {
         std::tuple{counterexample_cov(), std::array{5.56, 1.44}, std::array{0.78, 0.61}},
         std::tuple{
           Matrix{{16.0, -4.0}, {-4.0, 3.0}}, std::array{17.13, 1.87}, std::array{0.96, 0.27}},
       }) {
    const EigenDecomposition e = sym_eigen(cov);
    EXPECT_NEAR(e.values[0], values[0], 0.005);
    EXPECT_NEAR(e.values[1], values[1], 0.005);
    EXPECT_NEAR(std::abs(e.vectors(0, 0)), vec[0], 0.01);
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), vec[1], 0.01);
    EXPECT_NEAR(std::abs(e.vectors(0, 1)), vec[1], 0.01);
    EXPECT_NEAR(std::abs(e.vectors(1, 1)), vec[0], 0.01);

    const WhiteningTransform t = fit_pca(moments_of(cov));
    const Vector inv_sqrt = e.values.cwiseSqrt().cwiseInverse();
    EXPECT_LT(max_abs_diff(t.matrix, inv_sqrt.asDiagonal() * e.vectors.transpose()), 1e-14);
    EXPECT_LT(whiteness_residual(t), 1e-10);
  }
}

TEST(Whitening, CholeskyIsLowerTriangularInverseFactor)
{
  synth::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 6);
    const Matrix cov = synth::random_spd(rng, d);
    const WhiteningTransform t = fit_cholesky(moments_of(cov));
    for (Index i = 0; i < d; ++i) {
      EXPECT_GT(t.matrix(i, i), 0.0);
      for (Index j = i + 1; j < d; ++j) {
        EXPECT_EQ(t.matrix(i, j), 0.0);
      }
    }
    EXPECT_LT(whiteness_residual(t), 1e-9);
    const Matrix c = cholesky_lower(cov);
    EXPECT_LT(max_abs_diff(t.matrix * c, Matrix::Identity(d, d)), 1e-10);
  }
}

TEST(Whitening, ZcaCorStructure)
{
  synth::Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 6);
    Vector scales(d);
    for (Index i = 0; i < d; ++i) {
      scales[i] = std::pow(10.0, 4.0 * synth::uniform01(rng) - 2.0);
    }
    const Matrix cov = scales.asDiagonal() * synth::random_spd(rng, d) * scales.asDiagonal();
    const WhiteningTransform t = fit_zca_cor(moments_of(cov));
    const Matrix sym = t.matrix * t.fitted_moments.variances.cwiseSqrt().asDiagonal();
    EXPECT_LT(max_abs_diff(sym, sym.transpose()), 1e-10);
    EXPECT_LT(whiteness_residual(t), 1e-9);
  }
}

TEST(Whitening, WhitenessAndInverseIdentityAllMethods)
{
  synth::Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 6);
    const MomentSummary m = moments_of(synth::random_spd(rng, d));
    for (const auto method : kAllMethods) {
      const WhiteningTransform t = fit(method, m);
      EXPECT_LT(whiteness_residual(t), 1e-8) << to_string(method);
      EXPECT_LT(inverse_residual(t), 1e-8) << to_string(method);
    }
  }
}

TEST(Whitening, RotationalFreedom)
{
  synth::Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 6);
    const MomentSummary m = moments_of(synth::random_spd(rng, d));
    const Matrix r = synth::random_orthogonal(rng, d);
    const Matrix rotated = r * fit_zca_cor(m).matrix;
    const Matrix inv = m.covariance.inverse();
    EXPECT_LT(max_abs_diff(rotated.transpose() * rotated, inv), 1e-9 * std::max(1.0, inv.cwiseAbs().maxCoeff()));
  }
}

TEST(Whitening, SingularCovarianceReportsSmallestEigenvalue)
{
  Matrix cov(2, 2);
  cov << 1, 1, 1, 1;
  const MomentSummary m = moments_of(cov);
  for (const auto method : {WhiteningMethod::zca, WhiteningMethod::pca}) {
    try {
      fit(method, m);
      FAIL() << "expected NumericalError";
    } catch (const NumericalError & e) {
      EXPECT_NE(std::string(e.what()).find("smallest eigenvalue"), std::string::npos);
    }
  }
  EXPECT_THROW(fit_cholesky(m), NumericalError);
  EXPECT_THROW(fit_zca_cor(m), NumericalError);
}

TEST(Whitening, ZcaCorNamesZeroVarianceComponent)
{
  Matrix pts(3, 2);
  pts << 1, 5, 2, 5, 3, 5;
  try {
    fit_zca_cor(moments(make_sample(pts)));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError & e) {
    EXPECT_STREQ(e.what(), "component 1 has zero variance");
  }
}

TEST(Whitening, ApplyIdentityAndDimensionMismatch)
{
  synth::Rng rng(45);
  const WeightedSample s = synth::random_sample(rng, 10, 3);
  const WhiteningTransform id{WhiteningMethod::zca, Matrix::Identity(3, 3), moments(s)};
  const WeightedSample out = apply(id, s);
  EXPECT_EQ(out.points(), s.points());
  EXPECT_EQ(out.weights(), s.weights());

  const WhiteningTransform two{WhiteningMethod::zca, Matrix::Identity(2, 2), moments_of(Matrix::Identity(2, 2))};
  EXPECT_THROW(apply(two, s), std::invalid_argument);
}

TEST(Whitening, ApplyWhitensFittedSample)
{
  Vector mean(2);
  mean << 1, 1;
  const WeightedSample s = synth::gen_gaussian(mean, counterexample_cov(), 2000, 5);
  for (const auto method : kAllMethods) {
    const WeightedSample w = apply(fit(method, moments(s)), s);
    EXPECT_LT(max_abs_diff(moments(w).covariance, Matrix::Identity(2, 2)), 1e-8) << to_string(method);
  }
  const WeightedSample design = synth::design_sample(mean, counterexample_cov());
  const WeightedSample wd = apply(fit_zca_cor(moments(design)), design);
  EXPECT_LT(max_abs_diff(moments(wd).covariance, Matrix::Identity(2, 2)), 1e-8);
}

TEST(Whitening, NegativityDiagnostic)
{
  Matrix pts(3, 2);
  pts << 1, 2, -0.5, 3, 0, -2;
  const Negativity neg = find_negative_entries(make_sample(pts));
  EXPECT_TRUE(neg.any);
  EXPECT_DOUBLE_EQ(neg.worst, -2.0);
  EXPECT_EQ(neg.point, 2);
  EXPECT_EQ(neg.component, 1);

  pts << 1, 2, -1e-12, 3, 0, 2;
  EXPECT_FALSE(find_negative_entries(make_sample(pts)).any);
}

TEST(Whitening, ScaleStabilityOfStableMethods)
{
  synth::Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 6);
    const Index n = d + 2 + static_cast<Index>(rng() % 150);
    const WeightedSample s = synth::random_sample(rng, n, d);
    Vector q(d);
    for (Index i = 0; i < d; ++i) {
      q[i] = std::pow(10.0, 6.0 * synth::uniform01(rng) - 3.0);
    }
    for (const auto method : {WhiteningMethod::cholesky, WhiteningMethod::zca_cor}) {
      const WeightedSample white = apply(fit(method, moments(s)), s);
      const double scale = std::max(1.0, white.points().cwiseAbs().maxCoeff());
      EXPECT_LE(scale_stability_check(method, s, q), 1e-9 * scale) << to_string(method);
    }
  }
}

TEST(Whitening, PcaIsNotScaleStableOnCounterexample)
{
  const auto fx = synth::pca_counterexample();
  EXPECT_GT(scale_stability_check(WhiteningMethod::pca, fx.base_sample, fx.q), 0.1);
  EXPECT_LE(scale_stability_check(WhiteningMethod::zca_cor, fx.base_sample, fx.q), 1e-9);
  EXPECT_LE(scale_stability_check(WhiteningMethod::cholesky, fx.base_sample, fx.q), 1e-9);

  // Whitened means differ too.
  const auto base = fit_pca(fx.base_moments);
  const auto scaled = fit_pca(fx.scaled_moments);
  const Vector mb = base.apply(fx.base_moments.mean);
  const Vector ms = scaled.apply(fx.scaled_moments.mean);
  EXPECT_GT((mb - ms).cwiseAbs().maxCoeff(), 0.1);
}

TEST(Whitening, ScaleStabilityRejectsNonPositiveQ)
{
  const auto fx = synth::pca_counterexample();
  Vector q(2);
  q << 1.0, 0.0;
  EXPECT_THROW(scale_stability_check(WhiteningMethod::zca_cor, fx.base_sample, q), std::invalid_argument);
}

TEST(Whitening, EuclideanNormOfWhitenedMeanIsMethodIndependent)
{
  synth::Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 6);
    Vector mean(d);
    for (Index i = 0; i < d; ++i) {
      mean[i] = 4.0 * synth::uniform01(rng) - 1.0;
    }
    const MomentSummary m = moments_from(mean, synth::random_spd(rng, d));
    const double reference = std::sqrt(mean.dot(m.covariance.ldlt().solve(mean)));
    for (const auto method : kAllMethods) {
      EXPECT_LE(std::abs(mahalanobis_norm_p(fit(method, m), mean, 2.0) - reference), 1e-9 * std::max(1.0, reference));
    }
  }
}

}  // namespace
}  // namespace mvgini
