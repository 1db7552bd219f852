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

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mvgini/gini.hpp"
#include "mvgini/ingest.hpp"
#include "mvgini/linalg.hpp"
#include "mvgini/synth.hpp"
#include "mvgini/whitening.hpp"
#include "test_support.hpp"

namespace mvgini
{
namespace
{

using test::max_abs_diff;

TEST(GenGaussian, DeterministicForSeed)
{
  Vector mean = Vector::Ones(2);
  Matrix cov(2, 2);
  cov << 4, -2, -2, 3;
  const WeightedSample a = synth::gen_gaussian(mean, cov, 100, 42);
  const WeightedSample b = synth::gen_gaussian(mean, cov, 100, 42);
  const WeightedSample c = synth::gen_gaussian(mean, cov, 100, 43);
  EXPECT_EQ(a.points(), b.points());
  EXPECT_NE(a.points(), c.points());
  EXPECT_THROW(synth::gen_gaussian(mean, cov, 1, 1), std::invalid_argument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = -1;
  EXPECT_THROW(synth::gen_gaussian(mean, bad, 10, 1), NumericalError);
}

TEST(GenGaussian, MomentConvergence)
{
  const WeightedSample big = synth::gen_gaussian(Vector::Ones(3), Matrix::Identity(3, 3), 1000000, 1);
  EXPECT_LT(max_abs_diff(moments(big).mean, Vector::Ones(3)), 0.005);

  Matrix cov(2, 2);
  cov << 4, -2, -2, 3;
  const WeightedSample s = synth::gen_gaussian(Vector::Ones(2), cov, 100000, 2);
  EXPECT_LT(max_abs_diff(moments(s).covariance, cov), 0.05);
}

TEST(GenShiftedCoins, Construction)
{
  const WeightedSample one = synth::gen_shifted_coins(0.0, 1);
  ASSERT_EQ(one.size(), 2);
  EXPECT_DOUBLE_EQ(one.points()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(one.points()(1, 0), 2.0);
  EXPECT_DOUBLE_EQ(one.weights()[0], 0.5);

  const MomentSummary m = moments(synth::gen_shifted_coins(0.0, 2));
  EXPECT_LT(max_abs_diff(m.covariance, Matrix::Identity(2, 2)), 1e-15);

  for (const double shift : {0.0, 0.3, 7.0}) {
    for (const int d : {1, 4, 12}) {
      const WeightedSample s = synth::gen_shifted_coins(shift, d);
      EXPECT_EQ(s.size(), Index{1} << d);
      const MomentSummary mm = moments(s);
      EXPECT_LT(max_abs_diff(mm.mean, Vector::Constant(d, 1.0 + shift)), 1e-12);
      EXPECT_LT(max_abs_diff(mm.covariance, Matrix::Identity(d, d)), 1e-12);
    }
  }
  EXPECT_THROW(synth::gen_shifted_coins(0.0, 13), std::invalid_argument);
  EXPECT_THROW(synth::gen_shifted_coins(-1.0, 2), std::invalid_argument);
}

TEST(GenSparseTwoPoint, Construction)
{
  // p = 1/2: high value 1 / (sqrt(.5) * .5) = 2 sqrt(2), mean sqrt(2),
  // variance (2 sqrt 2)^2 / 4 = 2 = 1 / (1 - p).
  const WeightedSample half = synth::gen_sparse_two_point(0.5, 1);
  EXPECT_NEAR(half.points()(1, 0), 2.0 * std::sqrt(2.0), 1e-15);
  const MomentSummary mh = moments(half);
  EXPECT_NEAR(mh.mean[0], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(mh.covariance(0, 0), 2.0, 1e-14);

  for (const double p : {0.01, 0.2, 0.7}) {
    for (const int d : {1, 3, 6}) {
      const MomentSummary m = moments(synth::gen_sparse_two_point(p, d));
      EXPECT_LT(max_abs_diff(m.mean, Vector::Constant(d, std::sqrt(p) / (1 - p))), 1e-12);
      EXPECT_LT(
        max_abs_diff(m.covariance, Matrix::Identity(d, d) / (1 - p)), 1e-12 / (1 - p));
    }
    EXPECT_NEAR(gini_1d(synth::gen_sparse_two_point(p, 1).column(0), synth::gen_sparse_two_point(p, 1).weights()), 1 - p, 1e-14);
  }
  EXPECT_NEAR(gini_p(synth::gen_sparse_two_point(0.01, 3), 1.0).value, 0.99, 1e-12);
  EXPECT_THROW(synth::gen_sparse_two_point(1.0, 2), std::invalid_argument);
  EXPECT_THROW(synth::gen_sparse_two_point(0.5, 0), std::invalid_argument);
}

TEST(BruteForce, KnownValues)
{
  Matrix pts(3, 2);
  pts << 2, 5, 2, 5, 2, 5;
  const WhiteningTransform id{WhiteningMethod::zca, Matrix::Identity(2, 2), moments_from(Vector::Ones(2), Matrix::Identity(2, 2))};
  EXPECT_DOUBLE_EQ(synth::brute_force_gini_p(make_sample(pts), 1.0, id), 0.0);

  for (const double p : {0.1, 0.6}) {
    const WeightedSample s = synth::gen_sparse_two_point(p, 1);
    EXPECT_NEAR(synth::brute_force_gini_p(s, 2.0, fit_zca_cor(moments(s))), 1 - p, 1e-14);
  }
  EXPECT_THROW(synth::brute_force_gini_p(synth::gen_shifted_coins(0, 11), 1.0, fit_zca_cor(moments(synth::gen_shifted_coins(0, 11)))), std::invalid_argument);
}

TEST(BruteForce, AgreesWithExactEstimator)
{
  synth::Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 1 + static_cast<Index>(rng() % 4);
    const WeightedSample s = synth::random_nonnegative_sample(rng, 10 + static_cast<Index>(rng() % 80), d);
    const double p = trial % 3 == 0 ? 1.0 : (trial % 3 == 1 ? 2.0 : 3.0);
    const double oracle = synth::brute_force_gini_p(s, p, fit_zca_cor(moments(s)));
    EXPECT_LE(test::rel_err(gini_p(s, p).value, oracle), 1e-12);
  }
}

TEST(PcaCounterexample, ReferenceNumbers)
{
  const auto fx = synth::pca_counterexample();
  EXPECT_EQ(fx.sources.size(), 3u);

  const EigenDecomposition base = sym_eigen(fx.base_moments.covariance);
  const EigenDecomposition scaled = sym_eigen(fx.scaled_moments.covariance);
  EXPECT_LT(max_abs_diff(base.values, fx.rounded_base_eigenvalues), 0.005);
  EXPECT_LT(max_abs_diff(scaled.values, fx.rounded_scaled_eigenvalues), 0.005);
  EXPECT_LT(max_abs_diff(base.vectors.cwiseAbs(), fx.rounded_base_eigenvectors.cwiseAbs()), 0.01);
  EXPECT_LT(max_abs_diff(scaled.vectors.cwiseAbs(), fx.rounded_scaled_eigenvectors.cwiseAbs()), 0.01);

  // Printed arithmetic: diag(θ^{-1/2}) times the printed eigenvector matrix.
  const Matrix rebuilt_base = fx.rounded_base_eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                              fx.rounded_base_eigenvectors;
  EXPECT_LT(max_abs_diff(rebuilt_base, fx.rounded_base_pca), 0.011);
  const Matrix rebuilt_scaled = fx.rounded_scaled_eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                                fx.rounded_scaled_eigenvectors;
  EXPECT_LT(max_abs_diff(rebuilt_scaled, fx.rounded_scaled_pca), 0.011);

  // The quoted matrices are nonetheless the correct Θ^{-1/2}·Zᵀ: the quoted
  // vectors are the rows of the true Zᵀ, so the two slips cancel.
  EXPECT_LT(max_abs_diff(fit_pca(fx.base_moments).matrix, fx.rounded_base_pca), 0.006);
  EXPECT_LT(max_abs_diff(fit_pca(fx.scaled_moments).matrix, fx.rounded_scaled_pca), 0.006);

  EXPECT_LT(max_abs_diff(fx.rounded_base_pca * fx.base_moments.mean, fx.rounded_base_whitened_mean), 0.005);
  EXPECT_LT(max_abs_diff(fx.rounded_scaled_pca * fx.scaled_moments.mean, fx.rounded_scaled_whitened_mean), 0.005);
}

TEST(PcaCounterexample, SamplesRealizeMoments)
{
  const auto fx = synth::pca_counterexample();
  const MomentSummary b = moments(fx.base_sample);
  const MomentSummary s = moments(fx.scaled_sample);
  EXPECT_LT(max_abs_diff(b.mean, fx.base_moments.mean), 1e-14);
  EXPECT_LT(max_abs_diff(b.covariance, fx.base_moments.covariance), 1e-13);
  EXPECT_LT(max_abs_diff(s.mean, fx.scaled_moments.mean), 1e-14);
  EXPECT_LT(max_abs_diff(s.covariance, fx.scaled_moments.covariance), 1e-13);
}

TEST(ExportCsv, ReplicatesWeightsExactly)
{
  test::ScratchDir dir("export");
  const WeightedSample s = synth::gen_sparse_two_point(0.2, 3);
  synth::export_csv(s, {"a", "b", "c"}, dir / "c2.csv");
  // Weights are multiples of 1/125.
  const Dataset data = load_csv(dir / "c2.csv", {"a", "b", "c"}, "", "", CleaningRule::non_negative);
  EXPECT_EQ(data.total_rows, 125);
  EXPECT_EQ(data.dropped, 0);
  // The default rule drops every row containing a zero coordinate.
  const Dataset strict = load_csv(dir / "c2.csv", {"a", "b", "c"});
  EXPECT_EQ(strict.dropped, 124);
  EXPECT_EQ(strict.records.size(), 1u);

  Matrix pts3(data.total_rows, 3);
  for (std::size_t a = 0; a < data.records.size(); ++a) {
    pts3.row(static_cast<Index>(a)) = data.records[a].metrics.transpose();
  }
  EXPECT_NEAR(gini_1_decomposed(make_sample(pts3)).value, 0.8, 1e-10);

  EXPECT_THROW(synth::export_csv(s, {"a", "b"}, dir / "x.csv"), std::invalid_argument);
  Vector w(2);
  w << 1.0, std::sqrt(2.0);
  Matrix pts(2, 1);
  pts << 1, 2;
  EXPECT_THROW(synth::export_csv(make_sample(pts, w), {"a"}, dir / "y.csv", 1000), DataError);
}

TEST(ExportCsv, UniformSampleOneRowPerPoint)
{
  test::ScratchDir dir("export-uniform");
  synth::Rng rng(3);
  const WeightedSample s = synth::random_sample(rng, 50, 2);
  synth::export_csv(s, {"x", "y"}, dir / "u.csv");
  std::ifstream in(dir / "u.csv");
  const CsvTable t = parse_csv(in);
  ASSERT_EQ(t.rows.size(), 50u);
  EXPECT_EQ(std::stod(t.rows[7][1]), s.points()(7, 1));
}

}  // namespace
}  // namespace mvgini
