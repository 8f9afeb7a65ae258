// Copyright 2026 The FROT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "frot/feature_select.hpp"
#include "frot/synth.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using frot::Matrix;
using frot::RankingMethod;
using frot::Vector;

namespace {

bool contains_all(const std::vector<std::size_t>& top,
                  const std::vector<std::size_t>& want) {
  return std::all_of(want.begin(), want.end(), [&](std::size_t k) {
    return std::find(top.begin(), top.end(), k) != top.end();
  });
}

}  // namespace

TEST(FeatureSelect, DescendingOrderBreaksTiesLow) {
  Vector s(5);
  s << 0.1, 0.5, 0.5, 0.9, 0.1;
  EXPECT_EQ(frot::descending_order(s), (std::vector<std::size_t>{3, 1, 2, 0, 4}));
  frot::FeatureRanking r;
  r.order = frot::descending_order(s);
  EXPECT_EQ(frot::select_top_k(r, 2), (std::vector<std::size_t>{3, 1}));
  EXPECT_THROW(frot::select_top_k(r, 0), frot::ValidationError);
  EXPECT_THROW(frot::select_top_k(r, 6), frot::ValidationError);
}

TEST(FeatureSelect, FrotFindsShiftedFeatures) {
  frot::LabeledSynthOptions o;
  o.samples_per_class = 40;
  o.dims = 10;
  o.seed = 5;
  const auto data = frot::synth_labeled(o);
  const Matrix c0 = data.rows_with_label(0);
  const Matrix c1 = data.rows_with_label(1);
  const auto r = frot::frot_feature_importance(c0, c1);
  EXPECT_NEAR(r.importances.sum(), 1.0, 1e-12);
  EXPECT_EQ(r.method, RankingMethod::frot);
  EXPECT_TRUE(contains_all(frot::select_top_k(r, 2), data.informative));
  for (auto m : {RankingMethod::wasserstein_sort, RankingMethod::linear_correlation})
    EXPECT_TRUE(contains_all(frot::select_top_k(frot::baseline_rank(c0, c1, m), 2),
                             data.informative));
}

TEST(FeatureSelect, WassersteinBaselineMatchesQuantileOracle) {
  std::mt19937_64 gen(149);
  const Matrix c0 = testutil::gaussian_points(gen, 9, 4);
  const Matrix c1 = testutil::gaussian_points(gen, 6, 4);
  const auto r = frot::baseline_rank(c0, c1, RankingMethod::wasserstein_sort);
  for (int l = 0; l < 4; ++l) {
    std::vector<double> xs(c0.rows()), ys(c1.rows());
    for (int i = 0; i < c0.rows(); ++i) xs[i] = c0(i, l);
    for (int i = 0; i < c1.rows(); ++i) ys[i] = c1(i, l);
    EXPECT_NEAR(r.importances[l], oracle::quantile_wasserstein_pp(xs, ys, 1.0), 1e-12);
  }
}

TEST(FeatureSelect, CorrelationBaselineIsAbsolutePearson) {
  std::mt19937_64 gen(151);
  const Matrix c0 = testutil::gaussian_points(gen, 7, 3);
  const Matrix c1 = testutil::gaussian_points(gen, 5, 3).array() + 0.5;
  const auto r = frot::baseline_rank(c0, c1, RankingMethod::linear_correlation);
  Matrix all(12, 3);
  all << c0, c1;
  Vector y(12);
  y << Vector::Zero(7), Vector::Ones(5);
  for (int l = 0; l < 3; ++l) {
    const Vector x = all.col(l);
    const Vector xc = x.array() - x.mean();
    const Vector yc = y.array() - y.mean();
    EXPECT_NEAR(r.importances[l], std::abs(xc.dot(yc) / (xc.norm() * yc.norm())), 1e-12);
  }
  EXPECT_THROW(frot::baseline_rank(c0, c1, RankingMethod::frot), frot::ValidationError);
}

TEST(FeatureSelect, Validation) {
  EXPECT_THROW(frot::frot_feature_importance(Matrix(0, 2), Matrix::Ones(2, 2)),
               frot::ValidationError);
  EXPECT_THROW(frot::baseline_rank(Matrix::Ones(2, 2), Matrix::Ones(2, 3),
                                   RankingMethod::wasserstein_sort),
               frot::ValidationError);
  EXPECT_THROW(frot::parse_ranking_method("lasso"), frot::ValidationError);
  for (auto m : {RankingMethod::frot, RankingMethod::wasserstein_sort,
                 RankingMethod::linear_correlation})
    EXPECT_EQ(frot::parse_ranking_method(frot::to_string(m)), m);
}

TEST(Standardizer, UsesFittedStatistics) {
  Matrix x(4, 2);
  x << 1, 5, 3, 5, 5, 5, 7, 5;
  const auto s = frot::Standardizer::fit(x);
  EXPECT_DOUBLE_EQ(s.mean[0], 4.0);
  EXPECT_DOUBLE_EQ(s.scale[0], std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(s.scale[1], 1.0);
  const Matrix z = s.apply(x);
  EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
  EXPECT_NEAR(z.col(0).squaredNorm() / 4, 1.0, 1e-14);
  EXPECT_EQ(z.col(1), Vector::Zero(4));
  EXPECT_THROW(s.apply(Matrix::Ones(2, 3)), frot::ValidationError);
  EXPECT_THROW(frot::Standardizer::fit(Matrix(0, 2)), frot::ValidationError);
}
