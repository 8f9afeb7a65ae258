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

#include <cmath>

#include "frot/measures.hpp"
#include "test_helpers.hpp"

using frot::Matrix;
using frot::Vector;

TEST(GroupedMeasure, DefaultsToOneGroupPerFeatureAndUniformWeights) {
  Matrix x(3, 2);
  x << 0, 1, 2, 3, 4, 5;
  const auto m = frot::build_grouped_measure(x);
  EXPECT_EQ(m.num_groups(), 2u);
  EXPECT_EQ(m.group_widths(), (std::vector<std::size_t>{1, 1}));
  EXPECT_NEAR(m.weights().sum(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(m.weights()[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.group_slice(2, 1)[0], 5.0);
}

TEST(GroupedMeasure, GroupWidthsMustCoverDimension) {
  Matrix x = Matrix::Zero(2, 3);
  x(1, 0) = 1;
  EXPECT_THROW(frot::build_grouped_measure(x, std::vector<std::size_t>{1, 1}),
               frot::ValidationError);
  EXPECT_THROW(frot::build_grouped_measure(x, std::vector<std::size_t>{3, 0}),
               frot::ValidationError);
  const auto m = frot::build_grouped_measure(x, std::vector<std::size_t>{2, 1});
  EXPECT_EQ(m.groups()[1].begin, 2u);
  EXPECT_EQ(m.groups()[1].end(), 3u);
}

TEST(GroupedMeasure, RejectsBadWeights) {
  Matrix x(2, 1);
  x << 0, 1;
  Vector neg(2);
  neg << 1.5, -0.5;
  EXPECT_THROW(frot::build_grouped_measure(x, std::nullopt, neg),
               frot::ValidationError);
  EXPECT_THROW(frot::build_grouped_measure(x, std::nullopt, Vector::Zero(2)),
               frot::ValidationError);
  EXPECT_THROW(frot::build_grouped_measure(x, std::nullopt, Vector::Ones(3)),
               frot::ValidationError);
  Matrix bad = x;
  bad(0, 0) = std::nan("");
  EXPECT_THROW(frot::build_grouped_measure(bad), frot::ValidationError);
  EXPECT_THROW(frot::build_grouped_measure(Matrix(0, 2)), frot::ValidationError);
}

TEST(GroupedMeasure, MergesDuplicatesAndDropsZeroWeights) {
  Matrix x(4, 1);
  x << 1, 2, 1, 3;
  Vector w(4);
  w << 0.25, 0.25, 0.25, 0.0;
  const auto m = frot::build_grouped_measure(x, std::nullopt, w);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m.weights()[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.weights()[1], 1.0 / 3.0);
  EXPECT_EQ(m.source_rows(), (std::vector<std::size_t>{0, 1}));
}

TEST(GroupedMeasure, EqualUpToPermutation) {
  Matrix x(3, 2);
  x << 0, 1, 2, 3, 4, 5;
  Matrix y = x;
  y.row(0).swap(y.row(2));
  EXPECT_TRUE(frot::measures_equal_up_to_permutation(
      frot::build_grouped_measure(x), frot::build_grouped_measure(y)));
  y(0, 0) += 1e-3;
  EXPECT_FALSE(frot::measures_equal_up_to_permutation(
      frot::build_grouped_measure(x), frot::build_grouped_measure(y)));
  EXPECT_FALSE(frot::measures_equal_up_to_permutation(
      frot::build_grouped_measure(x),
      frot::build_grouped_measure(x, std::vector<std::size_t>{2})));
}

TEST(GroupedCost, PerGroupMatricesMatchDirectFormulas) {
  std::mt19937_64 gen(3);
  const std::vector<std::size_t> widths{2, 1, 3};
  const auto src = testutil::random_measure(gen, 4, widths);
  const auto dst = testutil::random_measure(gen, 5, widths);
  for (auto kind : {frot::CostKind::squared_euclidean, frot::CostKind::euclidean,
                    frot::CostKind::l1, frot::CostKind::cosine_normalized}) {
    const auto costs = frot::build_grouped_cost(src, dst, kind);
    ASSERT_EQ(costs.num_groups(), 3u);
    for (std::size_t l = 0; l < 3; ++l)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) {
          const Vector x = src.group_slice(i, l);
          const Vector y = dst.group_slice(j, l);
          double want = 0;
          switch (kind) {
            case frot::CostKind::squared_euclidean: want = (x - y).squaredNorm(); break;
            case frot::CostKind::euclidean: want = (x - y).norm(); break;
            case frot::CostKind::l1: want = (x - y).lpNorm<1>(); break;
            default:
              want = 2.0 - 2.0 * x.normalized().dot(y.normalized());
              EXPECT_GE(costs[l](i, j), 0.0);
              EXPECT_LE(costs[l](i, j), 4.0);
          }
          EXPECT_NEAR(costs[l](i, j), want, 1e-12);
        }
  }
}

TEST(GroupedCost, TotalAndWeightedSum) {
  Matrix a(1, 2), b(1, 2);
  a << 1, 2;
  b << 3, 5;
  const auto c = frot::GroupedCost::from_matrices({a, b});
  EXPECT_EQ(c.total(), (Matrix(1, 2) << 4, 7).finished());
  Vector w(2);
  w << 0.5, 2.0;
  EXPECT_EQ(c.weighted_sum(w), (Matrix(1, 2) << 6.5, 11).finished());
  EXPECT_THROW(c.weighted_sum(Vector::Ones(3)), frot::ValidationError);
}

TEST(GroupedCost, Validation) {
  EXPECT_THROW(frot::GroupedCost::from_matrices({}), frot::ValidationError);
  EXPECT_THROW(frot::GroupedCost::from_matrices({Matrix::Ones(2, 2), Matrix::Ones(2, 3)}),
               frot::ValidationError);
  EXPECT_THROW(frot::GroupedCost::from_matrices({-Matrix::Ones(2, 2)}),
               frot::ValidationError);
  Matrix inf = Matrix::Ones(2, 2);
  inf(0, 1) = INFINITY;
  EXPECT_THROW(frot::GroupedCost::from_matrices({inf}), frot::ValidationError);
}

TEST(GroupedCost, CosineRejectsZeroVectors) {
  Matrix x(2, 1);
  x << 0, 1;
  const auto m = frot::build_grouped_measure(x);
  EXPECT_THROW(frot::build_grouped_cost(m, m, frot::CostKind::cosine_normalized),
               frot::ValidationError);
}

TEST(GroupedCost, StructureMismatchIsRejected) {
  const auto a = frot::build_grouped_measure(Matrix::Identity(2, 2));
  const auto b = frot::build_grouped_measure(Matrix::Identity(2, 2),
                                             std::vector<std::size_t>{2});
  EXPECT_THROW(frot::build_grouped_cost(a, b, frot::CostKind::l1),
               frot::ValidationError);
}

TEST(CostKind, RoundTripsNames) {
  for (auto k : {frot::CostKind::squared_euclidean, frot::CostKind::euclidean,
                 frot::CostKind::l1, frot::CostKind::cosine_normalized})
    EXPECT_EQ(frot::parse_cost_kind(frot::to_string(k)), k);
  EXPECT_THROW(frot::parse_cost_kind("manhattan2"), frot::ValidationError);
}

TEST(TransportPlan, ResidualAndProductCoupling) {
  Vector a(2), b(3);
  a << 0.4, 0.6;
  b << 0.2, 0.3, 0.5;
  const Matrix p = frot::product_coupling(a, b);
  EXPECT_NEAR(frot::marginal_residual(p, a, b), 0.0, 1e-15);
  Matrix q = p;
  q(0, 0) += 0.1;
  const auto plan = frot::TransportPlan::from_matrix(q, a, b);
  EXPECT_NEAR(plan.marginal_residual, 0.1, 1e-15);
  EXPECT_NEAR(plan.total_mass(), 1.1, 1e-15);
  EXPECT_THROW(frot::TransportPlan::from_matrix(Matrix::Zero(3, 3), a, b),
               frot::ValidationError);
}

TEST(ProbabilityVector, Checks) {
  Vector w(2);
  w << 0.5, 0.5;
  EXPECT_NO_THROW(frot::require_probability_vector(w, "w"));
  w[0] = 0.6;
  EXPECT_THROW(frot::require_probability_vector(w, "w"), frot::ValidationError);
  EXPECT_THROW(frot::require_probability_vector(Vector(), "w"), frot::ValidationError);
}
