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

#include "frot/distances.hpp"
#include "frot/wasserstein_1d.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using frot::GroundDistance;
using frot::Matrix;
using frot::Vector;

TEST(Frwd, SingleGroupEqualsWasserstein) {
  std::mt19937_64 gen(103);
  for (double p : {1.0, 2.0}) {
    const auto src = testutil::random_measure(gen, 5, {3});
    const auto dst = testutil::random_measure(gen, 4, {3});
    const auto r = frot::frwd_distance(src, dst, GroundDistance::euclidean, p);
    EXPECT_NEAR(r.value, frot::wasserstein_p(src, dst, GroundDistance::euclidean, p), 1e-10);
    EXPECT_EQ(r.order, p);
  }
}

TEST(Frwd, MetricAxiomsOnSmallInstances) {
  std::mt19937_64 gen(107);
  const std::vector<std::size_t> widths{1, 2};
  for (int trial = 0; trial < 10; ++trial) {
    const double p = 1.0 + trial % 2;
    const auto x = testutil::random_measure(gen, 3, widths);
    const auto y = testutil::random_measure(gen, 4, widths);
    const auto z = testutil::random_measure(gen, 2, widths);
    auto d = [&](const frot::GroupedMeasure& s, const frot::GroupedMeasure& t) {
      return frot::frwd_distance(s, t, GroundDistance::l1, p).value;
    };
    EXPECT_NEAR(d(x, y), d(y, x), 1e-10);
    EXPECT_LE(d(x, x), 1e-10);
    EXPECT_LE(d(x, z), d(x, y) + d(y, z) + 1e-8);
    EXPECT_GT(d(x, y), 0.0);
  }
}

TEST(Frwd, FrankWolfeScheduleApproachesLp) {
  std::mt19937_64 gen(109);
  const auto src = testutil::random_measure(gen, 5, {1, 1, 1});
  const auto dst = testutil::random_measure(gen, 5, {1, 1, 1});
  const auto lp = frot::frwd_distance(src, dst, GroundDistance::euclidean, 1.0);
  frot::FrwdOptions opts;
  opts.eta_schedule = {1.0, 0.1, 0.01, 0.001};
  opts.fw_iters = 300;
  const auto fw = frot::frwd_distance(src, dst, GroundDistance::euclidean, 1.0, opts);
  EXPECT_GE(fw.value, lp.value - 1e-10);
  EXPECT_NEAR(fw.value, lp.value, 0.02 * lp.value);
  EXPECT_LE(fw.plan.marginal_residual, 1e-9);
}

TEST(Frwd, RejectsNonMetricGround) {
  std::mt19937_64 gen(113);
  const auto m = testutil::random_measure(gen, 3, {1, 1});
  EXPECT_THROW(frot::frwd_distance(m, m, GroundDistance::squared_euclidean, 1.0),
               frot::ValidationError);
  EXPECT_THROW(frot::frwd_distance(m, m, GroundDistance::euclidean, 0.5),
               frot::ValidationError);
  EXPECT_THROW(frot::parse_ground_distance("chebyshev"), frot::ValidationError);
  EXPECT_EQ(frot::parse_ground_distance(frot::to_string(GroundDistance::l1)),
            GroundDistance::l1);
}

TEST(Frwd, PoweredCosts) {
  std::mt19937_64 gen(127);
  const auto src = testutil::random_measure(gen, 2, {2});
  const auto dst = testutil::random_measure(gen, 3, {2});
  const auto c = frot::frwd_costs(src, dst, GroundDistance::euclidean, 2.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(c[0](i, j), (src.points().row(i) - dst.points().row(j)).squaredNorm(),
                  1e-12);
}

TEST(WassersteinP, OneDimensionalAgreesWithSortedFormula) {
  std::mt19937_64 gen(131);
  const Matrix x = testutil::gaussian_points(gen, 7, 1);
  const Matrix y = testutil::gaussian_points(gen, 7, 1);
  const std::vector<double> xs(x.data(), x.data() + 7), ys(y.data(), y.data() + 7);
  for (double p : {1.0, 2.0})
    EXPECT_NEAR(frot::wasserstein_p(frot::build_grouped_measure(x),
                                    frot::build_grouped_measure(y),
                                    GroundDistance::euclidean, p),
                frot::sorted_wasserstein_1d(xs, ys, p), 1e-10);
}

TEST(SrwCheck, WeightedProjectionIdentity) {
  std::mt19937_64 gen(137);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 5;
    const auto src = frot::build_grouped_measure(testutil::gaussian_points(gen, 4, d));
    const auto dst = frot::build_grouped_measure(testutil::gaussian_points(gen, 5, d));
    const Matrix plan = oracle::random_coupling(gen, src.weights(), dst.weights());
    const Vector alpha = oracle::random_simplex(gen, d);
    const auto r = frot::srw_equivalence_check(src, dst, plan, alpha);
    double want = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < d; ++k)
          want += plan(i, j) * alpha[k] *
                  std::pow(src.points()(i, k) - dst.points()(j, k), 2);
    EXPECT_NEAR(r.rhs, want, 1e-12);
    EXPECT_NEAR(r.diff, 0.0, 1e-10);
  }
}

TEST(SrwCheck, Validation) {
  std::mt19937_64 gen(139);
  const auto grouped = testutil::random_measure(gen, 3, {2});
  const Matrix plan = Matrix::Constant(3, 3, 1.0 / 9);
  EXPECT_THROW(frot::srw_equivalence_check(grouped, grouped, plan, Vector::Ones(1)),
               frot::ValidationError);
  const auto single = testutil::random_measure(gen, 3, {1, 1});
  Vector bad(2);
  bad << 0.7, 0.7;
  EXPECT_THROW(frot::srw_equivalence_check(single, single, plan, bad),
               frot::ValidationError);
}
