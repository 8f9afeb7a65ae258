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

#include "frot/emd.hpp"
#include "frot/wasserstein_1d.hpp"
#include "oracles.hpp"

using frot::Matrix;
using frot::Vector;

TEST(Emd, MatchesBirkhoffBruteForce) {
  std::mt19937_64 gen(17);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix c = oracle::random_cost(gen, n, n);
      const Vector w = Vector::Constant(n, 1.0 / n);
      const auto r = frot::emd_exact_solve(w, w, c);
      EXPECT_NEAR(r.objective, oracle::birkhoff_assignment(c), 1e-12);
      EXPECT_LE(r.plan.marginal_residual, 1e-12);
    }
}

TEST(Emd, DualCertificate) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 8, m = 1 + (trial * 7) % 9;
    const Vector a = oracle::random_simplex(gen, n);
    const Vector b = oracle::random_simplex(gen, m);
    const Matrix c = oracle::random_cost(gen, n, m, 5.0);
    const auto r = frot::emd_exact_solve(a, b, c);
    EXPECT_NEAR(a.dot(r.u) + b.dot(r.v), r.objective, 1e-11);
    EXPECT_NEAR(frot::frobenius_inner(r.plan.matrix, c), r.objective, 1e-12);
    EXPECT_GE(r.plan.matrix.minCoeff(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        const double reduced = c(i, j) - r.u[i] - r.v[j];
        EXPECT_GE(reduced, -1e-11);
        if (r.plan.matrix(i, j) > 1e-12) {
          EXPECT_NEAR(reduced, 0.0, 1e-11);
        }
      }
  }
}

TEST(Emd, BeatsRandomFeasiblePlans) {
  std::mt19937_64 gen(29);
  const Vector a = oracle::random_simplex(gen, 6);
  const Vector b = oracle::random_simplex(gen, 7);
  const Matrix c = oracle::random_cost(gen, 6, 7);
  const double best = frot::emd_exact_solve(a, b, c).objective;
  for (int k = 0; k < 100; ++k) {
    const Matrix p = oracle::random_coupling(gen, a, b);
    EXPECT_GE(frot::frobenius_inner(p, c), best - 1e-12);
  }
}

TEST(Emd, DegenerateInstances) {
  const Vector w = Vector::Constant(4, 0.25);
  const auto flat = frot::emd_exact_solve(w, w, Matrix::Ones(4, 4));
  EXPECT_NEAR(flat.objective, 1.0, 1e-14);
  const auto diag = frot::emd_exact_solve(w, w, Matrix::Ones(4, 4) - Matrix::Identity(4, 4));
  EXPECT_NEAR(diag.objective, 0.0, 1e-14);
  Vector one(1);
  one << 1.0;
  const Vector b = Vector::Constant(3, 1.0 / 3.0);
  Matrix c(1, 3);
  c << 1, 2, 3;
  const auto r = frot::emd_exact_solve(one, b, c);
  EXPECT_NEAR(r.objective, 2.0, 1e-14);
}

TEST(Emd, Validation) {
  const Vector w = Vector::Constant(2, 0.5);
  EXPECT_THROW(frot::emd_exact_solve(w, w, Matrix::Ones(3, 2)), frot::ValidationError);
  Matrix inf = Matrix::Ones(2, 2);
  inf(1, 1) = INFINITY;
  EXPECT_THROW(frot::emd_exact_solve(w, w, inf), frot::ValidationError);
  Vector heavy(2);
  heavy << 0.5, 0.6;
  EXPECT_THROW(frot::emd_exact_solve(heavy, w, Matrix::Ones(2, 2)), frot::ValidationError);
  Matrix neg(2, 2);
  neg << -1, 0, 0, -1;
  EXPECT_NEAR(frot::emd_exact_solve(w, w, neg).objective, -1.0, 1e-15);
  EXPECT_THROW(frot::emd_exact_solve(Vector::Ones(2), w, Matrix::Ones(2, 2)),
               frot::ValidationError);
}

TEST(Wasserstein1d, SortedMatchesEmd) {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> nd;
  for (int n = 1; n <= 25; n += 3)
    for (double p : {1.0, 2.0, 3.0}) {
      std::vector<double> xs(n), ys(n);
      for (auto& x : xs) x = nd(gen);
      for (auto& y : ys) y = 2.0 * nd(gen) + 1.0;
      Matrix c(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = std::pow(std::abs(xs[i] - ys[j]), p);
      const Vector w = Vector::Constant(n, 1.0 / n);
      const double emd = std::pow(frot::emd_exact_solve(w, w, c).objective, 1.0 / p);
      EXPECT_NEAR(frot::sorted_wasserstein_1d(xs, ys, p), emd, 1e-10);
      EXPECT_NEAR(frot::wasserstein_1d_exact(xs, ys, p), emd, 1e-10);
    }
}

TEST(Wasserstein1d, UnequalSizesMatchQuantileOracle) {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xs(1 + trial % 7), ys(2 + trial % 5);
    for (auto& x : xs) x = u(gen);
    for (auto& y : ys) y = u(gen);
    for (double p : {1.0, 2.0}) {
      const double want = std::pow(oracle::quantile_wasserstein_pp(xs, ys, p), 1.0 / p);
      EXPECT_NEAR(frot::wasserstein_1d_exact(xs, ys, p), want, 1e-12);
    }
  }
  const std::vector<double> a{1, 2}, b{1, 2, 3};
  EXPECT_THROW(frot::sorted_wasserstein_1d(a, b, 1.0), frot::ValidationError);
  EXPECT_THROW(frot::wasserstein_1d_exact(a, b, 0.5), frot::ValidationError);
  EXPECT_THROW(frot::wasserstein_1d_exact({}, b, 1.0), frot::ValidationError);
}
