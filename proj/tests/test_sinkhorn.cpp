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
#include "frot/sinkhorn.hpp"
#include "oracles.hpp"

using frot::Matrix;
using frot::Vector;

namespace {

frot::SinkhornConfig config(double eps, std::optional<bool> log_domain = {}) {
  frot::SinkhornConfig cfg;
  cfg.epsilon = eps;
  cfg.t_max = 100000;
  cfg.log_domain = log_domain;
  return cfg;
}

}  // namespace

TEST(Sinkhorn, MatchesLongDoubleFixedPoint) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 5, m = 2 + (trial * 3) % 5;
    const Vector a = oracle::random_simplex(gen, n);
    const Vector b = oracle::random_simplex(gen, m);
    const Matrix c = oracle::random_cost(gen, n, m);
    for (double eps : {1.0, 0.1}) {
      const Matrix want = oracle::entropic_fixed_point(a, b, c, eps);
      for (bool log_domain : {false, true}) {
        const auto r = frot::sinkhorn_solve(a, b, c, config(eps, log_domain));
        ASSERT_TRUE(r.converged);
        EXPECT_EQ(r.log_domain, log_domain);
        EXPECT_LE((r.plan.matrix - want).cwiseAbs().maxCoeff(), 1e-9)
            << "trial " << trial << " eps " << eps;
      }
    }
  }
}

TEST(Sinkhorn, ObjectiveMatchesProjectedGradient) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector a = oracle::random_simplex(gen, 3);
    const Vector b = oracle::random_simplex(gen, 3);
    const Matrix c = oracle::random_cost(gen, 3, 3);
    const double eps = 0.5;
    const auto want = oracle::entropic_projected_gradient(a, b, c, eps);
    const auto r = frot::sinkhorn_solve(a, b, c, config(eps));
    EXPECT_NEAR(r.objective, want.objective, 1e-9);
    EXPECT_LE((r.plan.matrix - want.plan).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Sinkhorn, GibbsFormOfPlan) {
  std::mt19937_64 gen(8);
  const Vector a = oracle::random_simplex(gen, 6);
  const Vector b = oracle::random_simplex(gen, 4);
  const Matrix c = oracle::random_cost(gen, 6, 4, 3.0);
  for (double eps : {0.5, 0.02}) {
    const auto r = frot::sinkhorn_solve(a, b, c, config(eps));
    ASSERT_TRUE(r.converged);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 4; ++j) {
        const double gibbs = std::exp((r.f[i] + r.g[j] - c(i, j)) / eps);
        EXPECT_NEAR(r.plan.matrix(i, j), gibbs, 1e-10 * std::max(1.0, gibbs));
      }
    EXPECT_NEAR(r.objective, r.transport_cost + eps * r.entropy, 1e-14);
    EXPECT_NEAR(r.entropy, frot::plan_entropy(r.plan.matrix), 1e-14);
  }
}

TEST(Sinkhorn, ResidualTraceIsNonincreasing) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector a = oracle::random_simplex(gen, 7);
    const Vector b = oracle::random_simplex(gen, 9);
    const Matrix c = oracle::random_cost(gen, 7, 9);
    auto cfg = config(0.05 + 0.1 * trial);
    cfg.record_residuals = true;
    const auto r = frot::sinkhorn_solve(a, b, c, cfg);
    ASSERT_TRUE(r.converged);
    ASSERT_FALSE(r.residual_trace.empty());
    for (std::size_t k = 1; k < r.residual_trace.size(); ++k)
      EXPECT_LE(r.residual_trace[k], r.residual_trace[k - 1] + 1e-15);
    EXPECT_LE(r.plan.marginal_residual, 1e-9);
  }
}

TEST(Sinkhorn, ApproachesEmdAsEpsilonShrinks) {
  std::mt19937_64 gen(1);
  const Vector a = oracle::random_simplex(gen, 5);
  const Vector b = oracle::random_simplex(gen, 5);
  const Matrix c = oracle::random_cost(gen, 5, 5);
  const double exact = frot::emd_exact_solve(a, b, c).objective;
  double prev = INFINITY;
  for (double eps : {1.0, 0.1, 0.01}) {
    const auto r = frot::sinkhorn_solve(a, b, c, config(eps));
    ASSERT_TRUE(r.converged);
    const double gap = r.transport_cost - exact;
    EXPECT_GE(gap, -1e-9);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(Sinkhorn, LogDomainSurvivesTinyEpsilon) {
  std::mt19937_64 gen(4);
  const Vector a = oracle::random_simplex(gen, 5);
  const Vector b = oracle::random_simplex(gen, 5);
  const Matrix c = oracle::random_cost(gen, 5, 5, 10.0).array() + 10.0;
  auto cfg = config(1e-3);
  EXPECT_TRUE(cfg.uses_log_domain(c.maxCoeff()));
  const auto r = frot::sinkhorn_solve(a, b, c, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.plan.matrix.allFinite());
  EXPECT_LE(r.plan.marginal_residual, 1e-9);
  const double exact = frot::emd_exact_solve(a, b, c).objective;
  EXPECT_NEAR(r.transport_cost, exact, 0.05);

  EXPECT_THROW(frot::sinkhorn_solve(a, b, c, config(1e-3, false)),
               frot::SolverError);
}

TEST(Sinkhorn, AutoSwitchRule) {
  frot::SinkhornConfig cfg;
  cfg.epsilon = 0.1;
  EXPECT_FALSE(cfg.uses_log_domain(1.0));
  EXPECT_TRUE(cfg.uses_log_domain(100.0));
  cfg.epsilon = 0.01;
  EXPECT_TRUE(cfg.uses_log_domain(0.0));
  cfg.log_domain = false;
  EXPECT_FALSE(cfg.uses_log_domain(1000.0));
}

TEST(Sinkhorn, IterationCapReportsUnconverged) {
  std::mt19937_64 gen(2);
  const Vector a = oracle::random_simplex(gen, 8);
  const Vector b = oracle::random_simplex(gen, 8);
  const Matrix c = oracle::random_cost(gen, 8, 8);
  auto cfg = config(0.01);
  cfg.t_max = 3;
  const auto r = frot::sinkhorn_solve(a, b, c, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_GT(r.plan.marginal_residual, 1e-9);
}

TEST(Sinkhorn, Validation) {
  const Vector a = Vector::Constant(2, 0.5);
  const Matrix c = Matrix::Ones(2, 2);
  EXPECT_THROW(frot::sinkhorn_solve(a, a, c, config(0.0)), frot::ValidationError);
  EXPECT_THROW(frot::sinkhorn_solve(a, a, c, config(-1.0)), frot::ValidationError);
  auto cfg = config(0.1);
  cfg.t_max = 0;
  EXPECT_THROW(frot::sinkhorn_solve(a, a, c, cfg), frot::ValidationError);
  EXPECT_THROW(frot::sinkhorn_solve(a, a, Matrix::Ones(2, 3), config(0.1)),
               frot::ValidationError);
  Vector z(2);
  z << 1.0, 0.0;
  EXPECT_THROW(frot::sinkhorn_solve(z, a, c, config(0.1)), frot::ValidationError);
  Vector unnorm = Vector::Ones(2);
  EXPECT_THROW(frot::sinkhorn_solve(unnorm, a, c, config(0.1)),
               frot::ValidationError);
}

TEST(Rounding, ProducesFeasiblePlans) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 7, m = 1 + (trial * 5) % 6;
    const Vector a = oracle::random_simplex(gen, n);
    const Vector b = oracle::random_simplex(gen, m);
    const Matrix x = oracle::random_cost(gen, n, m, 0.3);
    const Matrix r = frot::round_to_transport_polytope(x, a, b);
    EXPECT_GE(r.minCoeff(), 0.0);
    EXPECT_LE(frot::marginal_residual(r, a, b), 1e-14);
  }
}

TEST(Rounding, LeavesFeasiblePlansAlone) {
  std::mt19937_64 gen(10);
  const Vector a = oracle::random_simplex(gen, 4);
  const Vector b = oracle::random_simplex(gen, 5);
  const Matrix p = oracle::random_coupling(gen, a, b);
  EXPECT_LE((frot::round_to_transport_polytope(p, a, b) - p).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_THROW(frot::round_to_transport_polytope(-p, a, b), frot::ValidationError);
}
