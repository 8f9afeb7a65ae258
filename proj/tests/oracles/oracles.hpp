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

#pragma once

// Slow, independent reference computations used to check the library.
// Nothing here calls into the solvers under test.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// min over permutations sigma of (1/n) sum_i C(i, sigma(i)). Uniform
// marginals on a square cost; the optimum sits on a Birkhoff vertex.
double birkhoff_assignment(const Matrix& cost);

// <P, C> + eps sum P (log P - 1) minimized over U(a, b) by projected gradient
// descent on the affine hull, started from a b^T.
struct EntropicOracleResult {
  Matrix plan;
  double objective = 0.0;
  int iterations = 0;
};
EntropicOracleResult entropic_projected_gradient(const Vector& a,
                                                 const Vector& b,
                                                 const Matrix& cost,
                                                 double eps);

// Long-double alternating fixed point on the dual potentials, iterated until
// the potentials move by less than 1e-14.
Matrix entropic_fixed_point(const Vector& a, const Vector& b,
                            const Matrix& cost, double eps);

// Central differences of f at x with step h, entry by entry.
Matrix finite_difference_gradient(const std::function<double(const Matrix&)>& f,
                                  const Matrix& x, double h = 1e-6);

// <phi, alpha> - eta sum alpha log alpha
double entropic_score(const Vector& phi, const Vector& alpha, double eta);

// Best entropic_score on a grid of the simplex. L = 2 uses `points` evenly
// spaced values of alpha_1; L = 3 uses the triangular grid with `divisions`
// steps per side.
double simplex_grid_max(const Vector& phi, double eta, int points = 10000,
                        int divisions = 140);

// Largest eigenvalue of Phi^T Phi, where row l of Phi is vec(C_l), from a
// dense symmetric eigensolver.
double gram_max_eigenvalue(const std::vector<Matrix>& costs);

// W_p^p between uniformly weighted 1-D samples, integrating
// |F^-1(t) - G^-1(t)|^p exactly over the merged quantile breakpoints.
double quantile_wasserstein_pp(const std::vector<double>& xs,
                               const std::vector<double>& ys, double p);

// Uniform draw from the probability simplex (normalized exponentials).
Vector random_simplex(std::mt19937_64& gen, int n);

// Random element of U(a, b): a northwest-corner vertex under random row and
// column orders, blended with the product coupling.
Matrix random_coupling(std::mt19937_64& gen, const Vector& a, const Vector& b);

// Entries uniform in [0, scale).
Matrix random_cost(std::mt19937_64& gen, int n, int m, double scale = 1.0);

}  // namespace oracle
