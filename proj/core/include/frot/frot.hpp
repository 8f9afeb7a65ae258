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

#include <optional>
#include <string_view>
#include <vector>

#include "frot/emd.hpp"
#include "frot/lp.hpp"
#include "frot/measures.hpp"
#include "frot/sinkhorn.hpp"
#include "frot/types.hpp"

namespace frot {

enum class SubsolverKind { exact_emd, sinkhorn };

std::string_view to_string(SubsolverKind kind);

// Linear minimization oracle used inside each Frank-Wolfe step.
struct Subsolver {
  SubsolverKind kind = SubsolverKind::exact_emd;
  // Only read for sinkhorn.
  SinkhornConfig sinkhorn;

  static Subsolver exact() { return {}; }
  static Subsolver entropic(double epsilon) {
    Subsolver s;
    s.kind = SubsolverKind::sinkhorn;
    s.sinkhorn.epsilon = epsilon;
    return s;
  }
};

enum class InitPlan { product_ab, uniform };

struct FrotConfig {
  double eta = 1.0;
  int fw_iters = 10;
  Subsolver subsolver;
  InitPlan init_plan = InitPlan::product_ab;
  // Stop once the linearization gap drops to this value. Off by default.
  std::optional<double> gap_tol;

  void validate() const;
};

struct FrotSolution {
  TransportPlan plan;
  Vector alpha;
  // Entry k is evaluated at the k-th iterate, k = 0 .. iterations.
  std::vector<double> objective_trace;
  std::vector<Vector> alpha_trace;
  // <P_k - P_hat_k, M_k> for every step taken.
  std::vector<double> fw_gap_trace;
  SubsolverKind subsolver_used = SubsolverKind::exact_emd;
  int iterations = 0;
  bool stopped_early = false;
  // Sinkhorn subproblems only: worst marginal residual and how many hit
  // t_max. Together they describe how inexact each linear step was.
  double max_subproblem_residual = 0.0;
  int unconverged_subproblems = 0;
};

// phi_l = <P, C_l>
Vector group_inner_products(const Matrix& plan, const GroupedCost& costs);

// eta * log sum_l exp(phi_l / eta), max-shifted.
double smoothed_max(const Vector& phi, double eta);
// softmax(phi / eta), max-shifted.
Vector softmax_weights(const Vector& phi, double eta);

double smoothed_max_objective(const Matrix& plan, const GroupedCost& costs,
                              double eta);

// Optimal simplex weights for a fixed plan.
Vector alpha_weights(const Matrix& plan, const GroupedCost& costs, double eta);

// Gradient of the smoothed-max objective: sum_l alpha_l C_l.
Matrix frot_gradient(const Matrix& plan, const GroupedCost& costs, double eta);

FrotSolution frot_fw_solve(const GroupedMeasure& src,
                           const GroupedMeasure& dst, const GroupedCost& costs,
                           const FrotConfig& cfg);

/// Frank-Wolfe on the smoothed-max objective over U(a, b).
///
/// Step t (t = 0 .. fw_iters - 1) solves the linearized transport problem
/// with cost M = frot_gradient(P_t) and moves P_{t+1} = (1 - g) P_t + g P_hat
/// with g = 2 / (2 + t). initial_plan, when given, replaces the configured
/// initialization and must be feasible.
FrotSolution frot_fw_solve(const Vector& a, const Vector& b,
                           const GroupedCost& costs, const FrotConfig& cfg,
                           const Matrix* initial_plan = nullptr);

struct FrotLpResult {
  TransportPlan plan;
  // max_l <P, C_l> at the returned plan.
  double objective = 0.0;
  // Optimal adversary weights recovered from the epigraph-row multipliers.
  Vector alpha;
  long iterations = 0;
};

// Epigraph program over u = (vec(P) row-major, t, s):
//   q_i^T vec(P) = a_i,  r_j^T vec(P) = b_j,
//   vec(C_l)^T vec(P) - t + s_l = 0,  u >= 0,
// minimizing t. Row order: n source rows, m target rows, L epigraph rows.
LinearProgram frot_canonical_lp(const GroupedCost& costs, const Vector& a,
                                const Vector& b);

FrotLpResult frot_lp_solve(const GroupedCost& costs, const Vector& a,
                           const Vector& b, const LpOptions& opts = {});

// eta > 0 runs Frank-Wolfe; eta == 0 is routed to the exact LP.
FrotSolution frot_solve(const Vector& a, const Vector& b,
                        const GroupedCost& costs, const FrotConfig& cfg);

struct MaxMinResult {
  std::size_t best_group = 0;
  Vector alpha;  // one-hot at best_group
  std::vector<double> group_distances;
  // Every group attaining the maximum (size > 1 means a tie was broken
  // toward the lowest index).
  std::vector<std::size_t> tied_groups;
};

// Solves one OT problem per group and picks the most distant group.
MaxMinResult maxmin_frot(const GroupedMeasure& src, const GroupedMeasure& dst,
                         const GroupedCost& costs,
                         const Subsolver& per_group_solver = Subsolver::exact());

struct PowerIterationOptions {
  double rel_tol = 1e-8;
  int max_iters = 100000;
};

// Largest eigenvalue of Phi^T Phi, Phi = (vec(C_1), ..., vec(C_L))^T,
// by power iteration on the L x L Gram matrix Phi Phi^T.
double cost_gram_spectral_radius(const GroupedCost& costs,
                                 const PowerIterationOptions& opts = {});

// 4 sigma_max(Phi^T Phi) / (eta (t + 2)) for exact linear subproblems.
double fw_convergence_bound(const GroupedCost& costs, double eta, int t,
                            const PowerIterationOptions& opts = {});

}  // namespace frot
