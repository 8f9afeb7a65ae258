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
#include <vector>

#include "frot/measures.hpp"
#include "frot/types.hpp"

namespace frot {

struct SinkhornConfig {
  double epsilon = 0.1;
  int t_max = 1000;
  // Convergence threshold on the L1 row-marginal residual (columns are exact
  // after every sweep).
  double tol = 1e-9;
  // Unset: log-domain iterations are used when epsilon < 0.05 or when
  // max(C) / epsilon is large enough for exp(-C / epsilon) to underflow.
  std::optional<bool> log_domain;
  // Record the marginal residual after every sweep.
  bool record_residuals = false;

  static constexpr double kLogDomainThreshold = 0.05;
  static constexpr double kMaxKernelExponent = 600.0;

  bool uses_log_domain(double max_cost = 0.0) const {
    return log_domain.value_or(epsilon < kLogDomainThreshold ||
                               max_cost / epsilon > kMaxKernelExponent);
  }
  void validate() const;
};

struct SinkhornResult {
  TransportPlan plan;
  // Dual potentials: P_ij = exp((f_i + g_j - C_ij) / epsilon).
  Vector f;
  Vector g;
  int iterations = 0;
  bool converged = false;
  bool log_domain = false;
  double transport_cost = 0.0;  // <P, C>
  double entropy = 0.0;         // H(P) = sum P (log P - 1)
  double objective = 0.0;       // <P, C> + epsilon H(P)
  std::vector<double> residual_trace;
};

// H(P) = sum_ij P_ij (log P_ij - 1), with 0 log 0 = 0.
double plan_entropy(const Matrix& plan);

/// Entropic OT by alternating row/column scaling of exp(-C / epsilon).
///
/// a and b must be strictly positive probability vectors. Hitting t_max is
/// not an error: the result carries converged = false. epsilon == 0 is
/// rejected (use emd_exact_solve); a kernel that underflows in the scaling
/// domain is a SolverError suggesting log_domain.
SinkhornResult sinkhorn_solve(const Vector& a, const Vector& b,
                              const Matrix& cost, const SinkhornConfig& cfg);

// Projects a nonnegative matrix onto U(a, b): scale rows and then columns
// down to their targets, then add the rank-one correction
// err_r err_c^T / |err_r|_1 (Altschuler, Weed and Rigollet, 2017).
Matrix round_to_transport_polytope(const Matrix& plan, const Vector& a,
                                   const Vector& b);

}  // namespace frot
