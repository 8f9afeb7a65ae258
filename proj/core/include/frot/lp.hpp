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

#include <vector>

#include "frot/types.hpp"

namespace frot {

// minimize c^T x  subject to  A x = b,  x >= 0.
struct LinearProgram {
  Matrix A;
  Vector b;
  Vector c;
};

struct LpOptions {
  // 0 selects 50 * (rows + cols) + 10000.
  long max_iterations = 0;
  // Recompute the explicit basis inverse from scratch this often.
  int refactor_interval = 64;
  double feasibility_tol = 1e-9;
  // Relative to max |c|.
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-10;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  Vector x;
  // Equality-row multipliers y with c - A^T y >= 0 at optimality.
  Vector duals;
  double objective = 0.0;
  long iterations = 0;
  std::vector<int> basis;
};

/// Two-phase revised simplex with an explicit dense basis inverse and
/// Bland's rule for both entering and leaving variables.
///
/// Phase one starts from an all-artificial basis. Artificials left in the
/// basis on redundant rows are pinned at zero for phase two. The final basic
/// solution is recomputed from a fresh LU factorization and entries below
/// feasibility_tol in magnitude are snapped to zero. Exceeding the iteration
/// cap throws SolverError.
LpResult solve_linear_program(const LinearProgram& lp,
                              const LpOptions& opts = {});

}  // namespace frot
