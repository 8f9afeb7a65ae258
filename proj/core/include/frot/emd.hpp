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

#include "frot/measures.hpp"
#include "frot/types.hpp"

namespace frot {

struct EmdOptions {
  // Pivot cap; exceeding it is a SolverError. 0 selects 50 * n * m + 1000.
  long max_pivots = 0;
};

struct EmdResult {
  TransportPlan plan;
  double objective = 0.0;  // <P, C>
  // Dual potentials with u_i + v_j <= C_ij, tight on the basis.
  Vector u;
  Vector v;
  long pivots = 0;
  long degenerate_pivots = 0;
};

/// Exact earth mover's distance by network simplex on the bipartite
/// transportation graph.
///
/// The basis is a spanning tree of n + m - 1 cells seeded by the north-west
/// corner rule. Entering cells are chosen by block pricing; among tied
/// leaving cells the last blocking one from the cycle apex is removed. After
/// a run of degenerate pivots the solver switches permanently to Bland's
/// rule, which cannot cycle. Plans are vertex solutions; when several optima
/// exist the returned one is deterministic but arbitrary.
EmdResult emd_exact_solve(const Vector& a, const Vector& b,
                          const Matrix& cost, const EmdOptions& opts = {});

}  // namespace frot
