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

#include <string_view>
#include <vector>

#include "frot/frot.hpp"
#include "frot/measures.hpp"

namespace frot {

enum class GroundDistance { euclidean, l1, squared_euclidean };

std::string_view to_string(GroundDistance d);
GroundDistance parse_ground_distance(std::string_view name);

// (min_P <P, D^p>)^(1/p) with D between full support vectors, by exact EMD.
double wasserstein_p(const GroupedMeasure& src, const GroupedMeasure& dst,
                     GroundDistance distance, double p);

struct FrwdOptions {
  // Empty: solve the min-max exactly with the epigraph LP. Otherwise run
  // Frank-Wolfe once per eta, each warm-started from the previous plan.
  std::vector<double> eta_schedule;
  int fw_iters = 200;
  Subsolver subsolver = Subsolver::exact();
};

struct FrwdResult {
  double value = 0.0;
  double order = 1.0;
  TransportPlan plan;
  Vector alpha;
};

// Per-group costs [C_l]_ij = d(x_i^(l), y_j^(l))^p.
GroupedCost frwd_costs(const GroupedMeasure& src, const GroupedMeasure& dst,
                       GroundDistance distance, double p);

/// Feature-robust Wasserstein distance of order p.
///
/// The ground distance must be a metric, so squared_euclidean is rejected.
/// On the Frank-Wolfe path the reported value is the max-group cost of the
/// final plan, which upper-bounds the exact value.
FrwdResult frwd_distance(const GroupedMeasure& src, const GroupedMeasure& dst,
                         GroundDistance distance, double p,
                         const FrwdOptions& opts = {});

struct SrwCheck {
  double lhs = 0.0;  // sum_ij P_ij ||U^T x_i - U^T y_j||^2
  double rhs = 0.0;  // sum_ij P_ij sum_l alpha_l (x_il - y_jl)^2
  double diff = 0.0;
};

// Compares the diagonal-projection subspace objective with the
// alpha-weighted per-feature objective. Needs singleton groups.
SrwCheck srw_equivalence_check(const GroupedMeasure& src,
                               const GroupedMeasure& dst, const Matrix& plan,
                               const Vector& alpha);

}  // namespace frot
