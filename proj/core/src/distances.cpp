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

#include "frot/distances.hpp"

#include <cmath>

#include "frot/emd.hpp"

namespace frot {

std::string_view to_string(GroundDistance d) {
  switch (d) {
    case GroundDistance::euclidean: return "euclidean";
    case GroundDistance::l1: return "l1";
    case GroundDistance::squared_euclidean: return "squared_euclidean";
  }
  return "unknown";
}

GroundDistance parse_ground_distance(std::string_view name) {
  if (name == "euclidean") return GroundDistance::euclidean;
  if (name == "l1") return GroundDistance::l1;
  if (name == "squared_euclidean" || name == "sqeuclidean")
    return GroundDistance::squared_euclidean;
  throw ValidationError("unknown ground distance: " + std::string(name));
}

namespace {

void require_order(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("distance order p must be >= 1");
}

CostKind cost_kind_of(GroundDistance d) {
  switch (d) {
    case GroundDistance::euclidean: return CostKind::euclidean;
    case GroundDistance::l1: return CostKind::l1;
    case GroundDistance::squared_euclidean: return CostKind::squared_euclidean;
  }
  return CostKind::euclidean;
}

Matrix powered(const Matrix& d, double p) {
  return p == 1.0 ? d : Matrix(d.array().pow(p).matrix());
}

}  // namespace

double wasserstein_p(const GroupedMeasure& src, const GroupedMeasure& dst,
                     GroundDistance distance, double p) {
  require_order(p);
  if (src.dim() != dst.dim())
    throw ValidationError("wasserstein_p: dimension mismatch");
  const Matrix cost = powered(
      pairwise_cost(src.points(), dst.points(), cost_kind_of(distance)), p);
  const double value =
      emd_exact_solve(src.weights(), dst.weights(), cost).objective;
  return std::pow(std::max(0.0, value), 1.0 / p);
}

GroupedCost frwd_costs(const GroupedMeasure& src, const GroupedMeasure& dst,
                       GroundDistance distance, double p) {
  require_order(p);
  if (distance == GroundDistance::squared_euclidean)
    throw ValidationError(
        "frwd: squared_euclidean is not a metric; use euclidean or l1");
  const GroupedCost base =
      build_grouped_cost(src, dst, cost_kind_of(distance));
  std::vector<Matrix> mats;
  mats.reserve(base.num_groups());
  for (const auto& c : base.matrices()) mats.push_back(powered(c, p));
  return GroupedCost::from_matrices(std::move(mats), CostKind::precomputed);
}

FrwdResult frwd_distance(const GroupedMeasure& src, const GroupedMeasure& dst,
                         GroundDistance distance, double p,
                         const FrwdOptions& opts) {
  const GroupedCost costs = frwd_costs(src, dst, distance, p);
  FrwdResult r;
  r.order = p;
  if (opts.eta_schedule.empty()) {
    FrotLpResult lp = frot_lp_solve(costs, src.weights(), dst.weights());
    r.value = std::pow(std::max(0.0, lp.objective), 1.0 / p);
    r.plan = std::move(lp.plan);
    r.alpha = std::move(lp.alpha);
    return r;
  }

  FrotConfig cfg;
  cfg.fw_iters = opts.fw_iters;
  cfg.subsolver = opts.subsolver;
  Matrix plan = product_coupling(src.weights(), dst.weights());
  FrotSolution sol;
  for (double eta : opts.eta_schedule) {
    cfg.eta = eta;
    sol = frot_fw_solve(src.weights(), dst.weights(), costs, cfg, &plan);
    plan = sol.plan.matrix;
  }
  const double objective = group_inner_products(plan, costs).maxCoeff();
  r.value = std::pow(std::max(0.0, objective), 1.0 / p);
  r.plan = std::move(sol.plan);
  r.alpha = std::move(sol.alpha);
  return r;
}

SrwCheck srw_equivalence_check(const GroupedMeasure& src,
                               const GroupedMeasure& dst, const Matrix& plan,
                               const Vector& alpha) {
  if (!src.same_group_structure(dst))
    throw ValidationError("srw check: group structure mismatch");
  for (const auto& g : src.groups())
    if (g.width != 1)
      throw ValidationError("srw check: groups must be singletons");
  const auto d = static_cast<Eigen::Index>(src.dim());
  if (alpha.size() != d)
    throw ValidationError("srw check: alpha length differs from dimension");
  if ((alpha.array() < 0.0).any() || std::abs(alpha.sum() - 1.0) > 1e-9)
    throw ValidationError("srw check: alpha must lie on the simplex");
  if (plan.rows() != static_cast<Eigen::Index>(src.size()) ||
      plan.cols() != static_cast<Eigen::Index>(dst.size()))
    throw ValidationError("srw check: plan shape mismatch");

  // Projection U = (sqrt(alpha_1) e_1, ..., sqrt(alpha_d) e_d)^T.
  const Matrix u = alpha.cwiseSqrt().asDiagonal();
  const Matrix px = src.points() * u;  // rows are (U^T x_i)^T
  const Matrix py = dst.points() * u;

  SrwCheck r;
  for (Eigen::Index i = 0; i < plan.rows(); ++i)
    for (Eigen::Index j = 0; j < plan.cols(); ++j) {
      r.lhs += plan(i, j) * (px.row(i) - py.row(j)).squaredNorm();
      double weighted = 0.0;
      for (Eigen::Index l = 0; l < d; ++l) {
        const double diff = src.points()(i, l) - dst.points()(j, l);
        weighted += alpha[l] * diff * diff;
      }
      r.rhs += plan(i, j) * weighted;
    }
  r.diff = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace frot
