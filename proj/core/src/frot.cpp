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

#include "frot/frot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frot {

std::string_view to_string(SubsolverKind kind) {
  switch (kind) {
    case SubsolverKind::exact_emd: return "exact_emd";
    case SubsolverKind::sinkhorn: return "sinkhorn";
  }
  return "unknown";
}

void FrotConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ValidationError(
        "frot: eta must be positive for Frank-Wolfe (eta = 0 is solved by "
        "frot_lp_solve)");
  if (fw_iters < 1) throw ValidationError("frot: fw_iters must be >= 1");
  if (gap_tol && !(*gap_tol >= 0.0))
    throw ValidationError("frot: gap_tol must be nonnegative");
  if (subsolver.kind == SubsolverKind::sinkhorn) subsolver.sinkhorn.validate();
}

namespace {

void require_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ValidationError("eta must be positive and finite");
}

void require_compatible(const Matrix& plan, const GroupedCost& costs) {
  if (plan.rows() != costs.rows() || plan.cols() != costs.cols())
    throw ValidationError("plan and cost matrices have different shapes");
}

}  // namespace

Vector group_inner_products(const Matrix& plan, const GroupedCost& costs) {
  require_compatible(plan, costs);
  Vector phi(static_cast<Eigen::Index>(costs.num_groups()));
  for (std::size_t l = 0; l < costs.num_groups(); ++l)
    phi[static_cast<Eigen::Index>(l)] = frobenius_inner(plan, costs[l]);
  return phi;
}

double smoothed_max(const Vector& phi, double eta) {
  require_eta(eta);
  const double mx = phi.maxCoeff();
  return mx + eta * std::log(((phi.array() - mx) / eta).exp().sum());
}

Vector softmax_weights(const Vector& phi, double eta) {
  require_eta(eta);
  const double mx = phi.maxCoeff();
  Vector w = ((phi.array() - mx) / eta).exp().matrix();
  return w / w.sum();
}

double smoothed_max_objective(const Matrix& plan, const GroupedCost& costs,
                              double eta) {
  require_eta(eta);
  return smoothed_max(group_inner_products(plan, costs), eta);
}

Vector alpha_weights(const Matrix& plan, const GroupedCost& costs,
                     double eta) {
  require_eta(eta);
  return softmax_weights(group_inner_products(plan, costs), eta);
}

Matrix frot_gradient(const Matrix& plan, const GroupedCost& costs,
                     double eta) {
  return costs.weighted_sum(alpha_weights(plan, costs, eta));
}

FrotSolution frot_fw_solve(const GroupedMeasure& src,
                           const GroupedMeasure& dst, const GroupedCost& costs,
                           const FrotConfig& cfg) {
  if (costs.rows() != static_cast<Eigen::Index>(src.size()) ||
      costs.cols() != static_cast<Eigen::Index>(dst.size()))
    throw ValidationError("frot: cost shape does not match the measures");
  if (costs.num_groups() != src.num_groups() ||
      !src.same_group_structure(dst))
    throw ValidationError("frot: group structure mismatch");
  return frot_fw_solve(src.weights(), dst.weights(), costs, cfg);
}

FrotSolution frot_fw_solve(const Vector& a, const Vector& b,
                           const GroupedCost& costs, const FrotConfig& cfg,
                           const Matrix* initial_plan) {
  cfg.validate();
  require_probability_vector(a, "frot source weights");
  require_probability_vector(b, "frot target weights");
  if (costs.rows() != a.size() || costs.cols() != b.size())
    throw ValidationError("frot: cost shape does not match weights");

  Matrix plan;
  if (initial_plan != nullptr) {
    require_compatible(*initial_plan, costs);
    if ((initial_plan->array() < 0.0).any() ||
        marginal_residual(*initial_plan, a, b) > 1e-9)
      throw ValidationError("frot: initial plan is not feasible");
    plan = *initial_plan;
  } else if (cfg.init_plan == InitPlan::uniform) {
    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    if ((a.array() - 1.0 / n).abs().maxCoeff() > 1e-12 ||
        (b.array() - 1.0 / m).abs().maxCoeff() > 1e-12)
      throw ValidationError(
          "frot: uniform initial plan needs uniform marginals");
    plan = Matrix::Constant(a.size(), b.size(), 1.0 / (n * m));
  } else {
    plan = product_coupling(a, b);
  }

  FrotSolution sol;
  sol.subsolver_used = cfg.subsolver.kind;

  auto record = [&](const Vector& phi) {
    sol.objective_trace.push_back(smoothed_max(phi, cfg.eta));
    sol.alpha_trace.push_back(softmax_weights(phi, cfg.eta));
  };

  for (int t = 0; t < cfg.fw_iters; ++t) {
    const Vector phi = group_inner_products(plan, costs);
    record(phi);
    const Matrix grad = costs.weighted_sum(sol.alpha_trace.back());

    Matrix target;
    try {
      if (cfg.subsolver.kind == SubsolverKind::exact_emd) {
        target = emd_exact_solve(a, b, grad).plan.matrix;
      } else {
        auto sub = sinkhorn_solve(a, b, grad, cfg.subsolver.sinkhorn);
        sol.max_subproblem_residual =
            std::max(sol.max_subproblem_residual, sub.plan.marginal_residual);
        if (sub.converged) {
          target = std::move(sub.plan.matrix);
        } else {
          // Keeps every iterate inside U(a, b).
          ++sol.unconverged_subproblems;
          target = round_to_transport_polytope(sub.plan.matrix, a, b);
        }
      }
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "frot: subproblem failed at iteration " << t << ": " << e.what();
      throw SolverError(msg.str());
    }

    const double gap = frobenius_inner(plan - target, grad);
    sol.fw_gap_trace.push_back(gap);
    if (cfg.gap_tol && gap <= *cfg.gap_tol) {
      sol.stopped_early = true;
      break;
    }
    const double gamma = 2.0 / (2.0 + t);
    plan = (1.0 - gamma) * plan + gamma * target;
    ++sol.iterations;
  }

  const Vector phi = group_inner_products(plan, costs);
  if (!sol.stopped_early) record(phi);
  sol.alpha = softmax_weights(phi, cfg.eta);
  sol.plan = TransportPlan::from_matrix(std::move(plan), a, b);
  return sol;
}

LinearProgram frot_canonical_lp(const GroupedCost& costs, const Vector& a,
                                const Vector& b) {
  const Eigen::Index n = costs.rows();
  const Eigen::Index m = costs.cols();
  const auto L = static_cast<Eigen::Index>(costs.num_groups());
  const Eigen::Index nm = n * m;
  const Eigen::Index t_col = nm;
  LinearProgram lp;
  lp.A = Matrix::Zero(n + m + L, nm + 1 + L);
  lp.b = Vector::Zero(n + m + L);
  lp.c = Vector::Zero(nm + 1 + L);
  lp.c[t_col] = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index k = i * m + j;  // row-major vec
      lp.A(i, k) = 1.0;                  // q_i
      lp.A(n + j, k) = 1.0;              // r_j
      for (Eigen::Index l = 0; l < L; ++l)
        lp.A(n + m + l, k) = costs[static_cast<std::size_t>(l)](i, j);
    }
    lp.b[i] = a[i];
  }
  for (Eigen::Index j = 0; j < m; ++j) lp.b[n + j] = b[j];
  for (Eigen::Index l = 0; l < L; ++l) {
    lp.A(n + m + l, t_col) = -1.0;
    lp.A(n + m + l, t_col + 1 + l) = 1.0;  // slack
  }
  return lp;
}

FrotLpResult frot_lp_solve(const GroupedCost& costs, const Vector& a,
                           const Vector& b, const LpOptions& opts) {
  require_probability_vector(a, "frot_lp source weights");
  require_probability_vector(b, "frot_lp target weights");
  if (costs.rows() != a.size() || costs.cols() != b.size())
    throw ValidationError("frot_lp: cost shape does not match weights");

  const Eigen::Index n = costs.rows();
  const Eigen::Index m = costs.cols();
  const auto L = static_cast<Eigen::Index>(costs.num_groups());
  const LpResult lp = solve_linear_program(frot_canonical_lp(costs, a, b),
                                           opts);
  if (lp.status == LpStatus::infeasible)
    throw SolverError("frot_lp: LP reported infeasible (internal error)");
  if (lp.status == LpStatus::unbounded)
    throw SolverError("frot_lp: LP reported unbounded (internal error)");

  Matrix plan(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) plan(i, j) = lp.x[i * m + j];

  FrotLpResult r;
  r.iterations = lp.iterations;
  r.objective = group_inner_products(plan, costs).maxCoeff();
  // Epigraph multipliers are <= 0; their negation is the adversary's
  // optimal mixed strategy.
  Vector alpha = (-lp.duals.tail(L)).cwiseMax(0.0);
  const double mass = alpha.sum();
  r.alpha = mass > 1e-12 ? Vector(alpha / mass)
                         : Vector::Constant(L, 1.0 / static_cast<double>(L));
  r.plan = TransportPlan::from_matrix(std::move(plan), a, b);
  return r;
}

FrotSolution frot_solve(const Vector& a, const Vector& b,
                        const GroupedCost& costs, const FrotConfig& cfg) {
  if (cfg.eta != 0.0) return frot_fw_solve(a, b, costs, cfg);
  FrotLpResult lp = frot_lp_solve(costs, a, b);
  FrotSolution sol;
  sol.objective_trace.push_back(lp.objective);
  sol.alpha_trace.push_back(lp.alpha);
  sol.alpha = std::move(lp.alpha);
  sol.plan = std::move(lp.plan);
  sol.subsolver_used = SubsolverKind::exact_emd;
  return sol;
}

MaxMinResult maxmin_frot(const GroupedMeasure& src, const GroupedMeasure& dst,
                         const GroupedCost& costs,
                         const Subsolver& per_group_solver) {
  if (!src.same_group_structure(dst) ||
      costs.num_groups() != src.num_groups() ||
      costs.rows() != static_cast<Eigen::Index>(src.size()) ||
      costs.cols() != static_cast<Eigen::Index>(dst.size()))
    throw ValidationError("maxmin_frot: inputs are not compatible");

  MaxMinResult r;
  for (std::size_t l = 0; l < costs.num_groups(); ++l) {
    double dist = 0.0;
    if (per_group_solver.kind == SubsolverKind::exact_emd) {
      dist = emd_exact_solve(src.weights(), dst.weights(), costs[l]).objective;
    } else {
      dist = sinkhorn_solve(src.weights(), dst.weights(), costs[l],
                            per_group_solver.sinkhorn)
                 .transport_cost;
    }
    r.group_distances.push_back(dist);
  }
  const double best =
      *std::max_element(r.group_distances.begin(), r.group_distances.end());
  const double tie_tol = 1e-12 * std::max(1.0, std::abs(best));
  for (std::size_t l = 0; l < r.group_distances.size(); ++l)
    if (best - r.group_distances[l] <= tie_tol) r.tied_groups.push_back(l);
  r.best_group = r.tied_groups.front();
  r.alpha = Vector::Zero(static_cast<Eigen::Index>(costs.num_groups()));
  r.alpha[static_cast<Eigen::Index>(r.best_group)] = 1.0;
  return r;
}

double cost_gram_spectral_radius(const GroupedCost& costs,
                                 const PowerIterationOptions& opts) {
  const auto L = static_cast<Eigen::Index>(costs.num_groups());
  Matrix gram(L, L);
  for (Eigen::Index k = 0; k < L; ++k)
    for (Eigen::Index l = k; l < L; ++l) {
      const double g = frobenius_inner(costs[static_cast<std::size_t>(k)],
                                       costs[static_cast<std::size_t>(l)]);
      gram(k, l) = g;
      gram(l, k) = g;
    }
  if (gram.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  Vector x = Vector::Constant(L, 1.0 / std::sqrt(static_cast<double>(L)));
  double lambda = x.dot(gram * x);
  for (int it = 0; it < opts.max_iters; ++it) {
    Vector y = gram * x;
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    x = y / norm;
    const double next = x.dot(gram * x);
    if (std::abs(next - lambda) <= opts.rel_tol * std::abs(next)) return next;
    lambda = next;
  }
  throw SolverError("power iteration did not converge");
}

double fw_convergence_bound(const GroupedCost& costs, double eta, int t,
                            const PowerIterationOptions& opts) {
  require_eta(eta);
  if (t < 1) throw ValidationError("fw_convergence_bound: t must be >= 1");
  return 4.0 * cost_gram_spectral_radius(costs, opts) /
         (eta * (static_cast<double>(t) + 2.0));
}

}  // namespace frot
