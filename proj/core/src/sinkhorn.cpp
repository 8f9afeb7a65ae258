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

#include "frot/sinkhorn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace frot {

void SinkhornConfig::validate() const {
  if (epsilon == 0.0)
    throw ValidationError(
        "sinkhorn: epsilon = 0 is the unregularized problem; use "
        "emd_exact_solve");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ValidationError("sinkhorn: epsilon must be positive and finite");
  if (t_max < 1) throw ValidationError("sinkhorn: t_max must be >= 1");
  if (!(tol > 0.0)) throw ValidationError("sinkhorn: tol must be positive");
}

double plan_entropy(const Matrix& plan) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < plan.cols(); ++j)
    for (Eigen::Index i = 0; i < plan.rows(); ++i) {
      const double p = plan(i, j);
      if (p > 0.0) h += p * (std::log(p) - 1.0);
    }
  return h;
}

namespace {

void check_inputs(const Vector& a, const Vector& b, const Matrix& cost) {
  require_probability_vector(a, "sinkhorn source weights");
  require_probability_vector(b, "sinkhorn target weights");
  if ((a.array() <= 0.0).any() || (b.array() <= 0.0).any())
    throw ValidationError("sinkhorn: weights must be strictly positive");
  if (cost.rows() != a.size() || cost.cols() != b.size())
    throw ValidationError("sinkhorn: cost shape does not match weights");
  if (!cost.allFinite())
    throw ValidationError("sinkhorn: cost matrix has non-finite entries");
}

// log sum_k exp(v_k), max-shifted.
template <typename Derived>
double log_sum_exp(const Eigen::DenseBase<Derived>& v) {
  const double mx = v.maxCoeff();
  if (mx == -std::numeric_limits<double>::infinity()) return mx;
  return mx + std::log((v.derived().array() - mx).exp().sum());
}

void finish(SinkhornResult& r, const Matrix& plan, const Vector& a,
            const Vector& b, const Matrix& cost, double epsilon) {
  r.plan = TransportPlan::from_matrix(plan, a, b);
  r.transport_cost = frobenius_inner(plan, cost);
  r.entropy = plan_entropy(plan);
  r.objective = r.transport_cost + epsilon * r.entropy;
}

SinkhornResult solve_scaling(const Vector& a, const Vector& b,
                             const Matrix& cost, const SinkhornConfig& cfg) {
  Matrix kernel = (-cost / cfg.epsilon).array().exp().matrix();
  kernel = (kernel.array() < 1e-200).select(0.0, kernel);
  Vector u = Vector::Ones(a.size());
  Vector v = Vector::Ones(b.size());
  SinkhornResult r;
  r.log_domain = false;

  auto underflow = [](const Vector& denom) {
    return !(denom.array() > 0.0).all() || !denom.allFinite();
  };

  for (int t = 0; t < cfg.t_max; ++t) {
    const Vector kv = kernel * v;
    if (underflow(kv))
      throw SolverError(
          "sinkhorn: kernel exp(-C/epsilon) underflowed; enable log_domain");
    if (t > 0) {
      // Columns are exact after the previous v update.
      const double residual = (u.cwiseProduct(kv) - a).cwiseAbs().sum();
      if (cfg.record_residuals) r.residual_trace.push_back(residual);
      if (residual <= cfg.tol) {
        r.converged = true;
        break;
      }
    }
    u = a.cwiseQuotient(kv);
    const Vector ktu = kernel.transpose() * u;
    if (underflow(ktu))
      throw SolverError(
          "sinkhorn: kernel exp(-C/epsilon) underflowed; enable log_domain");
    v = b.cwiseQuotient(ktu);
    r.iterations = t + 1;
  }
  if (!r.converged && r.iterations == cfg.t_max) {
    const double residual =
        (u.cwiseProduct(kernel * v) - a).cwiseAbs().sum();
    if (cfg.record_residuals) r.residual_trace.push_back(residual);
    r.converged = residual <= cfg.tol;
  }

  const Matrix plan = u.asDiagonal() * kernel * v.asDiagonal();
  r.f = cfg.epsilon * u.array().log().matrix();
  r.g = cfg.epsilon * v.array().log().matrix();
  finish(r, plan, a, b, cost, cfg.epsilon);
  return r;
}

// Log-domain Sinkhorn in stabilized-kernel form: the potentials are kept in
// (fs, gs) and absorbed into K = exp(-C/eps + fs + gs) whenever the scalings
// (u, v) leave [1e-50, 1e50]. A scaling step whose denominator would
// underflow is replaced by the exact log-sum-exp update.
SinkhornResult solve_log_domain(const Vector& a, const Vector& b,
                                const Matrix& cost,
                                const SinkhornConfig& cfg) {
  constexpr double kBig = 1e50;
  constexpr double kTiny = 1e-200;
  const double eps = cfg.epsilon;
  const Eigen::Index n = a.size();
  const Eigen::Index m = b.size();
  const Vector log_a = a.array().log().matrix();
  const Vector log_b = b.array().log().matrix();
  const Matrix neg_c = -cost / eps;

  // Row offsets put the largest kernel entry of each row at 1.
  Vector fs = -neg_c.rowwise().maxCoeff();
  Vector gs = Vector::Zero(m);
  Vector u = Vector::Ones(n);
  Vector v = Vector::Ones(m);
  Matrix kernel(n, m);
  SinkhornResult r;
  r.log_domain = true;

  // Entries below kTiny are dropped while iterating; subnormal arithmetic
  // is slow and their contribution is far below any tolerance.
  auto rebuild = [&](bool truncate = true) {
    for (Eigen::Index j = 0; j < m; ++j)
      kernel.col(j) = ((neg_c.col(j) + fs).array() + gs[j]).exp().matrix();
    if (truncate) kernel = (kernel.array() < kTiny).select(0.0, kernel);
  };
  auto absorb = [&] {
    fs += u.array().log().matrix();
    gs += v.array().log().matrix();
    u.setOnes();
    v.setOnes();
  };
  auto exact_rows = [&] {
    absorb();
    for (Eigen::Index i = 0; i < n; ++i)
      fs[i] = log_a[i] - log_sum_exp(neg_c.row(i).transpose() + gs);
    rebuild();
  };
  auto exact_cols = [&] {
    absorb();
    for (Eigen::Index j = 0; j < m; ++j)
      gs[j] = log_b[j] - log_sum_exp(neg_c.col(j) + fs);
    rebuild();
  };
  auto unsafe = [](const Vector& d) {
    return !d.allFinite() || d.minCoeff() < kTiny;
  };
  auto row_residual = [&](const Vector& kv) {
    return (u.cwiseProduct(kv) - a).cwiseAbs().sum();
  };

  rebuild();
  for (int t = 0; t < cfg.t_max; ++t) {
    Vector kv = kernel * v;
    if (t > 0) {
      const double residual = row_residual(kv);
      if (cfg.record_residuals) r.residual_trace.push_back(residual);
      if (residual <= cfg.tol) {
        r.converged = true;
        break;
      }
    }
    if (unsafe(kv))
      exact_rows();
    else
      u = a.cwiseQuotient(kv);
    const Vector ktu = kernel.transpose() * u;
    if (unsafe(ktu))
      exact_cols();
    else
      v = b.cwiseQuotient(ktu);
    if (u.maxCoeff() > kBig || v.maxCoeff() > kBig ||
        u.minCoeff() < 1.0 / kBig || v.minCoeff() < 1.0 / kBig) {
      absorb();
      rebuild();
    }
    r.iterations = t + 1;
  }
  if (!r.converged && r.iterations == cfg.t_max) {
    const double residual = row_residual(kernel * v);
    if (cfg.record_residuals) r.residual_trace.push_back(residual);
    r.converged = residual <= cfg.tol;
  }

  absorb();
  rebuild(false);
  r.f = eps * fs;
  r.g = eps * gs;
  finish(r, kernel, a, b, cost, eps);
  return r;
}

}  // namespace

Matrix round_to_transport_polytope(const Matrix& plan, const Vector& a,
                                   const Vector& b) {
  if (plan.rows() != a.size() || plan.cols() != b.size())
    throw ValidationError("rounding: plan shape does not match marginals");
  if ((plan.array() < 0.0).any())
    throw ValidationError("rounding: plan has negative entries");
  Matrix x = plan;
  const Vector rows = x.rowwise().sum();
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    if (rows[i] > a[i]) x.row(i) *= a[i] / rows[i];
  const Vector cols = x.colwise().sum().transpose();
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    if (cols[j] > b[j]) x.col(j) *= b[j] / cols[j];
  const Vector err_r = (a - x.rowwise().sum()).cwiseMax(0.0);
  const Vector err_c = (b - x.colwise().sum().transpose()).cwiseMax(0.0);
  const double mass = err_r.sum();
  if (mass > 0.0) x += err_r * err_c.transpose() / mass;
  return x;
}

SinkhornResult sinkhorn_solve(const Vector& a, const Vector& b,
                              const Matrix& cost, const SinkhornConfig& cfg) {
  cfg.validate();
  check_inputs(a, b, cost);
  return cfg.uses_log_domain(cost.maxCoeff()) ? solve_log_domain(a, b, cost, cfg)
                               : solve_scaling(a, b, cost, cfg);
}

}  // namespace frot
