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

#include "frot/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frot {

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram& lp, const LpOptions& opts)
      : opts_(opts),
        rows_(lp.A.rows()),
        cols_(lp.A.cols()),
        A_(lp.A),
        b_(lp.b),
        c_(lp.c),
        flipped_(rows_, false) {
    if (lp.b.size() != rows_ || lp.c.size() != cols_)
      throw ValidationError("lp: inconsistent problem dimensions");
    if (!A_.allFinite() || !b_.allFinite() || !c_.allFinite())
      throw ValidationError("lp: non-finite problem data");
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (b_[r] < 0.0) {
        A_.row(r) *= -1.0;
        b_[r] = -b_[r];
        flipped_[r] = true;
      }
    max_iterations_ = opts.max_iterations > 0
                          ? opts.max_iterations
                          : 50 * static_cast<long>(rows_ + cols_) + 10000;
  }

  LpResult run() {
    // Phase one: artificial columns cols_ .. cols_ + rows_ - 1.
    basis_.resize(rows_);
    for (Eigen::Index r = 0; r < rows_; ++r)
      basis_[r] = static_cast<int>(cols_ + r);
    binv_ = Matrix::Identity(rows_, rows_);
    xb_ = b_;

    Vector phase1_cost = Vector::Zero(cols_ + rows_);
    phase1_cost.tail(rows_).setOnes();
    LpResult result;
    if (iterate(phase1_cost, /*allow_artificial=*/true) ==
        LpStatus::unbounded)
      throw SolverError("lp: phase one reported unbounded (internal error)");
    double infeasibility = 0.0;
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (is_artificial(basis_[r])) infeasibility += xb_[r];
    if (infeasibility > opts_.feasibility_tol * (1.0 + b_.lpNorm<1>())) {
      result.status = LpStatus::infeasible;
      result.iterations = iterations_;
      return result;
    }
    drive_out_artificials();

    Vector phase2_cost = Vector::Zero(cols_ + rows_);
    phase2_cost.head(cols_) = c_;
    result.status = iterate(phase2_cost, /*allow_artificial=*/false);
    result.iterations = iterations_;
    if (result.status == LpStatus::unbounded) return result;

    polish();
    result.x = Vector::Zero(cols_);
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (!is_artificial(basis_[r])) result.x[basis_[r]] = xb_[r];
    result.objective = c_.dot(result.x);
    Vector cb(rows_);
    for (Eigen::Index r = 0; r < rows_; ++r) cb[r] = phase2_cost[basis_[r]];
    result.duals = binv_.transpose() * cb;
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (flipped_[r]) result.duals[r] = -result.duals[r];
    result.basis = basis_;
    return result;
  }

 private:
  bool is_artificial(int col) const { return col >= cols_; }

  Vector column(int col) const {
    if (!is_artificial(col)) return A_.col(col);
    Vector e = Vector::Zero(rows_);
    e[col - cols_] = 1.0;
    return e;
  }

  LpStatus iterate(const Vector& cost, bool allow_artificial) {
    const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
    const double opt_tol = opts_.optimality_tol * scale;
    std::vector<char> in_basis(cols_ + rows_, 0);
    for (int col : basis_) in_basis[col] = 1;
    const Eigen::Index candidates = allow_artificial ? cols_ + rows_ : cols_;

    while (true) {
      Vector cb(rows_);
      for (Eigen::Index r = 0; r < rows_; ++r) cb[r] = cost[basis_[r]];
      const Vector y = binv_.transpose() * cb;

      // Bland: lowest-index improving column.
      int entering = -1;
      for (Eigen::Index q = 0; q < candidates; ++q) {
        if (in_basis[q]) continue;
        const double rc = is_artificial(static_cast<int>(q))
                              ? cost[q] - y[q - cols_]
                              : cost[q] - A_.col(q).dot(y);
        if (rc < -opt_tol) {
          entering = static_cast<int>(q);
          break;
        }
      }
      if (entering < 0) return LpStatus::optimal;
      if (iterations_ >= max_iterations_)
        throw SolverError("lp: iteration limit reached");

      const Vector d = binv_ * column(entering);
      // Ratio test; ties go to the lowest basic variable index.
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows_; ++r) {
        if (d[r] <= opts_.pivot_tol) continue;
        const double ratio = std::max(0.0, xb_[r]) / d[r];
        if (leave < 0) {
          best = ratio;
          leave = r;
          continue;
        }
        const double slack = 1e-12 * (1.0 + best);
        if (ratio < best - slack ||
            (ratio <= best + slack && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return LpStatus::unbounded;

      in_basis[basis_[leave]] = 0;
      in_basis[entering] = 1;
      pivot(leave, entering, d, best);
      ++iterations_;
      if (iterations_ % opts_.refactor_interval == 0) refactor();
    }
  }

  void pivot(Eigen::Index leave, int entering, const Vector& d,
             double theta) {
    xb_ -= theta * d;
    xb_[leave] = theta;
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (xb_[r] < 0.0 && xb_[r] > -opts_.feasibility_tol) xb_[r] = 0.0;
    const double piv = d[leave];
    binv_.row(leave) /= piv;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (r == leave || d[r] == 0.0) continue;
      binv_.row(r) -= d[r] * binv_.row(leave);
    }
    basis_[leave] = entering;
  }

  Matrix basis_matrix() const {
    Matrix B(rows_, rows_);
    for (Eigen::Index r = 0; r < rows_; ++r) B.col(r) = column(basis_[r]);
    return B;
  }

  void refactor() {
    const Eigen::PartialPivLU<Matrix> lu(basis_matrix());
    binv_ = lu.inverse();
    if (!binv_.allFinite())
      throw SolverError("lp: singular basis during refactorization");
    xb_ = binv_ * b_;
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (xb_[r] < 0.0 && xb_[r] > -opts_.feasibility_tol) xb_[r] = 0.0;
  }

  // Pivot basic artificials out wherever a structural column can replace
  // them; rows where none can are redundant and keep a zero artificial.
  void drive_out_artificials() {
    std::vector<char> in_basis(cols_ + rows_, 0);
    for (int col : basis_) in_basis[col] = 1;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      const Vector row = (binv_.row(r) * A_).transpose();
      for (Eigen::Index q = 0; q < cols_; ++q) {
        if (in_basis[q] || std::abs(row[q]) <= 1e-9) continue;
        const Vector d = binv_ * A_.col(q);
        in_basis[basis_[r]] = 0;
        in_basis[q] = 1;
        pivot(r, static_cast<int>(q), d, xb_[r] / d[r]);
        ++iterations_;
        break;
      }
    }
    refactor();
  }

  void polish() {
    refactor();
    for (Eigen::Index r = 0; r < rows_; ++r)
      if (std::abs(xb_[r]) <= opts_.feasibility_tol * 1e-3) xb_[r] = 0.0;
    if ((xb_.array() < -opts_.feasibility_tol).any())
      throw SolverError("lp: final basis is primal infeasible");
    xb_ = xb_.cwiseMax(0.0);
  }

  LpOptions opts_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  Matrix A_;
  Vector b_;
  Vector c_;
  std::vector<bool> flipped_;
  std::vector<int> basis_;
  Matrix binv_;
  Vector xb_;
  long iterations_ = 0;
  long max_iterations_ = 0;
};

}  // namespace

LpResult solve_linear_program(const LinearProgram& lp, const LpOptions& opts) {
  if (lp.A.rows() == 0 || lp.A.cols() == 0)
    throw ValidationError("lp: empty constraint matrix");
  return RevisedSimplex(lp, opts).run();
}

}  // namespace frot
