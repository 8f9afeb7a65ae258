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

#include "frot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace frot {

namespace {

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out[i].assign(m.cols(), 0.0);
    for (Eigen::Index k = 0; k < m.cols(); ++k) out[i][k] = m(i, k);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> GroupedMeasure::group_widths() const {
  std::vector<std::size_t> widths;
  widths.reserve(groups_.size());
  for (const auto& g : groups_) widths.push_back(g.width);
  return widths;
}

Eigen::VectorXd GroupedMeasure::group_slice(std::size_t i,
                                            std::size_t l) const {
  const auto& g = groups_.at(l);
  return points_.row(static_cast<Eigen::Index>(i))
      .segment(static_cast<Eigen::Index>(g.begin),
               static_cast<Eigen::Index>(g.width))
      .transpose();
}

GroupedMeasure build_grouped_measure(
    const Matrix& points, std::optional<std::vector<std::size_t>> group_widths,
    std::optional<Vector> weights) {
  const auto n = static_cast<std::size_t>(points.rows());
  const auto d = static_cast<std::size_t>(points.cols());
  if (n == 0) throw ValidationError("measure has an empty point set");
  if (d == 0) throw ValidationError("measure points have dimension 0");
  if (!points.allFinite())
    throw ValidationError("measure points contain non-finite values");

  std::vector<std::size_t> widths =
      group_widths ? *group_widths : std::vector<std::size_t>(d, 1);
  if (widths.empty()) throw ValidationError("at least one group is required");
  std::size_t total = 0;
  for (std::size_t w : widths) {
    if (w == 0) throw ValidationError("group widths must be positive");
    total += w;
  }
  if (total != d) {
    std::ostringstream msg;
    msg << "group widths sum to " << total << " but points have dimension "
        << d;
    throw ValidationError(msg.str());
  }

  Vector w = weights ? *weights
                     : Vector::Constant(static_cast<Eigen::Index>(n),
                                        1.0 / static_cast<double>(n));
  if (static_cast<std::size_t>(w.size()) != n)
    throw ValidationError("weights length does not match number of points");
  if (!w.allFinite()) throw ValidationError("weights must be finite");
  if ((w.array() < 0.0).any())
    throw ValidationError("weights must be nonnegative");
  if (!(w.sum() > 0.0)) throw ValidationError("weights are all zero");

  // Drop zero-weight points and merge exact duplicates, keeping first-seen
  // order so the result is deterministic.
  const auto rows = rows_of(points);
  std::map<std::vector<double>, std::size_t> index_of;
  std::vector<std::size_t> kept_rows;
  std::vector<double> kept_weights;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[static_cast<Eigen::Index>(i)] == 0.0) continue;
    auto [it, inserted] = index_of.try_emplace(rows[i], kept_rows.size());
    if (inserted) {
      kept_rows.push_back(i);
      kept_weights.push_back(w[static_cast<Eigen::Index>(i)]);
    } else {
      kept_weights[it->second] += w[static_cast<Eigen::Index>(i)];
    }
  }

  GroupedMeasure m;
  const auto kept = static_cast<Eigen::Index>(kept_rows.size());
  m.points_.resize(kept, static_cast<Eigen::Index>(d));
  m.weights_.resize(kept);
  double sum = 0.0;
  for (double x : kept_weights) sum += x;
  for (Eigen::Index r = 0; r < kept; ++r) {
    m.points_.row(r) = points.row(static_cast<Eigen::Index>(kept_rows[r]));
    m.weights_[r] = kept_weights[r] / sum;
  }
  m.source_rows_ = std::move(kept_rows);
  std::size_t begin = 0;
  for (std::size_t width : widths) {
    m.groups_.push_back({begin, width});
    begin += width;
  }
  return m;
}

bool measures_equal_up_to_permutation(const GroupedMeasure& lhs,
                                      const GroupedMeasure& rhs, double tol) {
  if (lhs.size() != rhs.size() || lhs.dim() != rhs.dim()) return false;
  if (!lhs.same_group_structure(rhs)) return false;

  auto sorted_rows = [](const GroupedMeasure& m) {
    auto rows = rows_of(m.points());
    for (std::size_t i = 0; i < rows.size(); ++i)
      rows[i].push_back(m.weights()[static_cast<Eigen::Index>(i)]);
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  const auto a = sorted_rows(lhs);
  const auto b = sorted_rows(rhs);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (std::abs(a[i][k] - b[i][k]) > tol) return false;
  return true;
}

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::squared_euclidean: return "squared_euclidean";
    case CostKind::euclidean: return "euclidean";
    case CostKind::l1: return "l1";
    case CostKind::cosine_normalized: return "cosine_normalized";
    case CostKind::precomputed: return "precomputed";
  }
  return "unknown";
}

CostKind parse_cost_kind(std::string_view name) {
  if (name == "squared_euclidean" || name == "sqeuclidean")
    return CostKind::squared_euclidean;
  if (name == "euclidean") return CostKind::euclidean;
  if (name == "l1") return CostKind::l1;
  if (name == "cosine_normalized" || name == "cosine")
    return CostKind::cosine_normalized;
  throw ValidationError("unknown cost kind: " + std::string(name));
}

GroupedCost GroupedCost::from_matrices(std::vector<Matrix> matrices,
                                       CostKind kind) {
  if (matrices.empty())
    throw ValidationError("grouped cost needs at least one matrix");
  const auto rows = matrices.front().rows();
  const auto cols = matrices.front().cols();
  if (rows == 0 || cols == 0)
    throw ValidationError("cost matrices must be non-empty");
  for (const auto& c : matrices) {
    if (c.rows() != rows || c.cols() != cols)
      throw ValidationError("cost matrices have mismatched dimensions");
    if (!c.allFinite())
      throw ValidationError("cost matrix contains non-finite entries");
    if ((c.array() < 0.0).any())
      throw ValidationError("cost matrix contains negative entries");
  }
  return GroupedCost(std::move(matrices), kind);
}

Matrix GroupedCost::total() const {
  Matrix sum = Matrix::Zero(rows(), cols());
  for (const auto& c : matrices_) sum += c;
  return sum;
}

Matrix GroupedCost::weighted_sum(const Vector& w) const {
  if (static_cast<std::size_t>(w.size()) != matrices_.size())
    throw ValidationError("weight vector length differs from group count");
  Matrix sum = Matrix::Zero(rows(), cols());
  for (std::size_t l = 0; l < matrices_.size(); ++l)
    sum += w[static_cast<Eigen::Index>(l)] * matrices_[l];
  return sum;
}

Matrix pairwise_cost(const Matrix& xs, const Matrix& ys, CostKind kind) {
  if (xs.cols() != ys.cols())
    throw ValidationError("pairwise_cost: dimension mismatch");
  const auto n = xs.rows();
  const auto m = ys.rows();
  Matrix c(n, m);
  switch (kind) {
    case CostKind::squared_euclidean:
    case CostKind::euclidean:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
          const double sq = (xs.row(i) - ys.row(j)).squaredNorm();
          c(i, j) = kind == CostKind::euclidean ? std::sqrt(sq) : sq;
        }
      break;
    case CostKind::l1:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
          c(i, j) = (xs.row(i) - ys.row(j)).cwiseAbs().sum();
      break;
    case CostKind::cosine_normalized: {
      Matrix fx = xs;
      Matrix fy = ys;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = fx.row(i).norm();
        if (norm == 0.0)
          throw ValidationError("cosine cost: zero-norm source vector");
        fx.row(i) /= norm;
      }
      for (Eigen::Index j = 0; j < m; ++j) {
        const double norm = fy.row(j).norm();
        if (norm == 0.0)
          throw ValidationError("cosine cost: zero-norm target vector");
        fy.row(j) /= norm;
      }
      c = (2.0 - 2.0 * (fx * fy.transpose()).array()).matrix();
      // Rounding can push 2 - 2<f, g> slightly outside [0, 4].
      c = c.cwiseMax(0.0).cwiseMin(4.0);
      break;
    }
    case CostKind::precomputed:
      throw ValidationError("pairwise_cost: precomputed is not a ground cost");
  }
  return c;
}

GroupedCost build_grouped_cost(const GroupedMeasure& src,
                               const GroupedMeasure& dst, CostKind kind) {
  if (!src.same_group_structure(dst))
    throw ValidationError("source and target group structures differ");
  std::vector<Matrix> mats;
  mats.reserve(src.num_groups());
  for (const auto& g : src.groups()) {
    const auto b = static_cast<Eigen::Index>(g.begin);
    const auto w = static_cast<Eigen::Index>(g.width);
    mats.push_back(pairwise_cost(src.points().middleCols(b, w),
                                 dst.points().middleCols(b, w), kind));
  }
  return GroupedCost::from_matrices(std::move(mats), kind);
}

double marginal_residual(const Matrix& plan, const Vector& a,
                         const Vector& b) {
  const double rows = (plan.rowwise().sum() - a).cwiseAbs().sum();
  const double cols = (plan.colwise().sum().transpose() - b).cwiseAbs().sum();
  return std::max(rows, cols);
}

TransportPlan TransportPlan::from_matrix(Matrix plan, const Vector& a,
                                         const Vector& b) {
  if (plan.rows() != a.size() || plan.cols() != b.size())
    throw ValidationError("plan shape does not match marginals");
  TransportPlan p;
  p.marginal_residual = frot::marginal_residual(plan, a, b);
  p.matrix = std::move(plan);
  return p;
}

Matrix product_coupling(const Vector& a, const Vector& b) {
  return a * b.transpose();
}

void require_probability_vector(const Vector& w, std::string_view name,
                                double tol) {
  const std::string label(name);
  if (w.size() == 0) throw ValidationError(label + " is empty");
  if (!w.allFinite()) throw ValidationError(label + " has non-finite entries");
  if ((w.array() < 0.0).any())
    throw ValidationError(label + " has negative entries");
  if (std::abs(w.sum() - 1.0) > tol)
    throw ValidationError(label + " does not sum to one");
}

}  // namespace frot
