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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frot/types.hpp"

namespace frot {

// Half-open column range [begin, begin + width) of one feature group.
struct GroupRange {
  std::size_t begin = 0;
  std::size_t width = 0;

  std::size_t end() const { return begin + width; }
  bool operator==(const GroupRange&) const = default;
};

/// Discrete probability measure whose support vectors are split into L
/// contiguous feature groups.
///
/// Construct through build_grouped_measure(). Zero-weight points are dropped
/// and bitwise-identical support points are merged (their weights summed),
/// so every stored weight is strictly positive and the weights sum to one.
class GroupedMeasure {
 public:
  const Matrix& points() const { return points_; }
  const Vector& weights() const { return weights_; }
  const std::vector<GroupRange>& groups() const { return groups_; }

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
  std::size_t num_groups() const { return groups_.size(); }

  std::vector<std::size_t> group_widths() const;

  // Point i restricted to group l.
  Eigen::VectorXd group_slice(std::size_t i, std::size_t l) const;

  // Row of the caller's input that each retained point came from.
  const std::vector<std::size_t>& source_rows() const { return source_rows_; }

  bool same_group_structure(const GroupedMeasure& other) const {
    return groups_ == other.groups_;
  }

 private:
  friend GroupedMeasure build_grouped_measure(
      const Matrix&, std::optional<std::vector<std::size_t>>,
      std::optional<Vector>);

  Matrix points_;
  Vector weights_;
  std::vector<GroupRange> groups_;
  std::vector<std::size_t> source_rows_;
};

// group_widths: omitted means one group per feature (L = d).
// weights: omitted means uniform 1/n.
GroupedMeasure build_grouped_measure(
    const Matrix& points,
    std::optional<std::vector<std::size_t>> group_widths = std::nullopt,
    std::optional<Vector> weights = std::nullopt);

// True when both measures carry the same support points with the same weights
// up to a reordering of the support.
bool measures_equal_up_to_permutation(const GroupedMeasure& lhs,
                                      const GroupedMeasure& rhs,
                                      double tol = 1e-9);

enum class CostKind {
  squared_euclidean,
  euclidean,
  l1,
  cosine_normalized,
  // Matrices supplied directly by the caller.
  precomputed,
};

std::string_view to_string(CostKind kind);
CostKind parse_cost_kind(std::string_view name);

/// Stack of L nonnegative n x m cost matrices, one per feature group.
/// Immutable once built.
class GroupedCost {
 public:
  // Validates shape agreement, finiteness and nonnegativity.
  static GroupedCost from_matrices(std::vector<Matrix> matrices,
                                   CostKind kind = CostKind::precomputed);

  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& operator[](std::size_t l) const { return matrices_[l]; }
  CostKind kind() const { return kind_; }

  std::size_t num_groups() const { return matrices_.size(); }
  Eigen::Index rows() const { return matrices_.front().rows(); }
  Eigen::Index cols() const { return matrices_.front().cols(); }

  // sum_l C_l
  Matrix total() const;
  // sum_l w_l C_l
  Matrix weighted_sum(const Vector& w) const;

 private:
  GroupedCost(std::vector<Matrix> matrices, CostKind kind)
      : matrices_(std::move(matrices)), kind_(kind) {}

  std::vector<Matrix> matrices_;
  CostKind kind_;
};

// Per-group cost matrices between src and dst support points.
// cosine_normalized rescales each group slice to unit norm and uses
// 2 - 2 <f_i, f_j>, so entries lie in [0, 4].
GroupedCost build_grouped_cost(const GroupedMeasure& src,
                               const GroupedMeasure& dst, CostKind kind);

// Cost between full support vectors (all groups at once).
Matrix pairwise_cost(const Matrix& xs, const Matrix& ys, CostKind kind);

/// Nonnegative coupling together with its marginal violation.
struct TransportPlan {
  Matrix matrix;
  // max(||P 1 - a||_1, ||P^T 1 - b||_1)
  double marginal_residual = 0.0;

  static TransportPlan from_matrix(Matrix plan, const Vector& a,
                                   const Vector& b);

  double total_mass() const { return matrix.sum(); }
  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

double marginal_residual(const Matrix& plan, const Vector& a, const Vector& b);

// a b^T
Matrix product_coupling(const Vector& a, const Vector& b);

// Checks a probability vector: finite, nonnegative, sums to one within tol.
void require_probability_vector(const Vector& w, std::string_view name,
                                double tol = 1e-9);

}  // namespace frot
