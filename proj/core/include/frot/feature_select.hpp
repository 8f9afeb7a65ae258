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
#include "frot/types.hpp"

namespace frot {

enum class RankingMethod { frot, wasserstein_sort, linear_correlation };

std::string_view to_string(RankingMethod m);
RankingMethod parse_ranking_method(std::string_view name);

struct FeatureRanking {
  Vector importances;
  // Feature indices by descending importance, ties toward the lower index.
  std::vector<std::size_t> order;
  RankingMethod method = RankingMethod::frot;
};

struct FeatureImportanceConfig {
  double eta = 1.0;
  int fw_iters = 10;
  Subsolver subsolver = Subsolver::entropic(0.02);
  // Recorded only; the data is used as given.
  bool standardized = false;
};

// Stable descending order of scores; equal scores keep index order.
std::vector<std::size_t> descending_order(const Vector& scores);

// FROT on singleton feature groups with [C_l]_ij = (x_il - y_jl)^2.
// class1 is n x d, class2 is m x d, rows are samples.
FeatureRanking frot_feature_importance(const Matrix& class1,
                                       const Matrix& class2,
                                       const FeatureImportanceConfig& cfg = {});

std::vector<std::size_t> select_top_k(const FeatureRanking& ranking,
                                      std::size_t k);

// Per-feature 1-D Wasserstein (p = 1; sorting when sample counts match,
// quantile coupling otherwise) or |point-biserial correlation| with the class
// label. Constant features score 0 under linear_correlation.
FeatureRanking baseline_rank(const Matrix& class1, const Matrix& class2,
                             RankingMethod method);

struct Standardizer {
  Vector mean;
  // Zero-variance features keep scale 1.
  Vector scale;

  static Standardizer fit(const Matrix& samples);
  Matrix apply(const Matrix& samples) const;
};

}  // namespace frot
