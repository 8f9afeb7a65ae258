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

#include "frot/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frot/wasserstein_1d.hpp"

namespace frot {

std::string_view to_string(RankingMethod m) {
  switch (m) {
    case RankingMethod::frot: return "frot";
    case RankingMethod::wasserstein_sort: return "wasserstein_sort";
    case RankingMethod::linear_correlation: return "linear_correlation";
  }
  return "unknown";
}

RankingMethod parse_ranking_method(std::string_view name) {
  if (name == "frot") return RankingMethod::frot;
  if (name == "wasserstein_sort" || name == "wasserstein")
    return RankingMethod::wasserstein_sort;
  if (name == "linear_correlation" || name == "correlation")
    return RankingMethod::linear_correlation;
  throw ValidationError("unknown ranking method: " + std::string(name));
}

std::vector<std::size_t> descending_order(const Vector& scores) {
  std::vector<std::size_t> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) {
                     return scores[static_cast<Eigen::Index>(l)] >
                            scores[static_cast<Eigen::Index>(r)];
                   });
  return order;
}

namespace {

void check_classes(const Matrix& class1, const Matrix& class2) {
  if (class1.rows() == 0 || class2.rows() == 0)
    throw ValidationError("feature selection: empty class");
  if (class1.cols() == 0)
    throw ValidationError("feature selection: no features");
  if (class1.cols() != class2.cols())
    throw ValidationError("feature selection: classes differ in dimension");
  if (!class1.allFinite() || !class2.allFinite())
    throw ValidationError("feature selection: non-finite samples");
}

std::vector<double> column(const Matrix& m, Eigen::Index c) {
  std::vector<double> v(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) v[r] = m(r, c);
  return v;
}

}  // namespace

FeatureRanking frot_feature_importance(const Matrix& class1,
                                       const Matrix& class2,
                                       const FeatureImportanceConfig& cfg) {
  check_classes(class1, class2);
  const Eigen::Index d = class1.cols();
  std::vector<Matrix> mats;
  mats.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index l = 0; l < d; ++l) {
    Matrix c(class1.rows(), class2.rows());
    for (Eigen::Index j = 0; j < class2.rows(); ++j)
      c.col(j) = (class1.col(l).array() - class2(j, l)).square().matrix();
    mats.push_back(std::move(c));
  }
  const GroupedCost costs =
      GroupedCost::from_matrices(std::move(mats), CostKind::squared_euclidean);

  FrotConfig fw;
  fw.eta = cfg.eta;
  fw.fw_iters = cfg.fw_iters;
  fw.subsolver = cfg.subsolver;
  const Vector a = Vector::Constant(class1.rows(), 1.0 / class1.rows());
  const Vector b = Vector::Constant(class2.rows(), 1.0 / class2.rows());
  const FrotSolution sol = frot_fw_solve(a, b, costs, fw);

  FeatureRanking r;
  r.method = RankingMethod::frot;
  r.importances = sol.alpha;
  r.order = descending_order(r.importances);
  return r;
}

std::vector<std::size_t> select_top_k(const FeatureRanking& ranking,
                                      std::size_t k) {
  if (k < 1 || k > ranking.order.size())
    throw ValidationError("select_top_k: k out of range");
  return {ranking.order.begin(),
          ranking.order.begin() + static_cast<std::ptrdiff_t>(k)};
}

FeatureRanking baseline_rank(const Matrix& class1, const Matrix& class2,
                             RankingMethod method) {
  check_classes(class1, class2);
  const Eigen::Index d = class1.cols();
  FeatureRanking r;
  r.method = method;
  r.importances = Vector::Zero(d);

  switch (method) {
    case RankingMethod::wasserstein_sort:
      for (Eigen::Index l = 0; l < d; ++l) {
        const auto xs = column(class1, l);
        const auto ys = column(class2, l);
        r.importances[l] = xs.size() == ys.size()
                               ? sorted_wasserstein_1d(xs, ys, 1.0)
                               : wasserstein_1d_exact(xs, ys, 1.0);
      }
      break;
    case RankingMethod::linear_correlation: {
      // Pearson correlation between the feature and the 0/1 class label.
      const double n1 = static_cast<double>(class1.rows());
      const double n2 = static_cast<double>(class2.rows());
      const double n = n1 + n2;
      for (Eigen::Index l = 0; l < d; ++l) {
        const double mean1 = class1.col(l).mean();
        const double mean2 = class2.col(l).mean();
        const double mean = (n1 * mean1 + n2 * mean2) / n;
        const double ss = (class1.col(l).array() - mean).square().sum() +
                          (class2.col(l).array() - mean).square().sum();
        if (!(ss > 1e-300)) continue;  // constant feature
        const double sd_x = std::sqrt(ss / n);
        const double p = n2 / n;
        // Label 1 for class2.
        const double cov = p * (1.0 - p) * (mean2 - mean1);
        const double sd_y = std::sqrt(p * (1.0 - p));
        r.importances[l] = std::abs(cov / (sd_x * sd_y));
      }
      break;
    }
    case RankingMethod::frot:
      throw ValidationError(
          "baseline_rank: frot is not a baseline; use "
          "frot_feature_importance");
  }
  r.order = descending_order(r.importances);
  return r;
}

Standardizer Standardizer::fit(const Matrix& samples) {
  if (samples.rows() == 0)
    throw ValidationError("standardizer: no samples to fit");
  Standardizer s;
  s.mean = samples.colwise().mean().transpose();
  s.scale = Vector::Ones(samples.cols());
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    const double var =
        (samples.col(c).array() - s.mean[c]).square().sum() /
        static_cast<double>(samples.rows());
    if (var > 0.0) s.scale[c] = std::sqrt(var);
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& samples) const {
  if (samples.cols() != mean.size())
    throw ValidationError("standardizer: dimension mismatch");
  Matrix out = samples.rowwise() - mean.transpose();
  return out.array().rowwise() / scale.transpose().array();
}

}  // namespace frot
