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

#include <cstdint>
#include <string>
#include <vector>

#include "frot/measures.hpp"
#include "frot/rng.hpp"

namespace frot {

struct SynthOptions {
  std::size_t n = 50;
  std::size_t m = 50;
  std::uint64_t seed = 0;
  // Emit only the two informative coordinates as a single group.
  bool noise_free = false;
  std::size_t noise_dims = 8;
};

struct SynthData {
  GroupedMeasure src;
  GroupedMeasure dst;
  // Covariance actually used for the informative coordinates.
  Matrix covariance;
  std::vector<std::string> notes;
};

// The 2 x 2 matrix with columns (5, 1) and (4, 1).
Matrix listed_covariance();

// Symmetrize (S + S^T) / 2, then clip negative eigenvalues to zero (the
// nearest PSD matrix in Frobenius norm).
Matrix nearest_psd_covariance(const Matrix& s);

/// Two Gaussian clouds with means (-5, 0) and (5, 0) sharing the repaired
/// listed covariance, each extended by `noise_dims` standard-normal noise
/// coordinates. Groups: {2 informative dims}, {noise dims}. The clean points
/// of a noise_free draw equal the first two columns of the noisy draw for the
/// same seed.
SynthData synth_generate(const SynthOptions& opts);

struct LabeledData {
  Matrix features;          // rows are samples
  std::vector<int> labels;  // 0 or 1
  std::vector<std::string> columns;
  // Features whose class-conditional means differ (synthetic data only).
  std::vector<std::size_t> informative;

  Matrix rows_with_label(int label) const;
};

struct LabeledSynthOptions {
  std::size_t samples_per_class = 50;
  std::size_t dims = 20;
  std::size_t informative = 2;
  // Informative features are N(-shift, 1) in class 0 and N(+shift, 1) in
  // class 1; the rest are N(0, 1) in both.
  double shift = 1.0;
  std::uint64_t seed = 0;
};

LabeledData synth_labeled(const LabeledSynthOptions& opts);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Shuffled split with round(train_fraction * n) training rows.
Split train_test_split(std::size_t n, double train_fraction, Rng& rng);

LabeledData subset_rows(const LabeledData& data,
                        const std::vector<std::size_t>& rows);
LabeledData subset_columns(const LabeledData& data,
                           const std::vector<std::size_t>& cols);

}  // namespace frot
