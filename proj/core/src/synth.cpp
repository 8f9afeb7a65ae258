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

#include "frot/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace frot {

Matrix listed_covariance() {
  Matrix s(2, 2);
  s << 5.0, 4.0,
       1.0, 1.0;
  return s;
}

Matrix nearest_psd_covariance(const Matrix& s) {
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() *
         eig.eigenvectors().transpose();
}

namespace {

Matrix gaussian_block(Rng& rng, std::size_t rows, const Vector& mean,
                      const Matrix& factor) {
  const auto d = mean.size();
  Matrix out(static_cast<Eigen::Index>(rows), d);
  Vector z(d);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index k = 0; k < d; ++k) z[k] = rng.normal();
    out.row(i) = (mean + factor * z).transpose();
  }
  return out;
}

Matrix standard_normal_block(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index k = 0; k < out.cols(); ++k) out(i, k) = rng.normal();
  return out;
}

}  // namespace

SynthData synth_generate(const SynthOptions& opts) {
  if (opts.n == 0 || opts.m == 0)
    throw ValidationError("synth: sample counts must be positive");
  if (!opts.noise_free && opts.noise_dims == 0)
    throw ValidationError("synth: noisy data needs at least one noise dim");

  SynthData out;
  const Matrix listed = listed_covariance();
  out.covariance = nearest_psd_covariance(listed);
  {
    std::ostringstream note;
    note << "listed covariance [[5,4],[1,1]] is not symmetric; sampled with "
            "the nearest PSD matrix of its symmetrization "
            "[[5,2.5],[2.5,1]] (eigenvalues clipped at 0)";
    out.notes.push_back(note.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(out.covariance);
  const Matrix factor = eig.eigenvectors() *
                        eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  Vector mu_x(2);
  mu_x << -5.0, 0.0;
  Vector mu_y(2);
  mu_y << 5.0, 0.0;

  Rng rng_x = Rng::for_stream(opts.seed, "synth/source");
  Rng rng_y = Rng::for_stream(opts.seed, "synth/target");
  const Matrix x = gaussian_block(rng_x, opts.n, mu_x, factor);
  const Matrix y = gaussian_block(rng_y, opts.m, mu_y, factor);

  if (opts.noise_free) {
    out.src = build_grouped_measure(x, std::vector<std::size_t>{2});
    out.dst = build_grouped_measure(y, std::vector<std::size_t>{2});
    return out;
  }

  Rng rng_zx = Rng::for_stream(opts.seed, "synth/source-noise");
  Rng rng_zy = Rng::for_stream(opts.seed, "synth/target-noise");
  const auto nd = static_cast<Eigen::Index>(opts.noise_dims);
  Matrix xt(x.rows(), 2 + nd);
  Matrix yt(y.rows(), 2 + nd);
  xt << x, standard_normal_block(rng_zx, opts.n, opts.noise_dims);
  yt << y, standard_normal_block(rng_zy, opts.m, opts.noise_dims);
  const std::vector<std::size_t> widths{2, opts.noise_dims};
  out.src = build_grouped_measure(xt, widths);
  out.dst = build_grouped_measure(yt, widths);
  return out;
}

Matrix LabeledData::rows_with_label(int label) const {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) rows.push_back(static_cast<Eigen::Index>(i));
  Matrix out(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = features.row(rows[r]);
  return out;
}

LabeledData synth_labeled(const LabeledSynthOptions& opts) {
  if (opts.samples_per_class == 0 || opts.dims == 0)
    throw ValidationError("synth_labeled: sizes must be positive");
  if (opts.informative > opts.dims)
    throw ValidationError("synth_labeled: more informative dims than dims");

  Rng pick = Rng::for_stream(opts.seed, "labeled/informative");
  std::vector<std::size_t> dims(opts.dims);
  std::iota(dims.begin(), dims.end(), std::size_t{0});
  pick.shuffle(dims);
  std::vector<std::size_t> informative(dims.begin(),
                                       dims.begin() + opts.informative);
  std::sort(informative.begin(), informative.end());
  std::vector<double> shift(opts.dims, 0.0);
  for (std::size_t k : informative) shift[k] = opts.shift;

  LabeledData out;
  out.informative = informative;
  const std::size_t n = 2 * opts.samples_per_class;
  out.features.resize(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(opts.dims));
  Rng draw = Rng::for_stream(opts.seed, "labeled/samples");
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i < opts.samples_per_class ? 0 : 1;
    out.labels.push_back(label);
    const double sign = label == 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < opts.dims; ++k)
      out.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          sign * shift[k] + draw.normal();
  }
  for (std::size_t k = 0; k < opts.dims; ++k)
    out.columns.push_back("f" + std::to_string(k));
  return out;
}

Split train_test_split(std::size_t n, double train_fraction, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ValidationError("train_fraction must lie in (0, 1)");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  rng.shuffle(idx);
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  Split s;
  s.train.assign(idx.begin(), idx.begin() + n_train);
  s.test.assign(idx.begin() + n_train, idx.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

LabeledData subset_rows(const LabeledData& data,
                        const std::vector<std::size_t>& rows) {
  LabeledData out;
  out.columns = data.columns;
  out.informative = data.informative;
  out.features.resize(static_cast<Eigen::Index>(rows.size()),
                      data.features.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) =
        data.features.row(static_cast<Eigen::Index>(rows[r]));
    out.labels.push_back(data.labels.at(rows[r]));
  }
  return out;
}

LabeledData subset_columns(const LabeledData& data,
                           const std::vector<std::size_t>& cols) {
  LabeledData out;
  out.labels = data.labels;
  out.features.resize(data.features.rows(),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.features.col(static_cast<Eigen::Index>(c)) =
        data.features.col(static_cast<Eigen::Index>(cols[c]));
    out.columns.push_back(data.columns.at(cols[c]));
  }
  return out;
}

}  // namespace frot
