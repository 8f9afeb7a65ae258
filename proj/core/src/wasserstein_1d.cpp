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

#include "frot/wasserstein_1d.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "frot/types.hpp"

namespace frot {

namespace {

void check(std::span<const double> xs, std::span<const double> ys,
           double p) {
  if (xs.empty() || ys.empty())
    throw ValidationError("1-D Wasserstein: empty sample set");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("1-D Wasserstein: order p must be >= 1");
}

std::vector<double> sorted(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double sorted_wasserstein_1d(std::span<const double> xs,
                             std::span<const double> ys, double p) {
  check(xs, ys, p);
  if (xs.size() != ys.size())
    throw ValidationError(
        "sorted_wasserstein_1d: sample counts differ; use "
        "wasserstein_1d_exact");
  const auto sx = sorted(xs);
  const auto sy = sorted(ys);
  double acc = 0.0;
  for (std::size_t i = 0; i < sx.size(); ++i)
    acc += std::pow(std::abs(sx[i] - sy[i]), p);
  return std::pow(acc / static_cast<double>(sx.size()), 1.0 / p);
}

double wasserstein_1d_exact(std::span<const double> xs,
                            std::span<const double> ys, double p) {
  check(xs, ys, p);
  const auto sx = sorted(xs);
  const auto sy = sorted(ys);
  const double wx = 1.0 / static_cast<double>(sx.size());
  const double wy = 1.0 / static_cast<double>(sy.size());
  // Walk both quantile functions, moving the smaller remaining mass.
  std::size_t i = 0;
  std::size_t j = 0;
  double rx = wx;
  double ry = wy;
  double acc = 0.0;
  while (i < sx.size() && j < sy.size()) {
    const double mass = std::min(rx, ry);
    acc += mass * std::pow(std::abs(sx[i] - sy[j]), p);
    rx -= mass;
    ry -= mass;
    if (rx <= 1e-15 * wx) {
      ++i;
      rx = wx;
    }
    if (ry <= 1e-15 * wy) {
      ++j;
      ry = wy;
    }
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace frot
