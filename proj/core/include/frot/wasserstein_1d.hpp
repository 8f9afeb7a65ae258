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

#include <span>

namespace frot {

// (mean_i |x_(i) - y_(i)|^p)^(1/p) over sorted samples. Requires equal sizes.
double sorted_wasserstein_1d(std::span<const double> xs,
                             std::span<const double> ys, double p);

// Exact p-Wasserstein distance between two uniform empirical measures on the
// line with possibly different sample counts, via the monotone (quantile)
// coupling.
double wasserstein_1d_exact(std::span<const double> xs,
                            std::span<const double> ys, double p);

}  // namespace frot
