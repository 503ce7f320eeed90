// Copyright 2026 The ars-ppl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ars/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ars/error.hpp"

namespace ars {

namespace acc = boost::accumulators;

std::uint64_t RunningMoments::count() const { return acc::count(acc_); }

double RunningMoments::mean() const { return count() == 0 ? 0.0 : acc::mean(acc_); }

double RunningMoments::variance() const {
  const auto n = static_cast<double>(count());
  return n < 2 ? 0.0 : acc::variance(acc_) * n / (n - 1.0);
}

double RunningMoments::standard_error() const {
  const auto n = static_cast<double>(count());
  return n < 2 ? 0.0 : std::sqrt(variance() / n);
}

double ess(std::span<const double> weights) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("ess: weights must be finite and non-negative");
    }
    sum += w;
    sum_sq += w * w;
  }
  return ess_from_sums(sum, sum_sq);
}

double ess_from_sums(double sum_w, double sum_w2) {
  if (!(sum_w > 0.0)) {
    throw AllWeightsZero("effective sample size is undefined when every weight is zero");
  }
  return sum_w * sum_w / sum_w2;
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) {
    throw std::invalid_argument("quantile of an empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace ars
