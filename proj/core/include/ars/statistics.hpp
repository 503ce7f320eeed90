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

#ifndef ARS_STATISTICS_HPP
#define ARS_STATISTICS_HPP

#include <cstdint>
#include <span>

#include <boost/accumulators/accumulators.hpp>
#include <boost/accumulators/statistics/count.hpp>
#include <boost/accumulators/statistics/error_of_mean.hpp>
#include <boost/accumulators/statistics/mean.hpp>
#include <boost/accumulators/statistics/stats.hpp>
#include <boost/accumulators/statistics/variance.hpp>

namespace ars {

/// Streaming mean, unbiased variance and standard error of the mean.
class RunningMoments {
 public:
  void add(double x) { acc_(x); }

  [[nodiscard]] std::uint64_t count() const;
  [[nodiscard]] double mean() const;
  /// Sample variance with the n - 1 denominator; 0 for fewer than two values.
  [[nodiscard]] double variance() const;
  /// 0 for fewer than two values.
  [[nodiscard]] double standard_error() const;

 private:
  boost::accumulators::accumulator_set<
      double, boost::accumulators::stats<boost::accumulators::tag::count, boost::accumulators::tag::mean,
                                         boost::accumulators::tag::variance>>
      acc_;
};

/// (sum w)^2 / sum w^2.
/// \throws AllWeightsZero if no weight is positive.
/// \throws std::invalid_argument on a negative or non-finite weight.
[[nodiscard]] double ess(std::span<const double> weights);

/// Same quantity from running sums, where the weights were scaled by a common factor.
[[nodiscard]] double ess_from_sums(double sum_w, double sum_w2);

/// Quantile with linear interpolation between order statistics
/// (h = (n - 1) p, the "type 7" rule). Input need not be sorted.
/// \throws std::invalid_argument for empty input or p outside [0, 1].
[[nodiscard]] double quantile(std::span<const double> values, double p);

}  // namespace ars

#endif
