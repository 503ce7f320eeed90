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

#ifndef ARS_HARNESS_AGGREGATE_HPP
#define ARS_HARNESS_AGGREGATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ars/harness/experiment.hpp"

namespace ars {

/// Median and 10% / 90% quantiles (type 7) of one column across runs.
struct Band {
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;

  friend bool operator==(const Band&, const Band&) = default;
};

struct AggregateRow {
  std::string model;
  std::string estimator;
  std::string proposal_preset;
  std::uint64_t checkpoint_particles = 0;
  std::uint64_t runs = 0;
  Band posterior_mean_est;
  Band abs_error;
  Band ess;
  double zero_weight_fraction_median = 0.0;
};

/// Groups rows by (model, estimator, proposal_preset, checkpoint_particles), in
/// order of first appearance of each group. NaN estimates are kept, so a
/// band containing one is NaN.
[[nodiscard]] std::vector<AggregateRow> aggregate_runs(const std::vector<ExperimentRow>& rows);

[[nodiscard]] Band band_of(const std::vector<double>& values);

}  // namespace ars

#endif
