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

#include "ars/harness/aggregate.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "ars/statistics.hpp"

namespace ars {

Band band_of(const std::vector<double>& values) {
  for (const double v : values) {
    if (std::isnan(v)) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      return Band{nan, nan, nan};
    }
  }
  return Band{quantile(values, 0.5), quantile(values, 0.1), quantile(values, 0.9)};
}

std::vector<AggregateRow> aggregate_runs(const std::vector<ExperimentRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::string, std::uint64_t>;
  struct Columns {
    std::vector<double> estimate, error, ess, zero;
  };
  std::map<Key, std::size_t> index;
  std::vector<Key> order;
  std::vector<Columns> columns;
  for (const auto& row : rows) {
    const Key key{row.model, row.estimator, row.proposal_preset, row.checkpoint_particles};
    auto [it, inserted] = index.try_emplace(key, order.size());
    if (inserted) {
      order.push_back(key);
      columns.emplace_back();
    }
    Columns& c = columns[it->second];
    c.estimate.push_back(row.posterior_mean_est);
    c.error.push_back(row.abs_error);
    c.ess.push_back(row.ess);
    c.zero.push_back(row.zero_weight_fraction);
  }

  std::vector<AggregateRow> out;
  out.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [model, estimator, preset, checkpoint] = order[i];
    const Columns& c = columns[i];
    out.push_back(AggregateRow{model, estimator, preset, checkpoint, c.estimate.size(), band_of(c.estimate),
                               band_of(c.error), band_of(c.ess), quantile(c.zero, 0.5)});
  }
  return out;
}

}  // namespace ars
