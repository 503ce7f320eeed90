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

#ifndef ARS_HARNESS_CSV_HPP
#define ARS_HARNESS_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ars/harness/aggregate.hpp"
#include "ars/harness/experiment.hpp"

/**
 * \file
 * \brief CSV encoding of experiment rows.
 *
 * Header row first, comma separated, "\n" line endings, no quoting (fields
 * never contain commas). Doubles use the shortest representation that parses
 * back to the same value, so write and parse round-trip exactly.
 */

namespace ars {

inline constexpr std::string_view kExperimentHeader =
    "model,estimator,proposal_preset,run_id,checkpoint_particles,posterior_mean_est,abs_error,ess,"
    "zero_weight_fraction,seed,wall_ms";

[[nodiscard]] std::string format_double(double value);

void write_rows(std::ostream& os, const std::vector<ExperimentRow>& rows);

/// \throws ConfigError on a header mismatch or a malformed line (with its line number).
[[nodiscard]] std::vector<ExperimentRow> parse_rows(std::istream& is);

void write_aggregates(std::ostream& os, const std::vector<AggregateRow>& rows);

}  // namespace ars

#endif
