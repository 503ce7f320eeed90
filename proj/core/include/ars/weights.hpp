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

#ifndef ARS_WEIGHTS_HPP
#define ARS_WEIGHTS_HPP

#include "ars/ledger.hpp"
#include "ars/model.hpp"
#include "ars/trace.hpp"

namespace ars {

struct FinalWeight {
  double log_weight;  ///< may be -inf
  double weight;      ///< exp(log_weight), 0 when log_weight is -inf
};

/// Multiplies out a ledger. An empty ledger has weight 1.
[[nodiscard]] FinalWeight finalize_weight(const WeightLedger& ledger) noexcept;

/// Collapsed (exact) log weight of a complete trace.
/**
 * Recomputes the weight from the recorded choices instead of the ledger:
 * prior/proposal ratios of the sites outside loops, and for every loop the
 * ratio of truncated conditionals p(z | x, A) / q(z | x, A, y) evaluated on
 * the accepted iteration, with the acceptance probabilities supplied by the
 * model's oracle; plus the observation log-likelihoods.
 *
 * Requires a trace recorded with choices and only top-level loops.
 * \throws OracleUnavailable if the model has no oracle or the trace lacks choices.
 */
[[nodiscard]] double collapsed_log_weight(const ModelProgram& model, const TraceRecord& trace);

}  // namespace ars

#endif
