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

#ifndef ARS_TRACE_HPP
#define ARS_TRACE_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ars/address.hpp"
#include "ars/distributions.hpp"
#include "ars/ledger.hpp"

namespace ars {

/// Where `sample` draws come from and whether they touch the weight ledger.
enum class ExecutionMode {
  kPriorOnly,            ///< every site draws from its prior; ledger active
  kProposal,             ///< registered proposals replace priors; ledger active
  kScopeReplayPrior,     ///< loop re-execution from the prior; no ledger
  kScopeReplayProposal,  ///< loop re-execution from the proposal; no ledger
};

[[nodiscard]] std::string_view to_string(ExecutionMode mode) noexcept;

[[nodiscard]] constexpr bool is_replay(ExecutionMode mode) noexcept {
  return mode == ExecutionMode::kScopeReplayPrior || mode == ExecutionMode::kScopeReplayProposal;
}

struct Choice {
  Address address;
  Dist prior;
  Dist dist_used;
  double value;
  ExecutionMode mode;

  friend bool operator==(const Choice&, const Choice&) = default;
};

struct Observation {
  Address address;
  Dist likelihood;
  double value;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Acceptance-correction statistics of one loop execution (amortized estimator).
struct CorrectionStats {
  int accepted_proposal_runs = 0;  ///< K
  int proposal_runs = 0;           ///< N
  std::vector<int> trials;         ///< T_j, one per replication

  [[nodiscard]] double mean_trials() const noexcept;
  /// K * mean(T) / N.
  [[nodiscard]] double factor() const noexcept;

  friend bool operator==(const CorrectionStats&, const CorrectionStats&) = default;
};

struct ScopeStats {
  int accepted_iteration = 0;  ///< L, 1-based
  std::optional<CorrectionStats> correction;

  friend bool operator==(const ScopeStats&, const ScopeStats&) = default;
};

/// Counters that do not affect the weight.
struct TraceDiagnostics {
  std::uint64_t loop_iterations = 0;
  std::uint64_t replay_executions = 0;
  std::uint64_t zero_corrections = 0;  ///< loops whose K was 0 (weight forced to 0)
  std::uint64_t ledger_checks = 0;     ///< replay batches verified not to touch the ledger

  friend bool operator==(const TraceDiagnostics&, const TraceDiagnostics&) = default;
};

/// One complete program execution.
struct TraceRecord {
  std::vector<Choice> choices;  // empty unless choice recording is enabled
  std::vector<Observation> observations;
  WeightLedger ledger;
  std::vector<std::pair<ScopeId, ScopeStats>> scope_stats;  // in completion order
  double return_value = 0.0;
  TraceDiagnostics diagnostics;

  [[nodiscard]] const ScopeStats* find_scope(const ScopeId& id) const noexcept;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

}  // namespace ars

#endif
