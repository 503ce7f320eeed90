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

#include "ars/trace.hpp"

#include <algorithm>
#include <numeric>

namespace ars {

std::string_view to_string(ExecutionMode mode) noexcept {
  switch (mode) {
    case ExecutionMode::kPriorOnly:
      return "PRIOR_ONLY";
    case ExecutionMode::kProposal:
      return "PROPOSAL";
    case ExecutionMode::kScopeReplayPrior:
      return "SCOPE_REPLAY_PRIOR";
    case ExecutionMode::kScopeReplayProposal:
      return "SCOPE_REPLAY_PROPOSAL";
  }
  return "UNKNOWN";
}

double CorrectionStats::mean_trials() const noexcept {
  if (trials.empty()) {
    return 0.0;
  }
  const double total = std::accumulate(trials.begin(), trials.end(), 0.0);
  return total / static_cast<double>(trials.size());
}

double CorrectionStats::factor() const noexcept {
  if (proposal_runs == 0) {
    return 0.0;
  }
  return static_cast<double>(accepted_proposal_runs) * mean_trials() / static_cast<double>(proposal_runs);
}

const ScopeStats* TraceRecord::find_scope(const ScopeId& id) const noexcept {
  const auto it = std::ranges::find(scope_stats, id, &std::pair<ScopeId, ScopeStats>::first);
  return it == scope_stats.end() ? nullptr : &it->second;
}

}  // namespace ars
