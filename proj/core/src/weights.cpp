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

#include "ars/weights.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ars/error.hpp"

namespace ars {

namespace {

double site_log_ratio(const Choice& c) {
  const double log_p = c.prior.log_pdf(c.value);
  if (log_p == -kInf) {
    return -kInf;
  }
  return log_p - c.dist_used.log_pdf(c.value);
}

}  // namespace

FinalWeight finalize_weight(const WeightLedger& ledger) noexcept {
  const double log_weight = ledger.total_log_weight();
  return FinalWeight{log_weight, log_weight == -kInf ? 0.0 : std::exp(log_weight)};
}

double collapsed_log_weight(const ModelProgram& model, const TraceRecord& trace) {
  if (!model.oracle()) {
    throw OracleUnavailable("model '" + model.name() + "' provides no collapsed oracle");
  }
  if (trace.choices.empty() && !trace.scope_stats.empty()) {
    throw OracleUnavailable("collapsed weight needs a trace recorded with choices");
  }

  double total = 0.0;
  for (const auto& choice : trace.choices) {
    if (choice.address.top_level()) {
      total += site_log_ratio(choice);
    }
  }

  for (const auto& [id, stats] : trace.scope_stats) {
    const ScopeFrameKey accepted_key{id.label, id.instance, static_cast<std::uint32_t>(stats.accepted_iteration)};
    std::vector<Choice> accepted;
    for (const auto& choice : trace.choices) {
      if (choice.address.path.empty() || choice.address.path.front() != accepted_key) {
        continue;
      }
      if (choice.address.path.size() > 1) {
        throw OracleUnavailable("collapsed weight does not support nested rejection scopes");
      }
      accepted.push_back(choice);
    }
    if (accepted.empty()) {
      std::ostringstream os;
      os << "no recorded choices for the accepted iteration of " << id;
      throw OracleUnavailable(os.str());
    }
    double ratio = 0.0;
    for (const auto& choice : accepted) {
      ratio += site_log_ratio(choice);
    }
    const AcceptanceProbabilities exact = model.oracle()(AcceptanceQuery{id, accepted, trace});
    // p(z | x, A) / q(z | x, A, y) = [p(z | x) / p(A | x)] / [q(z | x, y) / q(A | x, y)]
    total += ratio - exact.log_prior_accept + exact.log_proposal_accept;
  }

  for (const auto& obs : trace.observations) {
    total += obs.likelihood.log_pdf(obs.value);
  }
  return std::isnan(total) ? -kInf : total;
}

}  // namespace ars
