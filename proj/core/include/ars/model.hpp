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

#ifndef ARS_MODEL_HPP
#define ARS_MODEL_HPP

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ars/address.hpp"
#include "ars/distributions.hpp"
#include "ars/trace.hpp"

namespace ars {

class Interpreter;

/// Model body. Returns the quantity whose posterior mean is estimated.
using ProgramEntry = std::function<double(Interpreter&)>;

/// Builds a proposal from the program's observed values.
using ProposalFactory = std::function<Dist(std::span<const double> observed)>;

/// Query passed to a collapsed oracle when a loop accepts.
struct AcceptanceQuery {
  const ScopeId& scope;
  std::span<const Choice> accepted;  ///< choices of the accepted iteration
  const TraceRecord& trace;          ///< trace so far (choices before the loop)
};

/// Exact acceptance probabilities of one loop given its entry state.
struct AcceptanceProbabilities {
  double log_prior_accept;     ///< log p(A | x)
  double log_proposal_accept;  ///< log q(A | x, y)
};

using CollapsedOracle = std::function<AcceptanceProbabilities(const AcceptanceQuery&)>;

/// A runnable model: its body, fixed proposals by site label, and an optional
/// exact-acceptance oracle.
class ModelProgram {
 public:
  ModelProgram(std::string name, ProgramEntry entry, std::vector<double> observed_values = {});

  /// Registers a proposal for every site with this label, in any loop iteration.
  ModelProgram& set_proposal(std::string label, Dist proposal);
  ModelProgram& set_proposal(std::string label, const ProposalFactory& factory);
  ModelProgram& set_oracle(CollapsedOracle oracle);

  [[nodiscard]] const Dist* proposal_for(std::string_view label) const noexcept;
  [[nodiscard]] bool has_proposals() const noexcept { return !proposals_.empty(); }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const ProgramEntry& entry() const noexcept { return entry_; }
  [[nodiscard]] std::span<const double> observed_values() const noexcept { return observed_; }
  [[nodiscard]] const CollapsedOracle& oracle() const noexcept { return oracle_; }

 private:
  std::string name_;
  ProgramEntry entry_;
  std::vector<double> observed_;
  std::map<std::string, Dist, std::less<>> proposals_;
  CollapsedOracle oracle_;
};

}  // namespace ars

#endif
