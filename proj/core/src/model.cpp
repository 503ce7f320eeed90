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

#include "ars/model.hpp"

#include <utility>

namespace ars {

ModelProgram::ModelProgram(std::string name, ProgramEntry entry, std::vector<double> observed_values)
    : name_{std::move(name)}, entry_{std::move(entry)}, observed_{std::move(observed_values)} {}

ModelProgram& ModelProgram::set_proposal(std::string label, Dist proposal) {
  proposals_.insert_or_assign(std::move(label), proposal);
  return *this;
}

ModelProgram& ModelProgram::set_proposal(std::string label, const ProposalFactory& factory) {
  return set_proposal(std::move(label), factory(observed_));
}

ModelProgram& ModelProgram::set_oracle(CollapsedOracle oracle) {
  oracle_ = std::move(oracle);
  return *this;
}

const Dist* ModelProgram::proposal_for(std::string_view label) const noexcept {
  const auto it = proposals_.find(label);
  return it == proposals_.end() ? nullptr : &it->second;
}

}  // namespace ars
