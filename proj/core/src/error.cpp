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

#include "ars/error.hpp"

#include <exception>

namespace ars {

namespace {

// Throws E with the prefixed message if the stored exception is an E.
template <class E>
void throw_if(const std::exception_ptr& current, const std::string& context) {
  try {
    std::rethrow_exception(current);
  } catch (const E& e) {
    throw E(context + e.what());
  } catch (...) {
  }
}

template <class... Errors>
[[noreturn]] void rethrow_as(const std::string& context) {
  const std::exception_ptr current = std::current_exception();
  (throw_if<Errors>(current, context), ...);
  throw_if<Error>(current, context);
  std::rethrow_exception(current);
}

}  // namespace

void rethrow_with_context(std::string_view context) {
  rethrow_as<InvalidDistribution, DuplicateAddress, ObserveInsideScope, ProposalSupportViolation,
             ScopeIterationCapExceeded, PinnedValueRejected, OracleUnavailable, QuadratureNonconvergent,
             EnvelopeInfinite, AllWeightsZero, ConfigError, InvariantViolation>(std::string(context) + ": ");
}

}  // namespace ars
