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

#ifndef ARS_ERROR_HPP
#define ARS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

/**
 * \file
 * \brief Exception types raised by the runtime.
 *
 * Every error derives from ars::Error so callers can catch the whole family at
 * an API boundary (the CLI does this) while tests match on the concrete type.
 */

namespace ars {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distribution parameters violate their constraints (std <= 0, high <= low, ...).
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

/// The same address was produced twice within one trace.
class DuplicateAddress : public Error {
 public:
  using Error::Error;
};

/// `observe` was called while a rejection scope was open.
class ObserveInsideScope : public Error {
 public:
  using Error::Error;
};

/// A proposal does not cover the prior's support at a site.
class ProposalSupportViolation : public Error {
 public:
  using Error::Error;
};

/// A rejection loop reached its iteration cap without accepting.
class ScopeIterationCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A pinned (conditioned) value set was rejected by the scope condition.
class PinnedValueRejected : public Error {
 public:
  using Error::Error;
};

/// The model does not provide the exact conditionals needed for collapsed weighing.
class OracleUnavailable : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its requested tolerance.
class QuadratureNonconvergent : public Error {
 public:
  using Error::Error;
};

/// Soft-rejection envelope is unbounded (base narrower than target).
class EnvelopeInfinite : public Error {
 public:
  using Error::Error;
};

/// Effective sample size requested for a weight set with no positive entry.
class AllWeightsZero : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment or CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed. Indicates a bug in the runtime.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Rethrows the exception in flight as the same ars::Error subclass with
/// \p context prepended to its message. Other exceptions propagate unchanged.
/// Must be called from inside a catch block.
[[noreturn]] void rethrow_with_context(std::string_view context);

}  // namespace ars

#endif
