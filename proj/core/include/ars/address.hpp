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

#ifndef ARS_ADDRESS_HPP
#define ARS_ADDRESS_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ars {

/// Identity of one rejection loop execution: its label and the occurrence
/// count of that label within the trace.
struct ScopeId {
  std::string label;
  std::uint32_t instance = 0;

  friend auto operator<=>(const ScopeId&, const ScopeId&) = default;
};

/// One level of scope nesting in an address: which loop, and which iteration.
struct ScopeFrameKey {
  std::string label;
  std::uint32_t instance = 0;
  std::uint32_t iteration = 0;

  friend auto operator<=>(const ScopeFrameKey&, const ScopeFrameKey&) = default;
};

/// Structural address of a random choice or observation.
/**
 * Enclosing rejection scopes (outermost first) followed by the site label.
 * The same syntactic site in the same loop iteration yields the same address
 * on every replay.
 */
struct Address {
  std::vector<ScopeFrameKey> path;
  std::string label;

  [[nodiscard]] bool top_level() const noexcept { return path.empty(); }
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const Address&, const Address&) = default;
};

std::ostream& operator<<(std::ostream& os, const ScopeId& id);
std::ostream& operator<<(std::ostream& os, const Address& address);

}  // namespace ars

#endif
