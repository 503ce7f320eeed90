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

#ifndef ARS_LEDGER_HPP
#define ARS_LEDGER_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ars {

/// Origin of a multiplicative weight factor.
enum class FactorTag {
  kPriorRatio,   ///< p/q at a site outside any rejection loop
  kLoopRatio,    ///< p/q summed over the sites of one loop iteration
  kCorrection,   ///< acceptance-ratio correction for one loop
  kLikelihood,   ///< log-likelihood of one observation
};

[[nodiscard]] std::string_view to_string(FactorTag tag) noexcept;

struct WeightFactor {
  FactorTag tag;
  double log_value;    // may be -inf
  std::string origin;  // address or scope id

  friend bool operator==(const WeightFactor&, const WeightFactor&) = default;
};

/// Log-space record of every factor contributing to a particle weight.
class WeightLedger {
 public:
  void add(FactorTag tag, double log_value, std::string origin);
  void append(const WeightLedger& other);

  [[nodiscard]] const std::vector<WeightFactor>& factors() const noexcept { return factors_; }
  [[nodiscard]] std::size_t size() const noexcept { return factors_.size(); }
  [[nodiscard]] bool empty() const noexcept { return factors_.empty(); }

  /// Sum of all log factors; -inf as soon as any factor is -inf.
  [[nodiscard]] double total_log_weight() const noexcept;
  [[nodiscard]] double sum_of(FactorTag tag) const noexcept;
  [[nodiscard]] std::size_t count(FactorTag tag, std::string_view origin) const noexcept;
  [[nodiscard]] std::size_t count(FactorTag tag) const noexcept;

  /// Order-sensitive hash of the exact factor bit patterns.
  [[nodiscard]] std::uint64_t fingerprint() const noexcept;

  friend bool operator==(const WeightLedger&, const WeightLedger&) = default;

 private:
  std::vector<WeightFactor> factors_;
};

}  // namespace ars

#endif
