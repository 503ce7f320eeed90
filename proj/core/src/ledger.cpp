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

#include "ars/ledger.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include "ars/rng.hpp"

namespace ars {

std::string_view to_string(FactorTag tag) noexcept {
  switch (tag) {
    case FactorTag::kPriorRatio:
      return "PRIOR_RATIO";
    case FactorTag::kLoopRatio:
      return "LOOP_RATIO";
    case FactorTag::kCorrection:
      return "CORRECTION";
    case FactorTag::kLikelihood:
      return "LIKELIHOOD";
  }
  return "UNKNOWN";
}

void WeightLedger::add(FactorTag tag, double log_value, std::string origin) {
  factors_.push_back(WeightFactor{tag, log_value, std::move(origin)});
}

void WeightLedger::append(const WeightLedger& other) {
  factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
}

double WeightLedger::total_log_weight() const noexcept {
  double total = 0.0;
  for (const auto& f : factors_) {
    if (f.log_value == -std::numeric_limits<double>::infinity()) {
      return f.log_value;
    }
    total += f.log_value;
  }
  return total;
}

double WeightLedger::sum_of(FactorTag tag) const noexcept {
  double total = 0.0;
  for (const auto& f : factors_) {
    if (f.tag == tag) {
      total += f.log_value;
    }
  }
  return total;
}

std::size_t WeightLedger::count(FactorTag tag, std::string_view origin) const noexcept {
  return static_cast<std::size_t>(std::ranges::count_if(
      factors_, [&](const WeightFactor& f) { return f.tag == tag && f.origin == origin; }));
}

std::size_t WeightLedger::count(FactorTag tag) const noexcept {
  return static_cast<std::size_t>(
      std::ranges::count_if(factors_, [&](const WeightFactor& f) { return f.tag == tag; }));
}

std::uint64_t WeightLedger::fingerprint() const noexcept {
  std::uint64_t h = mix64(factors_.size());
  for (const auto& f : factors_) {
    h = mix64(h ^ static_cast<std::uint64_t>(f.tag));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(f.log_value));
    h = mix64(h ^ hash_label(f.origin));
  }
  return h;
}

}  // namespace ars
