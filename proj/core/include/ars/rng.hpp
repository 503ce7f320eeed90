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

#ifndef ARS_RNG_HPP
#define ARS_RNG_HPP

#include <cstdint>
#include <limits>
#include <string_view>

namespace ars {

/// Counter-based random stream.
/**
 * The i-th output is `mix64(seed + (i + 1) * golden_gamma)`, i.e. SplitMix64
 * evaluated at an explicit counter. Outputs depend only on (seed, counter), so
 * a stream is reproducible across runs and platforms.
 *
 * Child streams are derived with split(): the child seed is a hash of the
 * parent seed and a key, so streams keyed by distinct labels do not overlap in
 * practice and never depend on how many draws the parent has consumed.
 *
 * Satisfies UniformRandomBitGenerator. Single owner; not thread safe.
 */
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept : seed_{seed} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }

  result_type next_u64() noexcept;

  /// Uniform double in the open interval (0, 1), 53 bits of resolution.
  double uniform_open01() noexcept;

  [[nodiscard]] RngStream split(std::uint64_t key) const noexcept;
  [[nodiscard]] RngStream split(std::string_view label) const noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a hash of a label, used to turn string keys into split keys.
[[nodiscard]] std::uint64_t hash_label(std::string_view label) noexcept;

}  // namespace ars

#endif
