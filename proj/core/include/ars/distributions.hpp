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

#ifndef ARS_DISTRIBUTIONS_HPP
#define ARS_DISTRIBUTIONS_HPP

#include <iosfwd>
#include <limits>
#include <string>
#include <variant>

#include "ars/rng.hpp"

/**
 * \file
 * \brief Univariate distributions used by the models and the oracles.
 *
 * All densities are natural-log densities. Values outside the support have
 * log density -infinity.
 */

namespace ars {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Standard normal CDF.
/**
 * Evaluated through the complementary error function identity
 * Phi(x) = erfc(-x / sqrt(2)) / 2, which keeps full relative precision in the
 * lower tail. The upper tail should go through normal_sf() instead of 1 - Phi.
 */
[[nodiscard]] double normal_cdf(double x) noexcept;

/// Standard normal survival function, 1 - Phi(x), without cancellation.
[[nodiscard]] double normal_sf(double x) noexcept;

/// Standard normal quantile for p in (0, 1).
[[nodiscard]] double normal_quantile(double p);

/// Standard normal log density.
[[nodiscard]] double normal_log_pdf(double z) noexcept;

/// Probability mass of the standard normal on (a, b), computed on the side
/// of zero that avoids cancellation.
[[nodiscard]] double normal_mass(double a, double b) noexcept;

/// Closed support interval [low, high] (endpoints may be infinite).
struct Interval {
  double low = -kInf;
  double high = kInf;

  [[nodiscard]] bool contains(const Interval& other) const noexcept {
    return low <= other.low && other.high <= high;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct NormalParams {
  double mean;
  double std;
  friend bool operator==(const NormalParams&, const NormalParams&) = default;
};

struct UniformParams {
  double low;
  double high;
  friend bool operator==(const UniformParams&, const UniformParams&) = default;
};

struct TruncatedNormalParams {
  double mean;
  double std;
  double low;
  double high;
  friend bool operator==(const TruncatedNormalParams&, const TruncatedNormalParams&) = default;
};

/// A validated univariate distribution value.
class Dist {
 public:
  enum class Kind { kNormal, kUniform, kTruncatedNormal };

  /// \throws InvalidDistribution if std <= 0 or a parameter is not finite.
  static Dist normal(double mean, double std);
  /// \throws InvalidDistribution unless low < high, both finite.
  static Dist uniform(double low, double high);
  /// Normal(mean, std) restricted to (low, high); bounds may be infinite.
  /// \throws InvalidDistribution if the restricted mass is zero.
  static Dist truncated_normal(double mean, double std, double low, double high);

  [[nodiscard]] Kind kind() const noexcept;

  [[nodiscard]] double sample(RngStream& rng) const;
  [[nodiscard]] double log_pdf(double x) const noexcept;
  [[nodiscard]] double cdf(double x) const noexcept;
  /// Probability of the interval (low, high].
  [[nodiscard]] double mass(double low, double high) const noexcept;
  [[nodiscard]] Interval support() const noexcept;
  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double variance() const noexcept;

  [[nodiscard]] std::string to_string() const;

  template <class T>
  [[nodiscard]] const T* params() const noexcept {
    return std::get_if<T>(&params_);
  }

  friend bool operator==(const Dist& lhs, const Dist& rhs) { return lhs.params_ == rhs.params_; }

 private:
  using Params = std::variant<NormalParams, UniformParams, TruncatedNormalParams>;

  explicit Dist(Params params, double log_mass = 0.0) : params_{params}, log_mass_{log_mass} {}

  Params params_;
  double log_mass_;  // log normalizer of the truncated normal
};

std::ostream& operator<<(std::ostream& os, const Dist& d);

/// Truncated normal draw on the standardized interval (a, b).
/**
 * Inverse-CDF when the interval mass is at least 1e-3, otherwise exact
 * exponential/uniform-envelope rejection (Robert, 1995) in the tail.
 */
[[nodiscard]] double sample_standard_truncated_normal(double a, double b, RngStream& rng);

}  // namespace ars

#endif
