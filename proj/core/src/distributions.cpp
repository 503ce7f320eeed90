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

#include "ars/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "ars/error.hpp"

namespace ars {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))
constexpr double kInverseCdfMinMass = 1e-3;

// Standard normal density, with phi(+-inf) = 0.
double phi(double z) noexcept { return std::isinf(z) ? 0.0 : std::exp(normal_log_pdf(z)); }

// z * phi(z), with the limit 0 at +-inf.
double z_phi(double z) noexcept { return std::isinf(z) ? 0.0 : z * phi(z); }

void require(bool ok, const char* what) {
  if (!ok) {
    throw InvalidDistribution(what);
  }
}

// Robert (1995) rejection on (a, b) with 0 <= a < b.
double sample_upper_tail(double a, double b, RngStream& rng) {
  const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
  const double uniform_bound =
      a + 2.0 / rate * std::exp(0.25 * (a * a - a * std::sqrt(a * a + 4.0)) + 0.5);
  if (b < uniform_bound) {
    for (;;) {
      const double x = a + (b - a) * rng.uniform_open01();
      if (rng.uniform_open01() <= std::exp(0.5 * (a * a - x * x))) {
        return x;
      }
    }
  }
  for (;;) {
    const double x = a - std::log(rng.uniform_open01()) / rate;
    if (x >= b) {
      continue;
    }
    const double d = x - rate;
    if (rng.uniform_open01() <= std::exp(-0.5 * d * d)) {
      return x;
    }
  }
}

}  // namespace

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * std::numbers::sqrt2 * 0.5); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x * std::numbers::sqrt2 * 0.5); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidDistribution("normal_quantile: p must lie in (0, 1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double normal_log_pdf(double z) noexcept { return -0.5 * z * z - kLogSqrt2Pi; }

double normal_mass(double a, double b) noexcept {
  if (!(a < b)) {
    return 0.0;
  }
  if (a >= 0.0) {
    return normal_sf(a) - normal_sf(b);
  }
  if (b <= 0.0) {
    return normal_cdf(b) - normal_cdf(a);
  }
  return 1.0 - normal_cdf(a) - normal_sf(b);
}

double sample_standard_truncated_normal(double a, double b, RngStream& rng) {
  const double mass = normal_mass(a, b);
  if (mass >= kInverseCdfMinMass) {
    const double u = rng.uniform_open01();
    double x = 0.0;
    if (a >= 0.0) {
      const double sf_a = normal_sf(a);
      x = -normal_quantile(sf_a - u * mass);
    } else {
      x = normal_quantile(normal_cdf(a) + u * mass);
    }
    return std::clamp(x, a, b);
  }
  if (a >= 0.0) {
    return sample_upper_tail(a, b, rng);
  }
  if (b <= 0.0) {
    return -sample_upper_tail(-b, -a, rng);
  }
  // Narrow interval straddling zero: uniform envelope, acceptance >= exp(-max(a^2, b^2) / 2).
  for (;;) {
    const double x = a + (b - a) * rng.uniform_open01();
    if (rng.uniform_open01() <= std::exp(-0.5 * x * x)) {
      return x;
    }
  }
}

Dist Dist::normal(double mean, double std) {
  require(std::isfinite(mean), "Normal: mean must be finite");
  require(std::isfinite(std) && std > 0.0, "Normal: std must be positive and finite");
  return Dist{NormalParams{mean, std}};
}

Dist Dist::uniform(double low, double high) {
  require(std::isfinite(low) && std::isfinite(high), "Uniform: bounds must be finite");
  require(low < high, "Uniform: requires low < high");
  return Dist{UniformParams{low, high}};
}

Dist Dist::truncated_normal(double mean, double std, double low, double high) {
  require(std::isfinite(mean), "TruncatedNormal: mean must be finite");
  require(std::isfinite(std) && std > 0.0, "TruncatedNormal: std must be positive and finite");
  require(!std::isnan(low) && !std::isnan(high) && low < high, "TruncatedNormal: requires low < high");
  const double mass = normal_mass((low - mean) / std, (high - mean) / std);
  require(mass > 0.0, "TruncatedNormal: truncation interval has zero probability mass");
  return Dist{TruncatedNormalParams{mean, std, low, high}, std::log(mass)};
}

Dist::Kind Dist::kind() const noexcept {
  switch (params_.index()) {
    case 0:
      return Kind::kNormal;
    case 1:
      return Kind::kUniform;
    default:
      return Kind::kTruncatedNormal;
  }
}

double Dist::sample(RngStream& rng) const {
  if (const auto* n = std::get_if<NormalParams>(&params_)) {
    return n->mean + n->std * normal_quantile(rng.uniform_open01());
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    return u->low + (u->high - u->low) * rng.uniform_open01();
  }
  const auto& t = std::get<TruncatedNormalParams>(params_);
  const double z = sample_standard_truncated_normal((t.low - t.mean) / t.std, (t.high - t.mean) / t.std, rng);
  return std::clamp(t.mean + t.std * z, t.low, t.high);
}

double Dist::log_pdf(double x) const noexcept {
  if (std::isnan(x)) {
    return -kInf;
  }
  if (const auto* n = std::get_if<NormalParams>(&params_)) {
    return normal_log_pdf((x - n->mean) / n->std) - std::log(n->std);
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    return (x < u->low || x > u->high) ? -kInf : -std::log(u->high - u->low);
  }
  const auto& t = std::get<TruncatedNormalParams>(params_);
  if (x < t.low || x > t.high || std::isinf(x)) {
    return -kInf;
  }
  return normal_log_pdf((x - t.mean) / t.std) - std::log(t.std) - log_mass_;
}

double Dist::cdf(double x) const noexcept {
  if (const auto* n = std::get_if<NormalParams>(&params_)) {
    return normal_cdf((x - n->mean) / n->std);
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    return std::clamp((x - u->low) / (u->high - u->low), 0.0, 1.0);
  }
  return mass(-kInf, x);
}

double Dist::mass(double low, double high) const noexcept {
  if (!(low < high)) {
    return 0.0;
  }
  if (const auto* n = std::get_if<NormalParams>(&params_)) {
    return normal_mass((low - n->mean) / n->std, (high - n->mean) / n->std);
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    const double lo = std::max(low, u->low);
    const double hi = std::min(high, u->high);
    return hi > lo ? (hi - lo) / (u->high - u->low) : 0.0;
  }
  const auto& t = std::get<TruncatedNormalParams>(params_);
  const double lo = std::max(low, t.low);
  const double hi = std::min(high, t.high);
  if (!(hi > lo)) {
    return 0.0;
  }
  return std::min(1.0, normal_mass((lo - t.mean) / t.std, (hi - t.mean) / t.std) / std::exp(log_mass_));
}

Interval Dist::support() const noexcept {
  if (std::holds_alternative<NormalParams>(params_)) {
    return {};
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    return {u->low, u->high};
  }
  const auto& t = std::get<TruncatedNormalParams>(params_);
  return {t.low, t.high};
}

double Dist::mean() const noexcept {
  if (const auto* n = std::get_if<NormalParams>(&params_)) {
    return n->mean;
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    return 0.5 * (u->low + u->high);
  }
  const auto& t = std::get<TruncatedNormalParams>(params_);
  const double a = (t.low - t.mean) / t.std;
  const double b = (t.high - t.mean) / t.std;
  return t.mean + t.std * (phi(a) - phi(b)) / std::exp(log_mass_);
}

double Dist::variance() const noexcept {
  if (const auto* n = std::get_if<NormalParams>(&params_)) {
    return n->std * n->std;
  }
  if (const auto* u = std::get_if<UniformParams>(&params_)) {
    const double w = u->high - u->low;
    return w * w / 12.0;
  }
  const auto& t = std::get<TruncatedNormalParams>(params_);
  const double a = (t.low - t.mean) / t.std;
  const double b = (t.high - t.mean) / t.std;
  const double z = std::exp(log_mass_);
  const double shift = (phi(a) - phi(b)) / z;
  return t.std * t.std * (1.0 + (z_phi(a) - z_phi(b)) / z - shift * shift);
}

std::string Dist::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Dist& d) {
  if (const auto* n = d.params<NormalParams>()) {
    return os << "Normal(" << n->mean << ", " << n->std << ")";
  }
  if (const auto* u = d.params<UniformParams>()) {
    return os << "Uniform(" << u->low << ", " << u->high << ")";
  }
  const auto* t = d.params<TruncatedNormalParams>();
  return os << "TruncatedNormal(" << t->mean << ", " << t->std << ", " << t->low << ", " << t->high << ")";
}

}  // namespace ars
