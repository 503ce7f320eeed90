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

#ifndef ARS_MODELS_GUM_HPP
#define ARS_MODELS_GUM_HPP

#include <cmath>
#include <string_view>

#include "ars/diagnostics.hpp"
#include "ars/model.hpp"

/**
 * \file
 * \brief Gaussian unknown mean with a rejection-sampled split prior.
 *
 *     u ~ Uniform(0, 1)
 *     if u > 0.5:  repeat mu ~ N(mu0, sigma0) until mu > mu0    (loop "branch1")
 *     else:        repeat mu ~ N(mu0, sigma0) until mu <= mu0   (loop "branch2")
 *     observe y_obs ~ N(mu, sigma)
 *     return mu
 *
 * Sites: "u", "branch1.mu", "branch2.mu"; observation "y".
 */

namespace ars {

struct GumParams {
  double mu0 = 0.0;
  double sigma0 = 1.0;
  double sigma = std::sqrt(0.5);
  double y_obs = 0.0;
};

enum class GumProposal {
  kPrior,  ///< every site proposes from its prior
  kFixed,  ///< "branch1.mu" proposes from N(-2, 2)
};

[[nodiscard]] std::string_view to_string(GumProposal preset) noexcept;
/// \throws ConfigError for an unknown name ("prior", "fixed").
[[nodiscard]] GumProposal parse_gum_proposal(std::string_view name);

/// Builds the program with its proposals and the exact loop-acceptance oracle.
/// \throws InvalidDistribution for non-positive scales.
[[nodiscard]] ModelProgram build_gum(const GumParams& params, GumProposal preset = GumProposal::kFixed);

/// Conjugate posterior mean (sigma0^2 y + sigma^2 mu0) / (sigma0^2 + sigma^2).
[[nodiscard]] double gum_true_posterior_mean(const GumParams& params) noexcept;

/// Loop draw distributions and acceptance rule of "branch1" or "branch2".
/// \throws ConfigError for any other scope label.
[[nodiscard]] LoopSite gum_loop_site(const GumParams& params, GumProposal preset, std::string_view scope);

/// Pinned values selecting `scope` with the loop draw `mu`.
[[nodiscard]] std::map<std::string, double, std::less<>> gum_fixture(std::string_view scope, double mu);

}  // namespace ars

#endif
