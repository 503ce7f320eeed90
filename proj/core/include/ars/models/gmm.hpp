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

#ifndef ARS_MODELS_GMM_HPP
#define ARS_MODELS_GMM_HPP

#include <cmath>
#include <string_view>

#include "ars/diagnostics.hpp"
#include "ars/model.hpp"

/**
 * \file
 * \brief Two-component Gaussian mixture whose first component is drawn by
 * soft rejection from a wider base distribution.
 *
 *     u ~ Uniform(0, 1)
 *     loop "mixture":
 *       if u < pi1:
 *         mu ~ N(mu0_base, sigma0_base); u2 ~ Uniform(0, 1)
 *         accept iff u2 < alpha(mu)
 *       else:
 *         mu ~ N(mu2, sigma2); accept
 *     observe y_obs ~ N(mu, sigma_lik)
 *     return mu
 *
 * with alpha(x) = N(x; mu1, sigma1) / (M N(x; mu0_base, sigma0_base)) and M
 * the maximum of that ratio, so accepted draws follow N(mu1, sigma1).
 * u is drawn once, so the loop only repeats in the first branch.
 *
 * Sites: "u", "base.mu", "base.u2", "component2.mu"; observation "y".
 */

namespace ars {

struct GmmParams {
  double pi1 = 0.5;
  double mu1 = -1.0;
  double sigma1 = 1.0;
  double mu2 = 2.0;
  double sigma2 = 1.0;
  double mu0_base = 1.0;
  double sigma0_base = 2.0;
  double sigma_lik = std::sqrt(0.5);
  double y_obs = 0.0;
};

enum class GmmProposal {
  kPrior,          ///< every site proposes from its prior
  kFixed,          ///< "base.mu" from N(-2, 2)
  kPerfectBase,    ///< "base.mu" from N(mu1, sigma1)
  kPerfectPlusU2,  ///< as kPerfectBase, and "base.u2" from N(-0.5, 0.5) truncated to (0, 1)
};

[[nodiscard]] std::string_view to_string(GmmProposal preset) noexcept;
/// \throws ConfigError unless name is prior, fixed, perfect_base or perfect_plus_u2.
[[nodiscard]] GmmProposal parse_gmm_proposal(std::string_view name);

/// \throws EnvelopeInfinite if the envelope constant is unbounded.
/// \throws InvalidDistribution for invalid scales or pi1 outside (0, 1).
[[nodiscard]] ModelProgram build_gmm(const GmmParams& params, GmmProposal preset = GmmProposal::kFixed);

/// M = max_x N(x; mu1, sigma1) / N(x; mu0_base, sigma0_base).
/**
 * The log ratio is a concave quadratic when sigma0_base > sigma1, maximized at
 * x* = (mu1 / sigma1^2 - mu0_base / sigma0_base^2) / (1 / sigma1^2 - 1 / sigma0_base^2).
 * Identical target and base give M = 1.
 * \throws EnvelopeInfinite otherwise.
 */
[[nodiscard]] double gmm_envelope_constant(const GmmParams& params);

/// alpha(x), the soft-rejection acceptance probability of a base draw.
[[nodiscard]] double gmm_alpha(const GmmParams& params, double x);

struct GmmAcceptance {
  double prior;     ///< p(A) = 1 / M
  double proposal;  ///< q(A) under the preset, by quadrature
};

/// Acceptance probabilities of one first-branch loop iteration.
[[nodiscard]] GmmAcceptance gmm_acceptance_probability(const GmmParams& params, GmmProposal preset);

/// sum_i w_i m_i with m_i = (sigma_i^2 y + sigma_lik^2 mu_i) / (sigma_i^2 + sigma_lik^2)
/// and w_i proportional to pi_i N(y; mu_i, sqrt(sigma_i^2 + sigma_lik^2)).
[[nodiscard]] double gmm_true_posterior_mean(const GmmParams& params);

/// First-branch loop with u2 integrated out: accept(mu) = alpha(mu).
/// \throws ConfigError for kPerfectPlusU2, whose u2 proposal makes the loop two-dimensional.
[[nodiscard]] LoopSite gmm_loop_site(const GmmParams& params, GmmProposal preset);

}  // namespace ars

#endif
