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

#ifndef ARS_DIAGNOSTICS_HPP
#define ARS_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "ars/distributions.hpp"
#include "ars/estimator.hpp"
#include "ars/model.hpp"

namespace ars {

/// Probability that the loop condition holds given the loop draw z.
/// Deterministic conditions return 0 or 1.
using AcceptProbability = std::function<double(double z)>;

struct SpqMethod {
  enum class Kind { kQuadrature, kMonteCarlo };

  static SpqMethod quadrature() noexcept { return SpqMethod{Kind::kQuadrature, 0, 0}; }
  static SpqMethod monte_carlo(std::uint64_t samples, std::uint64_t seed) noexcept {
    return SpqMethod{Kind::kMonteCarlo, samples, seed};
  }

  Kind kind;
  std::uint64_t samples;
  std::uint64_t seed;
};

struct SpqEstimate {
  double value;
  double std_error;    ///< Monte Carlo standard error; 0 for quadrature
  double error_bound;  ///< quadrature error estimate; 0 for Monte Carlo

  /// The naive weight has infinite variance when S >= 1.
  [[nodiscard]] bool infinite_variance() const noexcept { return value >= 1.0; }
};

/// S = E_{z ~ q}[ (p(z) / q(z))^2 (1 - p(A | z)) ].
/**
 * The quadrature integrates p(z)^2 / q(z) (1 - p(A | z)) over the proposal
 * mean +- 12 proposal standard deviations, intersected with both supports,
 * to an absolute tolerance of 1e-8.
 *
 * \throws QuadratureNonconvergent if the tolerance is not met or the integrand
 *         has not decayed at the ends of the truncated domain.
 * \throws ProposalSupportViolation if q vanishes where p does not.
 */
[[nodiscard]] SpqEstimate compute_s_pq(const Dist& prior, const Dist& proposal, const AcceptProbability& accept,
                                       const SpqMethod& method);

/// One-site rejection loop: z ~ prior (or proposal), accepted with probability accept(z).
struct LoopSite {
  Dist prior;
  Dist proposal;
  AcceptProbability accept;
};

[[nodiscard]] inline SpqEstimate compute_s_pq(const LoopSite& site, const SpqMethod& method) {
  return compute_s_pq(site.prior, site.proposal, site.accept, method);
}

struct ConditionalMean {
  double mean;
  double std_error;
  std::uint64_t replications;
  std::uint64_t zero_weights;
};

/// Mean of an estimator's weight with the sites in `pinned` held fixed.
/**
 * Every replication runs the model in proposal mode with a fresh particle
 * stream. Pinned top-level sites always take their pinned value; pinned loop
 * sites take it on the accepted iteration, so only the rejected iterations
 * and the correction replays vary between replications.
 *
 * \throws OracleUnavailable for the collapsed estimator on a model without an oracle.
 */
[[nodiscard]] ConditionalMean conditional_mean_check(const ModelProgram& model, const EstimatorKind& estimator,
                                                     const std::map<std::string, double, std::less<>>& pinned,
                                                     std::uint64_t replications, std::uint64_t seed);

}  // namespace ars

#endif
