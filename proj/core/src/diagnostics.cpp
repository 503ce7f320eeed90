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

#include "ars/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"
#include "ars/quadrature.hpp"
#include "ars/rng.hpp"
#include "ars/statistics.hpp"
#include "ars/weights.hpp"

namespace ars {

namespace {

constexpr double kAbsTolerance = 1e-8;
constexpr double kDomainSigmas = 12.0;

// (p(z) / q(z))^2 q(z) (1 - a(z)); zero where p vanishes.
double integrand(const Dist& prior, const Dist& proposal, const AcceptProbability& accept, double z) {
  const double log_p = prior.log_pdf(z);
  if (log_p == -kInf) {
    return 0.0;
  }
  const double log_q = proposal.log_pdf(z);
  if (log_q == -kInf) {
    std::ostringstream os;
    os << "proposal " << proposal << " has zero density at " << z << " inside the support of " << prior;
    throw ProposalSupportViolation(os.str());
  }
  const double reject = 1.0 - accept(z);
  return reject == 0.0 ? 0.0 : std::exp(2.0 * log_p - log_q) * reject;
}

SpqEstimate by_quadrature(const Dist& prior, const Dist& proposal, const AcceptProbability& accept) {
  const double spread = kDomainSigmas * std::sqrt(proposal.variance());
  const Interval ps = prior.support();
  const Interval qs = proposal.support();
  const double a = std::max({proposal.mean() - spread, ps.low, qs.low});
  const double b = std::min({proposal.mean() + spread, ps.high, qs.high});
  if (!(a < b)) {
    return SpqEstimate{0.0, 0.0, 0.0};
  }
  const auto f = [&](double z) { return integrand(prior, proposal, accept, z); };

  // The truncated tails are only negligible if the integrand has decayed.
  const double width = b - a;
  const auto tail_ok = [&](double edge, double bound) {
    return edge == bound || f(edge) * width <= kAbsTolerance;
  };
  if (!tail_ok(a, std::max(ps.low, qs.low)) || !tail_ok(b, std::min(ps.high, qs.high))) {
    std::ostringstream os;
    os << "S integrand for prior " << prior << " and proposal " << proposal
       << " does not decay within " << kDomainSigmas << " proposal standard deviations";
    throw QuadratureNonconvergent(os.str());
  }
  const QuadratureResult r = integrate_adaptive(f, a, b, kAbsTolerance);
  return SpqEstimate{r.value, 0.0, r.abs_error};
}

SpqEstimate by_monte_carlo(const Dist& prior, const Dist& proposal, const AcceptProbability& accept,
                           std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) {
    throw ConfigError("Monte Carlo estimate of S needs at least two samples");
  }
  RngStream rng{seed};
  RunningMoments moments;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double z = proposal.sample(rng);
    const double log_p = prior.log_pdf(z);
    const double ratio = log_p == -kInf ? 0.0 : std::exp(log_p - proposal.log_pdf(z));
    moments.add(ratio * ratio * (1.0 - accept(z)));
  }
  return SpqEstimate{moments.mean(), moments.standard_error(), 0.0};
}

}  // namespace

SpqEstimate compute_s_pq(const Dist& prior, const Dist& proposal, const AcceptProbability& accept,
                         const SpqMethod& method) {
  if (!proposal.support().contains(prior.support())) {
    std::ostringstream os;
    os << "proposal " << proposal << " does not cover the support of " << prior;
    throw ProposalSupportViolation(os.str());
  }
  switch (method.kind) {
    case SpqMethod::Kind::kQuadrature:
      return by_quadrature(prior, proposal, accept);
    case SpqMethod::Kind::kMonteCarlo:
      return by_monte_carlo(prior, proposal, accept, method.samples, method.seed);
  }
  throw ConfigError("unknown S estimation method");
}

ConditionalMean conditional_mean_check(const ModelProgram& model, const EstimatorKind& estimator,
                                       const std::map<std::string, double, std::less<>>& pinned,
                                       std::uint64_t replications, std::uint64_t seed) {
  if (replications == 0) {
    throw ConfigError("conditional_mean_check needs at least one replication");
  }
  if (estimator.kind() == EstimatorKind::Kind::kCollapsedOracle && !model.oracle()) {
    throw OracleUnavailable("model '" + model.name() + "' provides no collapsed oracle");
  }
  EngineConfig config;
  config.estimator = estimator;
  config.record_choices = false;
  config.pinned = pinned;

  const RngStream root{seed};
  RunningMoments moments;
  std::uint64_t zeros = 0;
  for (std::uint64_t r = 0; r < replications; ++r) {
    const TraceRecord trace = run_trace(model, ExecutionMode::kProposal, root.split(r), config);
    const double w = finalize_weight(trace.ledger).weight;
    zeros += w == 0.0 ? 1 : 0;
    moments.add(w);
  }
  return ConditionalMean{moments.mean(), moments.standard_error(), replications, zeros};
}

}  // namespace ars
