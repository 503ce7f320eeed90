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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ars/diagnostics.hpp"
#include "ars/error.hpp"
#include "ars/interpreter.hpp"
#include "ars/models/gmm.hpp"
#include "ars/models/gum.hpp"
#include "ars/statistics.hpp"
#include "ars/weights.hpp"
#include "oracle_values.hpp"

namespace ars {
namespace {

TEST(FinalizeWeight, Examples) {
  WeightLedger l;
  l.add(FactorTag::kPriorRatio, 0.0, "u");
  l.add(FactorTag::kLoopRatio, 0.0, "s#0");
  l.add(FactorTag::kCorrection, std::log(0.5 * 2.0), "s#0");
  l.add(FactorTag::kLikelihood, std::log(0.3), "y");
  EXPECT_NEAR(finalize_weight(l).weight, 0.3, 1e-15);

  WeightLedger dead = l;
  dead.add(FactorTag::kCorrection, -kInf, "t#0");
  EXPECT_EQ(finalize_weight(dead).weight, 0.0);
  EXPECT_EQ(finalize_weight(dead).log_weight, -kInf);

  EXPECT_EQ(finalize_weight(WeightLedger{}).weight, 1.0);
}

TEST(EstimatorKind, ParseAndName) {
  EXPECT_EQ(EstimatorKind::parse("ic"), EstimatorKind::naive_ic());
  EXPECT_EQ(EstimatorKind::parse("biased"), EstimatorKind::biased());
  EXPECT_EQ(EstimatorKind::parse("collapsed"), EstimatorKind::collapsed_oracle());
  EXPECT_EQ(EstimatorKind::parse("ars", 3, 7), EstimatorKind::amortized(3, 7));
  EXPECT_EQ(EstimatorKind::parse("ars_m1_n100"), EstimatorKind::amortized(1, 100));
  EXPECT_EQ(EstimatorKind::amortized(10, 10).name(), "ars_m10_n10");
  EXPECT_EQ(EstimatorKind::naive_ic().name(), "ic");
  EXPECT_THROW((void)EstimatorKind::amortized(0, 10), ConfigError);
  EXPECT_THROW((void)EstimatorKind::amortized(1, 0), ConfigError);
  EXPECT_THROW((void)EstimatorKind::parse("smc"), ConfigError);
}

TEST(EstimatorAlgebra, AmortizedEqualsBiasedTimesCorrectionFactorByFactor) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  EngineConfig biased;
  biased.estimator = EstimatorKind::biased();
  EngineConfig ars;
  ars.estimator = EstimatorKind::amortized(10, 10);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const TraceRecord b = run_trace(gum, ExecutionMode::kProposal, RngStream{seed}, biased);
    const TraceRecord a = run_trace(gum, ExecutionMode::kProposal, RngStream{seed}, ars);
    ASSERT_EQ(a.ledger.size(), b.ledger.size() + 1);
    std::size_t j = 0;
    for (const auto& f : a.ledger.factors()) {
      if (f.tag == FactorTag::kCorrection) {
        const CorrectionStats& c = *a.scope_stats.front().second.correction;
        ASSERT_EQ(f.log_value, c.accepted_proposal_runs == 0 ? -kInf : std::log(c.factor()));
        continue;
      }
      ASSERT_EQ(f, b.ledger.factors()[j++]);
    }
  }
}

TEST(CollapsedWeight, PriorProposalReducesToTheLikelihood) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kPrior);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TraceRecord t = run_trace(gum, ExecutionMode::kProposal, RngStream{seed}, EngineConfig{});
    EXPECT_NEAR(collapsed_log_weight(gum, t), t.ledger.sum_of(FactorTag::kLikelihood), 1e-13);
  }
}

TEST(CollapsedWeight, MatchesReferenceOnTheGumFixture) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  EngineConfig c;
  c.pinned = gum_fixture("branch1", 0.5);
  const TraceRecord t = run_trace(gum, ExecutionMode::kProposal, RngStream{1}, c);
  EXPECT_NEAR(std::exp(collapsed_log_weight(gum, t)), oracle::kGumCollapsedWeight, 1e-14);

  c.estimator = EstimatorKind::collapsed_oracle();
  const ConditionalMean exact = conditional_mean_check(gum, c.estimator, c.pinned, 100, 5);
  EXPECT_NEAR(exact.mean, oracle::kGumCollapsedWeight, 1e-14);
  EXPECT_LT(exact.std_error, 1e-15);
}

TEST(CollapsedWeight, GmmHasNoOracle) {
  const ModelProgram gmm = build_gmm(GmmParams{}, GmmProposal::kFixed);
  const TraceRecord t = run_trace(gmm, ExecutionMode::kProposal, RngStream{1}, EngineConfig{});
  EXPECT_THROW((void)collapsed_log_weight(gmm, t), OracleUnavailable);
  EngineConfig c;
  c.estimator = EstimatorKind::collapsed_oracle();
  EXPECT_THROW((void)run_trace(gmm, ExecutionMode::kProposal, RngStream{1}, c), OracleUnavailable);
  EXPECT_THROW((void)conditional_mean_check(gmm, c.estimator, {}, 10, 1), OracleUnavailable);
}

TEST(ConditionalMean, UnbiasedEstimatorsMatchTheCollapsedWeight) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  const auto pinned = gum_fixture("branch1", 0.5);
  for (const auto e : {EstimatorKind::naive_ic(), EstimatorKind::amortized(1, 10), EstimatorKind::amortized(10, 1)}) {
    const ConditionalMean m = conditional_mean_check(gum, e, pinned, 20'000, 17);
    EXPECT_NEAR(m.mean, oracle::kGumCollapsedWeight, 4.0 * m.std_error) << e.name();
    EXPECT_GT(m.std_error, 0.0);
  }
}

TEST(ConditionalMean, BiasedIsOffByTheAcceptanceRatio) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  const ConditionalMean m =
      conditional_mean_check(gum, EstimatorKind::biased(), gum_fixture("branch1", 0.5), 1000, 3);
  const double expected = 0.5 / normal_sf(1.0);
  EXPECT_NEAR(expected, oracle::kGumBiasFactor, 1e-13);
  EXPECT_NEAR(m.mean / oracle::kGumCollapsedWeight, expected, 1e-12);
}

TEST(ComputeSpq, ClosedFormCases) {
  const GumParams g;
  const LoopSite prior_site = gum_loop_site(g, GumProposal::kPrior, "branch1");
  EXPECT_NEAR(compute_s_pq(prior_site, SpqMethod::quadrature()).value, 0.5, 1e-8);

  const Dist n01 = Dist::normal(0, 1);
  const auto always = [](double) { return 1.0; };
  EXPECT_EQ(compute_s_pq(n01, Dist::normal(-2, 2), always, SpqMethod::quadrature()).value, 0.0);

  const SpqEstimate fixed = compute_s_pq(gum_loop_site(g, GumProposal::kFixed, "branch1"), SpqMethod::quadrature());
  EXPECT_NEAR(fixed.value, oracle::kGumSpqFixed, 1e-8);
  EXPECT_LE(fixed.error_bound, 1e-8);
  EXPECT_FALSE(fixed.infinite_variance());

  const SpqEstimate gmm = compute_s_pq(gmm_loop_site(GmmParams{}, GmmProposal::kFixed), SpqMethod::quadrature());
  EXPECT_NEAR(gmm.value, oracle::kGmmSpqFixed, 1e-7);
  EXPECT_TRUE(gmm.infinite_variance());
}

TEST(ComputeSpq, MonteCarloAgreesWithQuadrature) {
  const LoopSite site = gum_loop_site(GumParams{}, GumProposal::kFixed, "branch1");
  const SpqEstimate mc = compute_s_pq(site, SpqMethod::monte_carlo(1'000'000, 99));
  EXPECT_NEAR(mc.value, oracle::kGumSpqFixed, 4.0 * mc.std_error);
  const double exact_se =
      std::sqrt((oracle::kGumSpqFixedSecondMoment - oracle::kGumSpqFixed * oracle::kGumSpqFixed) / 1e6);
  EXPECT_NEAR(mc.std_error / exact_se, 1.0, 0.1);
}

TEST(ComputeSpq, ErrorContracts) {
  const Dist n01 = Dist::normal(0, 1);
  const auto never = [](double) { return 0.0; };
  EXPECT_THROW((void)compute_s_pq(n01, Dist::uniform(-1, 1), never, SpqMethod::quadrature()),
               ProposalSupportViolation);
  // Proposal narrower than the prior: the integrand grows in the tails.
  EXPECT_THROW((void)compute_s_pq(Dist::normal(0, 3), n01, never, SpqMethod::quadrature()),
               QuadratureNonconvergent);
}

// Sample variance of the particle weights after 1e4 and after 1e5 particles.
std::pair<double, double> variance_growth(const ModelProgram& model, EstimatorKind estimator, std::uint64_t seed) {
  EngineConfig c;
  c.estimator = estimator;
  c.record_choices = false;
  const RngStream root{seed};
  RunningMoments m;
  double at_1e4 = 0.0;
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    m.add(finalize_weight(run_trace(model, ExecutionMode::kProposal, root.split(i), c).ledger).weight);
    if (i + 1 == 10'000) {
      at_1e4 = m.variance();
    }
  }
  return {at_1e4, m.variance()};
}

TEST(WeightVariance, AmortizedStabilizes) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  const ModelProgram gmm = build_gmm(GmmParams{}, GmmProposal::kFixed);
  for (const ModelProgram* m : {&gum, &gmm}) {
    const auto [v4, v5] = variance_growth(*m, EstimatorKind::amortized(10, 10), 31);
    EXPECT_LT(v5, 2.0 * v4) << m->name();
    EXPECT_GT(v5, 0.5 * v4) << m->name();
  }
}

TEST(WeightVariance, NaiveKeepsGrowingWhenSExceedsOne) {
  ASSERT_TRUE(compute_s_pq(gmm_loop_site(GmmParams{}, GmmProposal::kFixed), SpqMethod::quadrature())
                  .infinite_variance());
  const ModelProgram gmm = build_gmm(GmmParams{}, GmmProposal::kFixed);
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto [v4, v5] = variance_growth(gmm, EstimatorKind::naive_ic(), 1000 + seed);
    ratios.push_back(v5 / v4);
  }
  EXPECT_GT(quantile(ratios, 0.5), 2.0);
}

}  // namespace
}  // namespace ars
