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

#include <cmath>
#include <vector>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"
#include "ars/models/gmm.hpp"
#include "ars/models/gum.hpp"
#include "ars/statistics.hpp"
#include "ars/weights.hpp"
#include "fixtures.hpp"
#include "oracle_values.hpp"

namespace ars {
namespace {

EngineConfig fast_config(EstimatorKind estimator = EstimatorKind::naive_ic()) {
  EngineConfig c;
  c.estimator = estimator;
  c.record_choices = false;
  return c;
}

TEST(Gum, PriorMarginalIsTheUnsplitNormal) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kPrior);
  std::vector<double> mu;
  mu.reserve(1'000'000);
  for (std::uint64_t i = 0; i < 1'000'000; ++i) {
    mu.push_back(run_trace(gum, ExecutionMode::kPriorOnly, RngStream{7}.split(i), fast_config()).return_value);
  }
  EXPECT_LT(fixtures::ks_statistic(mu, normal_cdf), 0.002);
}

double mean_iterations(const ModelProgram& m, ExecutionMode mode, const EngineConfig& c, int n) {
  RunningMoments it;
  for (int i = 0; i < n; ++i) {
    it.add(static_cast<double>(run_trace(m, mode, RngStream{11}.split(i), c).diagnostics.loop_iterations));
  }
  return it.mean();
}

TEST(Gum, BranchAcceptanceRates) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  EngineConfig c = fast_config();
  c.pinned = {{"u", 0.75}};
  EXPECT_NEAR(1.0 / mean_iterations(gum, ExecutionMode::kPriorOnly, c, 100'000), 0.5, 0.005);
  EXPECT_NEAR(1.0 / mean_iterations(gum, ExecutionMode::kProposal, c, 100'000), oracle::kUpperTail1, 0.003);
  c.pinned = {{"u", 0.25}};
  EXPECT_NEAR(1.0 / mean_iterations(gum, ExecutionMode::kProposal, c, 100'000), 0.5, 0.005);
}

TEST(Gum, PosteriorMeanExamples) {
  EXPECT_EQ(gum_true_posterior_mean(GumParams{}), 0.0);
  GumParams g;
  g.y_obs = 0.75;
  EXPECT_NEAR(gum_true_posterior_mean(g), 0.5, 1e-15);
  g.mu0 = 1.0;
  g.sigma0 = 1e-9;
  EXPECT_NEAR(gum_true_posterior_mean(g), 1.0, 1e-12);
}

TEST(Gum, PresetNames) {
  EXPECT_EQ(parse_gum_proposal("prior"), GumProposal::kPrior);
  EXPECT_EQ(parse_gum_proposal("fixed"), GumProposal::kFixed);
  EXPECT_EQ(to_string(GumProposal::kFixed), "fixed");
  EXPECT_THROW((void)parse_gum_proposal("perfect"), ConfigError);
}

TEST(Gum, RejectsBadScale) {
  GumParams g;
  g.sigma = 0.0;
  EXPECT_THROW((void)build_gum(g), InvalidDistribution);
}

TEST(GmmEnvelope, ClosedFormMatchesGridSearch) {
  const GmmParams p;
  const double m = gmm_envelope_constant(p);
  EXPECT_NEAR(m, oracle::kGmmEnvelope, 1e-13);
  double best = 0.0;
  for (int i = -500'000; i <= 500'000; ++i) {
    const double x = i * 1e-4;
    best = std::max(best, std::exp(Dist::normal(p.mu1, p.sigma1).log_pdf(x) -
                                   Dist::normal(p.mu0_base, p.sigma0_base).log_pdf(x)));
  }
  EXPECT_NEAR(best, m, 1e-6);
  EXPECT_NEAR(gmm_alpha(p, oracle::kGmmArgmax), 1.0, 1e-14);
}

TEST(GmmEnvelope, IdenticalDensitiesAndUnboundedRatio) {
  GmmParams same;
  same.mu0_base = same.mu1;
  same.sigma0_base = same.sigma1;
  EXPECT_EQ(gmm_envelope_constant(same), 1.0);

  GmmParams narrow;
  narrow.sigma0_base = 0.5;
  EXPECT_THROW((void)gmm_envelope_constant(narrow), EnvelopeInfinite);
  EXPECT_THROW((void)build_gmm(narrow), EnvelopeInfinite);
  narrow.sigma0_base = narrow.sigma1;
  EXPECT_THROW((void)gmm_envelope_constant(narrow), EnvelopeInfinite);
}

TEST(GmmEnvelope, AcceptProbabilityNeverExceedsOne) {
  const GmmParams p;
  RngStream rng{5};
  const Dist base = Dist::normal(p.mu0_base, p.sigma0_base);
  double worst = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    worst = std::max(worst, gmm_alpha(p, base.sample(rng)));
  }
  EXPECT_LE(worst, 1.0);
}

TEST(Gmm, AcceptedFirstComponentDrawsFollowTheTarget) {
  const ModelProgram gmm = build_gmm(GmmParams{}, GmmProposal::kPrior);
  EngineConfig c = fast_config();
  c.pinned = {{"u", 0.25}};
  std::vector<double> mu;
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    mu.push_back(run_trace(gmm, ExecutionMode::kPriorOnly, RngStream{3}.split(i), c).return_value);
  }
  // 1.95 / sqrt(n) is the 0.1% critical value.
  EXPECT_LT(fixtures::ks_statistic(mu, [](double x) { return normal_cdf(x + 1.0); }), 1.95 / std::sqrt(1e5));
  EXPECT_NEAR(1.0 / mean_iterations(gmm, ExecutionMode::kPriorOnly, c, 100'000), oracle::kGmmPriorAccept, 0.004);
}

TEST(Gmm, SecondComponentFrequency) {
  const ModelProgram gmm = build_gmm(GmmParams{}, GmmProposal::kPrior);
  int second = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const TraceRecord t = run_trace(gmm, ExecutionMode::kPriorOnly, RngStream{8}.split(i), EngineConfig{});
    second += t.choices.back().address.label == "component2.mu";
  }
  EXPECT_NEAR(second / static_cast<double>(n), 0.5, 4.0 * std::sqrt(0.25 / n));
}

TEST(Gmm, PosteriorMeanAndLimits) {
  GmmParams p;
  EXPECT_NEAR(gmm_true_posterior_mean(p), oracle::kGmmPosteriorMean, 1e-14);
  p.pi1 = 1.0 - 1e-15;
  EXPECT_NEAR(gmm_true_posterior_mean(p), -1.0 / 3.0, 1e-12);
  p.pi1 = 1e-15;
  EXPECT_NEAR(gmm_true_posterior_mean(p), 2.0 / 3.0, 1e-12);
  p.pi1 = 1.0;
  EXPECT_THROW((void)gmm_true_posterior_mean(p), InvalidDistribution);
}

TEST(Gmm, AcceptanceProbabilities) {
  const GmmParams p;
  EXPECT_NEAR(gmm_acceptance_probability(p, GmmProposal::kPrior).prior, oracle::kGmmPriorAccept, 1e-13);
  EXPECT_NEAR(gmm_acceptance_probability(p, GmmProposal::kPrior).proposal, oracle::kGmmPriorAccept, 1e-10);
  EXPECT_NEAR(gmm_acceptance_probability(p, GmmProposal::kPerfectBase).proposal, oracle::kGmmPerfectBaseAccept,
              1e-10);
  EXPECT_NEAR(gmm_acceptance_probability(p, GmmProposal::kPerfectPlusU2).proposal,
              oracle::kGmmPerfectPlusU2Accept, 1e-10);
}

TEST(Gmm, ProposalAcceptanceRatesMatchQuadrature) {
  EngineConfig c = fast_config();
  c.pinned = {{"u", 0.25}};
  const ModelProgram base = build_gmm(GmmParams{}, GmmProposal::kPerfectBase);
  EXPECT_NEAR(1.0 / mean_iterations(base, ExecutionMode::kProposal, c, 100'000), oracle::kGmmPerfectBaseAccept,
              0.006);
  const ModelProgram plus = build_gmm(GmmParams{}, GmmProposal::kPerfectPlusU2);
  EXPECT_NEAR(1.0 / mean_iterations(plus, ExecutionMode::kProposal, c, 100'000), oracle::kGmmPerfectPlusU2Accept,
              0.006);
}

TEST(Gmm, PresetsParseAndRun) {
  for (const char* name : {"prior", "fixed", "perfect_base", "perfect_plus_u2"}) {
    const GmmProposal preset = parse_gmm_proposal(name);
    EXPECT_EQ(to_string(preset), name);
    const ModelProgram m = build_gmm(GmmParams{}, preset);
    for (std::uint64_t i = 0; i < 100; ++i) {
      const TraceRecord t =
          run_trace(m, ExecutionMode::kProposal, RngStream{i}, fast_config(EstimatorKind::amortized(2, 5)));
      EXPECT_FALSE(std::isnan(t.ledger.total_log_weight()));
      EXPECT_TRUE(std::isfinite(t.return_value));
    }
  }
  EXPECT_THROW((void)parse_gmm_proposal("perfect"), ConfigError);
  EXPECT_THROW((void)gmm_loop_site(GmmParams{}, GmmProposal::kPerfectPlusU2), ConfigError);
}

}  // namespace
}  // namespace ars
