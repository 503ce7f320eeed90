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
#include <numbers>
#include <optional>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"
#include "ars/models/gum.hpp"
#include "ars/weights.hpp"
#include "fixtures.hpp"

namespace ars {
namespace {

EngineConfig with_estimator(EstimatorKind e) {
  EngineConfig c;
  c.estimator = e;
  return c;
}

TEST(RunTrace, PriorProposalWeightIsTheLikelihood) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kPrior);
  for (const auto mode : {ExecutionMode::kPriorOnly, ExecutionMode::kProposal}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const TraceRecord t = run_trace(gum, mode, RngStream{seed}, EngineConfig{});
      for (const auto& f : t.ledger.factors()) {
        if (f.tag != FactorTag::kLikelihood) {
          ASSERT_EQ(f.log_value, 0.0) << to_string(f.tag);
        }
      }
      ASSERT_EQ(t.ledger.count(FactorTag::kLikelihood), 1u);
      ASSERT_EQ(finalize_weight(t.ledger).weight, std::exp(t.ledger.sum_of(FactorTag::kLikelihood)));
    }
  }
}

TEST(RunTrace, PriorAndProposalModesAgreeWithoutProposals) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kPrior);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TraceRecord a = run_trace(gum, ExecutionMode::kPriorOnly, RngStream{seed}, EngineConfig{});
    const TraceRecord b = run_trace(gum, ExecutionMode::kProposal, RngStream{seed}, EngineConfig{});
    ASSERT_EQ(a.return_value, b.return_value);
    ASSERT_EQ(a.ledger, b.ledger);
  }
}

TEST(RunTrace, SameSeedGivesIdenticalRecord) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  for (const auto e : {EstimatorKind::naive_ic(), EstimatorKind::amortized(10, 10)}) {
    const TraceRecord a = run_trace(gum, ExecutionMode::kProposal, RngStream{77}, with_estimator(e));
    const TraceRecord b = run_trace(gum, ExecutionMode::kProposal, RngStream{77}, with_estimator(e));
    EXPECT_EQ(a, b);
  }
}

TEST(RunTrace, RejectsReplayModes) {
  const ModelProgram m = fixtures::coin_loop(0.5);
  EXPECT_THROW((void)run_trace(m, ExecutionMode::kScopeReplayPrior, RngStream{1}, EngineConfig{}), ConfigError);
  EngineConfig bad;
  bad.scope_cap = 0;
  EXPECT_THROW((void)run_trace(m, ExecutionMode::kProposal, RngStream{1}, bad), ConfigError);
}

TEST(SampleSite, ProposalRatioIsRecorded) {
  const Dist prior = Dist::normal(0, 1);
  const Dist proposal = Dist::normal(-2, 2);
  const ModelProgram m = fixtures::single_site(prior, proposal);
  const TraceRecord t = run_trace(m, ExecutionMode::kProposal, RngStream{5}, EngineConfig{});
  ASSERT_EQ(t.choices.size(), 1u);
  const double v = t.choices[0].value;
  EXPECT_EQ(t.choices[0].dist_used, proposal);
  EXPECT_EQ(t.ledger.factors()[0].tag, FactorTag::kPriorRatio);
  EXPECT_DOUBLE_EQ(t.ledger.factors()[0].log_value, prior.log_pdf(v) - proposal.log_pdf(v));
}

TEST(SampleSite, NoProposalMeansZeroFactor) {
  const ModelProgram m = fixtures::single_site(Dist::normal(0, 1));
  const TraceRecord t = run_trace(m, ExecutionMode::kProposal, RngStream{5}, EngineConfig{});
  EXPECT_EQ(t.ledger.factors()[0].log_value, 0.0);
  EXPECT_EQ(t.choices[0].mode, ExecutionMode::kProposal);
}

TEST(SampleSite, ProposalMustCoverPriorSupport) {
  const ModelProgram m = fixtures::single_site(Dist::normal(0, 1), Dist::uniform(-1, 1));
  EXPECT_THROW((void)run_trace(m, ExecutionMode::kProposal, RngStream{1}, EngineConfig{}), ProposalSupportViolation);
  const ModelProgram ok = fixtures::single_site(Dist::uniform(0, 1), Dist::truncated_normal(-0.5, 0.5, 0, 1));
  EXPECT_NO_THROW((void)run_trace(ok, ExecutionMode::kProposal, RngStream{1}, EngineConfig{}));
}

TEST(SampleSite, DuplicateLabelsRaise) {
  const ModelProgram twice{"twice", [](Interpreter& h) {
                             (void)h.sample("x", Dist::normal(0, 1));
                             return h.sample("x", Dist::normal(0, 1));
                           }};
  EXPECT_THROW((void)run_trace(twice, ExecutionMode::kProposal, RngStream{1}, EngineConfig{}), DuplicateAddress);

  const ModelProgram in_loop{"in_loop", [](Interpreter& h) {
                               return h.rejection_scope("s", [](Interpreter& s) -> std::optional<double> {
                                 (void)s.sample("z", Dist::normal(0, 1));
                                 return s.sample("z", Dist::normal(0, 1));
                               });
                             }};
  EXPECT_THROW((void)run_trace(in_loop, ExecutionMode::kProposal, RngStream{1}, EngineConfig{}), DuplicateAddress);

  const ModelProgram self_nested{"self_nested", [](Interpreter& h) {
                                   return h.rejection_scope("s", [](Interpreter& s) -> std::optional<double> {
                                     return s.rejection_scope("s", [](Interpreter& t) -> std::optional<double> {
                                       return t.sample("z", Dist::normal(0, 1));
                                     });
                                   });
                                 }};
  EXPECT_THROW((void)run_trace(self_nested, ExecutionMode::kProposal, RngStream{1}, EngineConfig{}),
               DuplicateAddress);
}

TEST(SampleSite, SameLabelInDifferentIterationsHasDistinctAddresses) {
  const ModelProgram m = fixtures::coin_loop(0.1);
  const TraceRecord t = run_trace(m, ExecutionMode::kProposal, RngStream{11}, EngineConfig{});
  ASSERT_GT(t.choices.size(), 1u);
  for (std::size_t i = 0; i < t.choices.size(); ++i) {
    EXPECT_EQ(t.choices[i].address.to_string(), "coin#0@" + std::to_string(i + 1) + "/c");
  }
}

TEST(ObserveSite, LikelihoodFactors) {
  const double sigma = std::sqrt(0.5);
  const ModelProgram one{"one", [sigma](Interpreter& h) {
                           h.observe("y", Dist::normal(0, sigma), 0.0);
                           return 0.0;
                         }};
  const TraceRecord t = run_trace(one, ExecutionMode::kProposal, RngStream{1}, EngineConfig{});
  ASSERT_EQ(t.ledger.size(), 1u);
  EXPECT_NEAR(t.ledger.factors()[0].log_value, -0.5 * std::log(2 * std::numbers::pi * 0.5), 1e-15);
  EXPECT_EQ(t.observations.size(), 1u);

  const ModelProgram outside{"outside", [](Interpreter& h) {
                               h.observe("y", Dist::uniform(0, 1), 2.0);
                               return 0.0;
                             }};
  const TraceRecord z = run_trace(outside, ExecutionMode::kProposal, RngStream{1}, EngineConfig{});
  EXPECT_EQ(finalize_weight(z.ledger).weight, 0.0);

  const ModelProgram two{"two", [](Interpreter& h) {
                           h.observe("y1", Dist::normal(0, 1), 0.5);
                           h.observe("y2", Dist::normal(1, 2), -1.0);
                           return 0.0;
                         }};
  const TraceRecord w = run_trace(two, ExecutionMode::kProposal, RngStream{1}, EngineConfig{});
  ASSERT_EQ(w.ledger.count(FactorTag::kLikelihood), 2u);
  EXPECT_DOUBLE_EQ(w.ledger.total_log_weight(),
                   Dist::normal(0, 1).log_pdf(0.5) + Dist::normal(1, 2).log_pdf(-1.0));
}

TEST(ObserveSite, InsideScopeRaises) {
  const ModelProgram m{"bad", [](Interpreter& h) {
                         return h.rejection_scope("s", [](Interpreter& s) -> std::optional<double> {
                           const double z = s.sample("z", Dist::normal(0, 1));
                           s.observe("y", Dist::normal(z, 1), 0.0);
                           return z;
                         });
                       }};
  for (const auto e : {EstimatorKind::naive_ic(), EstimatorKind::amortized(2, 2)}) {
    EXPECT_THROW((void)run_trace(m, ExecutionMode::kProposal, RngStream{1}, with_estimator(e)), ObserveInsideScope);
  }
}

TEST(ObserveSite, DuplicateObservationLabelRaises) {
  const ModelProgram m{"dup", [](Interpreter& h) {
                         h.observe("y", Dist::normal(0, 1), 0.0);
                         h.observe("y", Dist::normal(0, 1), 0.0);
                         return 0.0;
                       }};
  EXPECT_THROW((void)run_trace(m, ExecutionMode::kProposal, RngStream{1}, EngineConfig{}), DuplicateAddress);
}

TEST(RunTrace, WithoutLoopsNaiveAndAmortizedLedgersMatch) {
  const ModelProgram m = fixtures::single_site(Dist::normal(0, 1), Dist::normal(1, 3));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TraceRecord a =
        run_trace(m, ExecutionMode::kProposal, RngStream{seed}, with_estimator(EstimatorKind::naive_ic()));
    const TraceRecord b =
        run_trace(m, ExecutionMode::kProposal, RngStream{seed}, with_estimator(EstimatorKind::amortized(10, 10)));
    ASSERT_EQ(a.ledger, b.ledger);
  }
}

TEST(RunTrace, PinnedTopLevelSiteTakesPinnedValue) {
  const ModelProgram m = fixtures::single_site(Dist::normal(0, 1), Dist::normal(-2, 2));
  EngineConfig c;
  c.pinned = {{"x", 0.25}};
  const TraceRecord t = run_trace(m, ExecutionMode::kProposal, RngStream{1}, c);
  EXPECT_EQ(t.return_value, 0.25);
  EXPECT_DOUBLE_EQ(t.ledger.factors()[0].log_value,
                   Dist::normal(0, 1).log_pdf(0.25) - Dist::normal(-2, 2).log_pdf(0.25));
}

TEST(RunTrace, PinnedValueViolatingTheLoopConditionRaises) {
  const ModelProgram gum = build_gum(GumParams{}, GumProposal::kFixed);
  EngineConfig c;
  c.pinned = gum_fixture("branch1", -0.5);
  EXPECT_THROW((void)run_trace(gum, ExecutionMode::kProposal, RngStream{1}, c), PinnedValueRejected);
}

TEST(RunTrace, ErrorsCarryContextAndKeepTheirType) {
  try {
    try {
      throw DuplicateAddress("duplicate address x");
    } catch (const Error&) {
      rethrow_with_context("run 3, particle 9");
    }
  } catch (const DuplicateAddress& e) {
    EXPECT_STREQ(e.what(), "run 3, particle 9: duplicate address x");
    return;
  }
  FAIL() << "type was not preserved";
}

}  // namespace
}  // namespace ars
