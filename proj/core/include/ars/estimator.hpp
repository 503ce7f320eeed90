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

#ifndef ARS_ESTIMATOR_HPP
#define ARS_ESTIMATOR_HPP

#include <string>
#include <string_view>

namespace ars {

/// How rejection loops contribute to a particle weight.
/**
 * - kNaiveIc: every loop iteration's p/q ratio is multiplied in, accepted or not.
 * - kBiased: only the accepted iteration's ratio; no acceptance correction.
 * - kAmortized: accepted iteration's ratio times K * mean(T) / N, where K/N
 *   estimates the proposal acceptance rate and mean(T) (mean trials to first
 *   acceptance over `replications` prior runs) estimates 1 / prior acceptance.
 * - kCollapsedOracle: accepted iteration's ratio times the exact acceptance
 *   ratio supplied by the model. Only for models with closed-form conditionals.
 */
class EstimatorKind {
 public:
  enum class Kind { kNaiveIc, kBiased, kAmortized, kCollapsedOracle };

  static EstimatorKind naive_ic() noexcept { return EstimatorKind{Kind::kNaiveIc}; }
  static EstimatorKind biased() noexcept { return EstimatorKind{Kind::kBiased}; }
  static EstimatorKind collapsed_oracle() noexcept { return EstimatorKind{Kind::kCollapsedOracle}; }
  /// \throws ConfigError unless replications >= 1 and proposal_runs >= 1.
  static EstimatorKind amortized(int replications, int proposal_runs);

  /// Parses "ic", "biased", "collapsed", "ars" (with the given M and N) or
  /// the canonical "ars_m<M>_n<N>" form produced by name().
  static EstimatorKind parse(std::string_view text, int default_replications = 10, int default_proposal_runs = 10);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// M: replications of the trials-to-acceptance estimate.
  [[nodiscard]] int replications() const noexcept { return replications_; }
  /// N: proposal-mode executions for the acceptance-rate estimate.
  [[nodiscard]] int proposal_runs() const noexcept { return proposal_runs_; }

  /// Stable identifier used in CSV output: ic, biased, collapsed, ars_m<M>_n<N>.
  [[nodiscard]] std::string name() const;

  friend bool operator==(const EstimatorKind&, const EstimatorKind&) = default;

 private:
  explicit EstimatorKind(Kind kind, int replications = 0, int proposal_runs = 0) noexcept
      : kind_{kind}, replications_{replications}, proposal_runs_{proposal_runs} {}

  Kind kind_;
  int replications_;
  int proposal_runs_;
};

}  // namespace ars

#endif
