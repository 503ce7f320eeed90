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

#ifndef ARS_HARNESS_EXPERIMENT_HPP
#define ARS_HARNESS_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ars/estimator.hpp"
#include "ars/model.hpp"
#include "ars/models/gmm.hpp"
#include "ars/models/gum.hpp"

namespace ars {

enum class ModelKind { kGum, kGmm };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
/// \throws ConfigError unless name is "gum" or "gmm".
[[nodiscard]] ModelKind parse_model_kind(std::string_view name);

struct ExperimentConfig {
  ModelKind model = ModelKind::kGum;
  GumParams gum;
  GmmParams gmm;
  EstimatorKind estimator = EstimatorKind::amortized(10, 10);
  /// "prior" or "fixed" for GUM; any GMM preset name for GMM.
  std::string proposal_preset = "fixed";
  std::uint64_t particles = 10'000;
  std::uint64_t runs = 1;
  std::uint64_t master_seed = 0;
  int scope_cap = 1'000'000;
  /// Ascending particle counts, last <= particles. Empty selects default_checkpoints().
  std::vector<std::uint64_t> checkpoints;
  /// When false every wall_ms is written as 0 so output depends on the seed alone.
  bool record_wall_time = true;
  /// Worker threads for the particles of one run; results do not depend on it.
  int threads = 1;
};

struct ExperimentRow {
  std::string model;
  std::string estimator;
  std::string proposal_preset;
  std::uint64_t run_id = 0;
  std::uint64_t checkpoint_particles = 0;
  double posterior_mean_est = 0.0;  ///< NaN when every weight so far is zero
  double abs_error = 0.0;
  double ess = 0.0;  ///< 0 when every weight so far is zero
  double zero_weight_fraction = 0.0;
  std::uint64_t seed = 0;  ///< run seed
  double wall_ms = 0.0;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

/// 10^2, 10^2.5, 10^3, ... (rounded) below `particles`, then `particles` itself.
[[nodiscard]] std::vector<std::uint64_t> default_checkpoints(std::uint64_t particles);

/// The loop-correction sample count used by the harness is max(N, 10).
[[nodiscard]] EstimatorKind harness_estimator(const EstimatorKind& requested);

/// \throws ConfigError on inconsistent fields.
void validate(const ExperimentConfig& config);

[[nodiscard]] ModelProgram build_model(const ExperimentConfig& config);
[[nodiscard]] double ground_truth(const ExperimentConfig& config);

/// Seed of run `run_id`: the master stream split by the run index.
[[nodiscard]] std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t run_id) noexcept;

struct Particle {
  double log_weight;
  double value;
};

/// Running self-normalized estimate. Weights are stored relative to the
/// largest log weight seen so far, so sums never overflow.
class WeightedMean {
 public:
  void add(double log_weight, double value);

  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }
  [[nodiscard]] std::uint64_t zero_weights() const noexcept { return zeros_; }
  /// NaN when no weight is positive.
  [[nodiscard]] double estimate() const noexcept;
  /// 0 when no weight is positive.
  [[nodiscard]] double ess() const noexcept;

 private:
  double shift_ = -std::numeric_limits<double>::infinity();
  double sum_w_ = 0.0;
  double sum_w2_ = 0.0;
  double sum_wx_ = 0.0;
  std::uint64_t count_ = 0;
  std::uint64_t zeros_ = 0;
};

using ParticleSink = std::function<void(std::uint64_t index, const Particle&)>;

/// Runs one inference repetition and returns one row per checkpoint.
/**
 * Particle i of run r uses the stream split(run_seed(master, r), i).
 * \throws Error subclasses from the engine, with run and particle context.
 */
[[nodiscard]] std::vector<ExperimentRow> run_inference(const ExperimentConfig& config, std::uint64_t run_id,
                                                       const ParticleSink& sink = {});

/// All runs, ordered by (run_id, checkpoint).
[[nodiscard]] std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

}  // namespace ars

#endif
