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

#include "ars/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"
#include "ars/rng.hpp"
#include "ars/weights.hpp"

namespace ars {

std::string_view to_string(ModelKind kind) noexcept { return kind == ModelKind::kGum ? "gum" : "gmm"; }

ModelKind parse_model_kind(std::string_view name) {
  if (name == "gum") {
    return ModelKind::kGum;
  }
  if (name == "gmm") {
    return ModelKind::kGmm;
  }
  throw ConfigError("unknown model '" + std::string(name) + "' (expected gum or gmm)");
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t particles) {
  std::vector<std::uint64_t> out;
  for (int half_decades = 4;; ++half_decades) {
    const auto c = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 0.5 * half_decades)));
    if (c >= particles) {
      break;
    }
    out.push_back(c);
  }
  out.push_back(particles);
  return out;
}

EstimatorKind harness_estimator(const EstimatorKind& requested) {
  if (requested.kind() != EstimatorKind::Kind::kAmortized) {
    return requested;
  }
  return EstimatorKind::amortized(requested.replications(), std::max(requested.proposal_runs(), 10));
}

void validate(const ExperimentConfig& config) {
  if (config.particles == 0 || config.runs == 0) {
    throw ConfigError("particles and runs must be positive");
  }
  if (config.scope_cap < 1) {
    throw ConfigError("scope_cap must be positive");
  }
  if (config.threads < 1) {
    throw ConfigError("threads must be positive");
  }
  const auto& cps = config.checkpoints;
  if (!cps.empty()) {
    if (cps.front() == 0 || !std::is_sorted(cps.begin(), cps.end()) ||
        std::adjacent_find(cps.begin(), cps.end()) != cps.end()) {
      throw ConfigError("checkpoints must be positive and strictly ascending");
    }
    if (cps.back() > config.particles) {
      throw ConfigError("the last checkpoint exceeds the particle count");
    }
  }
  if (config.model == ModelKind::kGum) {
    (void)parse_gum_proposal(config.proposal_preset);
  } else {
    (void)parse_gmm_proposal(config.proposal_preset);
  }
}

ModelProgram build_model(const ExperimentConfig& config) {
  if (config.model == ModelKind::kGum) {
    return build_gum(config.gum, parse_gum_proposal(config.proposal_preset));
  }
  return build_gmm(config.gmm, parse_gmm_proposal(config.proposal_preset));
}

double ground_truth(const ExperimentConfig& config) {
  return config.model == ModelKind::kGum ? gum_true_posterior_mean(config.gum)
                                         : gmm_true_posterior_mean(config.gmm);
}

std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t run_id) noexcept {
  return RngStream{master_seed}.split(run_id).seed();
}

void WeightedMean::add(double log_weight, double value) {
  ++count_;
  if (log_weight == -kInf) {
    ++zeros_;
    return;
  }
  if (log_weight > shift_) {
    const double scale = std::exp(shift_ - log_weight);
    sum_w_ *= scale;
    sum_wx_ *= scale;
    sum_w2_ *= scale * scale;
    shift_ = log_weight;
  }
  const double w = std::exp(log_weight - shift_);
  sum_w_ += w;
  sum_wx_ += w * value;
  sum_w2_ += w * w;
}

double WeightedMean::estimate() const noexcept {
  return sum_w_ > 0.0 ? sum_wx_ / sum_w_ : std::numeric_limits<double>::quiet_NaN();
}

double WeightedMean::ess() const noexcept { return sum_w_ > 0.0 ? sum_w_ * sum_w_ / sum_w2_ : 0.0; }

namespace {

std::vector<std::uint64_t> resolved_checkpoints(const ExperimentConfig& config) {
  return config.checkpoints.empty() ? default_checkpoints(config.particles) : config.checkpoints;
}

Particle run_particle(const ModelProgram& model, const EngineConfig& engine, const RngStream& run_stream,
                      std::uint64_t run_id, std::uint64_t index) {
  try {
    const TraceRecord trace = run_trace(model, ExecutionMode::kProposal, run_stream.split(index), engine);
    return Particle{finalize_weight(trace.ledger).log_weight, trace.return_value};
  } catch (const Error&) {
    std::ostringstream os;
    os << "run " << run_id << ", particle " << index;
    rethrow_with_context(os.str());
  }
}

// Evaluates particles [begin, end) across threads; slot i holds particle begin + i.
void run_block(const ModelProgram& model, const EngineConfig& engine, const RngStream& run_stream,
               std::uint64_t run_id, std::uint64_t begin, std::uint64_t end, int threads,
               std::vector<Particle>& out) {
  out.assign(end - begin, Particle{0.0, 0.0});
  if (threads <= 1 || end - begin < 2) {
    for (std::uint64_t i = begin; i < end; ++i) {
      out[i - begin] = run_particle(model, engine, run_stream, run_id, i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::uint64_t i = begin + static_cast<std::uint64_t>(t); i < end;
               i += static_cast<std::uint64_t>(threads)) {
            out[i - begin] = run_particle(model, engine, run_stream, run_id, i);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace

std::vector<ExperimentRow> run_inference(const ExperimentConfig& config, std::uint64_t run_id,
                                         const ParticleSink& sink) {
  validate(config);
  const ModelProgram model = build_model(config);
  const double truth = ground_truth(config);
  const EstimatorKind estimator = harness_estimator(config.estimator);

  EngineConfig engine;
  engine.estimator = estimator;
  engine.scope_cap = config.scope_cap;
  engine.record_choices = false;

  const std::uint64_t seed = run_seed(config.master_seed, run_id);
  const RngStream run_stream{seed};
  const auto start = std::chrono::steady_clock::now();

  std::vector<ExperimentRow> rows;
  WeightedMean acc;
  std::vector<Particle> block;
  std::uint64_t done = 0;
  for (const std::uint64_t checkpoint : resolved_checkpoints(config)) {
    run_block(model, engine, run_stream, run_id, done, checkpoint, config.threads, block);
    for (std::uint64_t i = done; i < checkpoint; ++i) {
      const Particle& p = block[i - done];
      acc.add(p.log_weight, p.value);
      if (sink) {
        sink(i, p);
      }
    }
    done = checkpoint;

    ExperimentRow row;
    row.model = std::string(to_string(config.model));
    row.estimator = estimator.name();
    row.proposal_preset = config.proposal_preset;
    row.run_id = run_id;
    row.checkpoint_particles = checkpoint;
    row.posterior_mean_est = acc.estimate();
    row.abs_error = std::abs(row.posterior_mean_est - truth);
    row.ess = acc.ess();
    row.zero_weight_fraction = static_cast<double>(acc.zero_weights()) / static_cast<double>(acc.count());
    row.seed = seed;
    if (config.record_wall_time) {
      row.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<ExperimentRow> rows;
  for (std::uint64_t r = 0; r < config.runs; ++r) {
    auto run_rows = run_inference(config, r);
    rows.insert(rows.end(), std::make_move_iterator(run_rows.begin()), std::make_move_iterator(run_rows.end()));
  }
  return rows;
}

}  // namespace ars
