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

// Rejection-loop execution and the acceptance-correction replays.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"

namespace ars {

namespace {

std::string scope_origin(const ScopeId& id) {
  std::ostringstream os;
  os << id;
  return os.str();
}

// Restores interpreter mode and stream on scope exit, including unwinding.
template <class F>
class OnExit {
 public:
  explicit OnExit(F f) : f_{std::move(f)} {}
  OnExit(const OnExit&) = delete;
  OnExit& operator=(const OnExit&) = delete;
  ~OnExit() { f_(); }

 private:
  F f_;
};

}  // namespace

RngStream Interpreter::replay_stream(const ScopeId& id, ExecutionMode kind) const noexcept {
  return replay_root_.split(id.label).split(id.instance).split(static_cast<std::uint64_t>(kind));
}

bool Interpreter::run_iteration(const ScopeId& id, std::uint32_t iteration, const ScopeBody& body, Frame& out) {
  frames_.push_back(Frame{ScopeFrameKey{id.label, id.instance, iteration}, {}, 0.0, {}, {}});
  ++record_.diagnostics.loop_iterations;
  const bool accepted = body(*this);
  out = std::move(frames_.back());
  frames_.pop_back();
  return accepted;
}

void Interpreter::commit_iteration(const ScopeId& id, Frame& frame) {
  add_factor(FactorTag::kLoopRatio, frame.site_log_ratio, scope_origin(id));
  for (const auto& factor : frame.nested.factors()) {
    add_factor(factor.tag, factor.log_value, factor.origin);
  }
  if (collect_choices()) {
    auto& sink = frames_.size() == 1 ? record_.choices : frames_.back().choices;
    sink.insert(sink.end(), std::make_move_iterator(frame.choices.begin()),
                std::make_move_iterator(frame.choices.end()));
  }
}

void Interpreter::run_scope(std::string_view label, const ScopeBody& body, const std::function<void()>& on_accept) {
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (frames_[i].key.label == label) {
      throw DuplicateAddress("rejection scope '" + std::string(label) + "' nested inside itself");
    }
  }
  const bool replay = is_replay(mode_);
  ScopeId id{std::string(label), 0};
  if (!replay) {
    id.instance = scope_instances_[id.label]++;
  }

  ++open_scopes_;
  const bool pin = pinned_active_;
  OnExit restore{[this, pin] {
    --open_scopes_;
    pinned_active_ = pin;
  }};
  pinned_active_ = false;

  const bool naive = config_.estimator.kind() == EstimatorKind::Kind::kNaiveIc;
  Frame accepted;
  int accepted_iteration = 0;
  for (int k = 1; k <= config_.scope_cap; ++k) {
    Frame frame;
    if (run_iteration(id, static_cast<std::uint32_t>(k), body, frame)) {
      accepted_iteration = k;
      accepted = std::move(frame);
      break;
    }
    if (replay) {
      continue;
    }
    if (naive) {
      commit_iteration(id, frame);
    } else if (collect_choices()) {
      // Rejected draws stay in the trace; their ratios are dropped.
      auto& sink = frames_.size() == 1 ? record_.choices : frames_.back().choices;
      sink.insert(sink.end(), std::make_move_iterator(frame.choices.begin()),
                  std::make_move_iterator(frame.choices.end()));
    }
  }
  if (accepted_iteration == 0) {
    std::ostringstream os;
    os << "rejection scope " << id << " did not accept within " << config_.scope_cap << " iterations";
    throw ScopeIterationCapExceeded(os.str());
  }

  const bool pins_this_loop =
      pin && !replay && std::ranges::any_of(accepted.labels, [this](const std::string& l) {
        return config_.pinned.contains(l);
      });
  if (pins_this_loop) {
    pinned_active_ = true;
    Frame frame;
    if (!run_iteration(id, static_cast<std::uint32_t>(accepted_iteration), body, frame)) {
      std::ostringstream os;
      os << "pinned values rejected by rejection scope " << id;
      throw PinnedValueRejected(os.str());
    }
    pinned_active_ = false;
    accepted = std::move(frame);
  }
  on_accept();

  if (replay) {
    return;
  }

  ScopeStats stats{accepted_iteration, std::nullopt};
  switch (config_.estimator.kind()) {
    case EstimatorKind::Kind::kNaiveIc:
    case EstimatorKind::Kind::kBiased:
      commit_iteration(id, accepted);
      break;
    case EstimatorKind::Kind::kAmortized:
      commit_iteration(id, accepted);
      apply_correction(id, body, stats);
      break;
    case EstimatorKind::Kind::kCollapsedOracle: {
      if (!model_.oracle()) {
        throw OracleUnavailable("model '" + model_.name() + "' provides no collapsed oracle");
      }
      const AcceptanceProbabilities exact = model_.oracle()(AcceptanceQuery{id, accepted.choices, record_});
      commit_iteration(id, accepted);
      add_factor(FactorTag::kCorrection, exact.log_proposal_accept - exact.log_prior_accept, scope_origin(id));
      break;
    }
  }
  record_.scope_stats.emplace_back(std::move(id), std::move(stats));
}

void Interpreter::apply_correction(const ScopeId& id, const ScopeBody& body, ScopeStats& stats) {
  const auto ledger_state = [this] {
    return frames_.size() == 1 ? record_.ledger.fingerprint() : frames_.back().nested.fingerprint();
  };
  const std::uint64_t before = ledger_state();

  CorrectionStats correction;
  correction.proposal_runs = config_.estimator.proposal_runs();
  correction.accepted_proposal_runs = estimate_q_accept(id, body, correction.proposal_runs);
  correction.trials = estimate_inv_p_accept(id, body, config_.estimator.replications());

  if (ledger_state() != before) {
    throw InvariantViolation("loop replays modified the particle ledger");
  }
  ++record_.diagnostics.ledger_checks;

  double log_factor = -kInf;
  if (correction.accepted_proposal_runs == 0) {
    ++record_.diagnostics.zero_corrections;
  } else {
    log_factor = std::log(correction.factor());
  }
  add_factor(FactorTag::kCorrection, log_factor, scope_origin(id));
  stats.correction = std::move(correction);
}

int Interpreter::estimate_q_accept(const ScopeId& scope, const ScopeBody& body, int proposal_runs) {
  const ExecutionMode saved_mode = mode_;
  RngStream* saved_rng = rng_;
  RngStream stream = replay_stream(scope, ExecutionMode::kScopeReplayProposal);
  OnExit restore{[&] {
    mode_ = saved_mode;
    rng_ = saved_rng;
  }};
  mode_ = ExecutionMode::kScopeReplayProposal;
  rng_ = &stream;

  int accepted = 0;
  for (int i = 1; i <= proposal_runs; ++i) {
    Frame frame;
    ++record_.diagnostics.replay_executions;
    if (run_iteration(scope, static_cast<std::uint32_t>(i), body, frame)) {
      ++accepted;
    }
  }
  return accepted;
}

std::vector<int> Interpreter::estimate_inv_p_accept(const ScopeId& scope, const ScopeBody& body, int replications) {
  const ExecutionMode saved_mode = mode_;
  RngStream* saved_rng = rng_;
  RngStream stream = replay_stream(scope, ExecutionMode::kScopeReplayPrior);
  OnExit restore{[&] {
    mode_ = saved_mode;
    rng_ = saved_rng;
  }};
  mode_ = ExecutionMode::kScopeReplayPrior;
  rng_ = &stream;

  std::vector<int> trials;
  trials.reserve(static_cast<std::size_t>(replications));
  for (int j = 0; j < replications; ++j) {
    int trial = 0;
    for (int l = 1; l <= config_.scope_cap; ++l) {
      Frame frame;
      ++record_.diagnostics.replay_executions;
      if (run_iteration(scope, static_cast<std::uint32_t>(l), body, frame)) {
        trial = l;
        break;
      }
    }
    if (trial == 0) {
      std::ostringstream os;
      os << "prior replay of rejection scope " << scope << " did not accept within " << config_.scope_cap
         << " iterations";
      throw ScopeIterationCapExceeded(os.str());
    }
    trials.push_back(trial);
  }
  return trials;
}

}  // namespace ars
