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

#include "ars/interpreter.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ars/error.hpp"

namespace ars {

Interpreter::Interpreter(const ModelProgram& model, ExecutionMode mode, RngStream main_stream, RngStream replay_root,
                         const EngineConfig& config, TraceRecord& record)
    : model_{model},
      config_{config},
      record_{record},
      mode_{mode},
      use_proposals_{mode == ExecutionMode::kProposal},
      main_stream_{main_stream},
      replay_root_{replay_root},
      rng_{&main_stream_},
      pinned_active_{!config.pinned.empty()} {
  if (is_replay(mode)) {
    throw ConfigError("run_trace: replay modes are internal to rejection scopes");
  }
  if (config.scope_cap < 1) {
    throw ConfigError("scope_cap must be >= 1");
  }
  frames_.emplace_back();
}

const Dist* Interpreter::proposal_for(std::string_view label) const noexcept {
  if (!use_proposals_ || mode_ == ExecutionMode::kScopeReplayPrior) {
    return nullptr;
  }
  return model_.proposal_for(label);
}

bool Interpreter::collect_choices() const noexcept {
  return config_.record_choices || config_.estimator.kind() == EstimatorKind::Kind::kCollapsedOracle;
}

Address Interpreter::current_address(std::string_view label) const {
  Address address;
  address.label = std::string(label);
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    address.path.push_back(frames_[i].key);
  }
  return address;
}

void Interpreter::add_factor(FactorTag tag, double log_value, std::string origin) {
  if (frames_.size() == 1) {
    record_.ledger.add(tag, log_value, std::move(origin));
  } else {
    frames_.back().nested.add(tag, log_value, std::move(origin));
  }
}

double Interpreter::sample(std::string_view label, const Dist& prior) {
  Frame& frame = frames_.back();
  if (std::ranges::find(frame.labels, label) != frame.labels.end()) {
    throw DuplicateAddress("duplicate address " + current_address(label).to_string());
  }
  frame.labels.emplace_back(label);

  const Dist* proposal = proposal_for(label);
  if (proposal != nullptr && !proposal->support().contains(prior.support())) {
    std::ostringstream os;
    os << "proposal " << *proposal << " does not cover the support of prior " << prior << " at "
       << current_address(label);
    throw ProposalSupportViolation(os.str());
  }
  const Dist& used = proposal != nullptr ? *proposal : prior;

  double value = 0.0;
  bool pinned = false;
  if (pinned_active_ && !is_replay(mode_)) {
    if (const auto it = config_.pinned.find(label); it != config_.pinned.end()) {
      value = it->second;
      pinned = true;
    }
  }
  if (!pinned) {
    value = used.sample(*rng_);
  }

  if (!ledger_active()) {
    return value;
  }

  double log_ratio = 0.0;
  const double log_p = prior.log_pdf(value);
  if (proposal != nullptr) {
    const double log_q = proposal->log_pdf(value);
    if (log_q == -kInf && log_p > -kInf) {
      throw ProposalSupportViolation("proposal density is zero at " + current_address(label).to_string() +
                                     " where the prior is positive");
    }
    log_ratio = log_p == -kInf ? -kInf : log_p - log_q;
  } else if (log_p == -kInf) {
    log_ratio = -kInf;  // pinned value outside the prior support
  }

  if (frames_.size() == 1) {
    record_.ledger.add(FactorTag::kPriorRatio, log_ratio, std::string(label));
  } else {
    frame.site_log_ratio += log_ratio;
  }

  if (collect_choices()) {
    Choice choice{current_address(label), prior, used, value, mode_};
    if (frames_.size() == 1) {
      record_.choices.push_back(std::move(choice));
    } else {
      frame.choices.push_back(std::move(choice));
    }
  }
  return value;
}

void Interpreter::observe(std::string_view label, const Dist& likelihood, double value) {
  if (open_scopes_ > 0) {
    throw ObserveInsideScope("observe '" + std::string(label) + "' inside rejection scope at " +
                             current_address(label).to_string());
  }
  Frame& frame = frames_.back();
  if (std::ranges::find(frame.labels, label) != frame.labels.end()) {
    throw DuplicateAddress("duplicate address " + std::string(label));
  }
  frame.labels.emplace_back(label);
  record_.observations.push_back(Observation{current_address(label), likelihood, value});
  record_.ledger.add(FactorTag::kLikelihood, likelihood.log_pdf(value), std::string(label));
}

TraceRecord run_trace(const ModelProgram& model, ExecutionMode mode, RngStream main_stream, RngStream replay_root,
                      const EngineConfig& config) {
  TraceRecord record;
  Interpreter interpreter{model, mode, main_stream, replay_root, config, record};
  record.return_value = model.entry()(interpreter);
  return record;
}

TraceRecord run_trace(const ModelProgram& model, ExecutionMode mode, RngStream particle_stream,
                      const EngineConfig& config) {
  return run_trace(model, mode, particle_stream, particle_stream.split("replay"), config);
}

}  // namespace ars
