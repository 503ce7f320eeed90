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

#ifndef ARS_INTERPRETER_HPP
#define ARS_INTERPRETER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "ars/distributions.hpp"
#include "ars/estimator.hpp"
#include "ars/model.hpp"
#include "ars/rng.hpp"
#include "ars/trace.hpp"

/**
 * \file
 * \brief Trace engine: runs a model once per particle and records its weight.
 *
 * A model is ordinary C++ code calling Interpreter::sample, observe and
 * rejection_scope. A rejection scope is the structured form of an annotated
 * loop
 *
 *     while True:
 *         rs_start()
 *         z = sample(...)
 *         if c(x, z):
 *             rs_end()
 *             break
 *
 * written as
 *
 *     auto z = h.rejection_scope("label", [&](Interpreter& s) -> std::optional<double> {
 *       double z = s.sample("z", prior);
 *       if (c(x, z)) return z;
 *       return std::nullopt;
 *     });
 *
 * The body must be a pure function of the draws it makes (and of state
 * captured at loop entry) and must not call observe().
 */

namespace ars {

struct EngineConfig {
  EstimatorKind estimator = EstimatorKind::naive_ic();
  /// Iterations allowed per loop execution (also per trials-to-acceptance replication).
  int scope_cap = 1'000'000;
  /// Keep every Choice in the TraceRecord. The harness turns this off for speed.
  bool record_choices = true;
  /// Site label -> value. Pinned sites outside loops always take the pinned
  /// value; inside a loop, the iterations are drawn normally and the accepted
  /// iteration of a loop that samples a pinned site directly is then
  /// re-executed with the pinned values. Used to evaluate a
  /// weight conditionally on fixed (x, z).
  std::map<std::string, double, std::less<>> pinned;
};

using ScopeBody = std::function<bool(Interpreter&)>;

class Interpreter {
 public:
  Interpreter(const ModelProgram& model, ExecutionMode mode, RngStream main_stream, RngStream replay_root,
              const EngineConfig& config, TraceRecord& record);

  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  /// Draws a value for the site `label` with prior `prior`.
  /**
   * The draw comes from the registered proposal in proposal modes and from
   * the prior otherwise. Outside replays the log ratio log p - log q is
   * recorded: as its own factor at top level, or summed into the current
   * loop iteration.
   *
   * \throws DuplicateAddress if the label was already used in this frame.
   * \throws ProposalSupportViolation if the proposal does not cover the prior.
   */
  double sample(std::string_view label, const Dist& prior);

  /// Conditions on `value` under `likelihood`.
  /// \throws ObserveInsideScope when called inside a rejection scope.
  void observe(std::string_view label, const Dist& likelihood, double value);

  /// Runs `body` until it returns a value, then applies the estimator's loop accounting.
  /**
   * `body(Interpreter&)` returns std::optional<T>; std::nullopt rejects.
   * \throws ScopeIterationCapExceeded when no iteration accepts within the cap.
   */
  template <class Body>
  auto rejection_scope(std::string_view label, Body&& body) {
    using Result = std::remove_cvref_t<std::invoke_result_t<Body&, Interpreter&>>;
    using Payload = typename Result::value_type;
    std::optional<Payload> last;
    std::optional<Payload> accepted;
    run_scope(
        label,
        [&](Interpreter& h) {
          last = std::invoke(body, h);
          return last.has_value();
        },
        [&] { accepted = std::move(last); });
    return std::move(*accepted);
  }

  [[nodiscard]] ExecutionMode mode() const noexcept { return mode_; }
  [[nodiscard]] int scope_depth() const noexcept { return open_scopes_; }

  /// Executes a loop body in a replay mode: proposal-mode acceptance count.
  /**
   * Runs `body` `proposal_runs` times under SCOPE_REPLAY_PROPOSAL with the
   * replay stream of `scope` and returns the number of accepting runs (K).
   */
  int estimate_q_accept(const ScopeId& scope, const ScopeBody& body, int proposal_runs);

  /// Trials to first acceptance under SCOPE_REPLAY_PRIOR, `replications` times.
  /// \throws ScopeIterationCapExceeded if a replication exceeds the cap.
  std::vector<int> estimate_inv_p_accept(const ScopeId& scope, const ScopeBody& body, int replications);

 private:
  struct Frame {
    ScopeFrameKey key;
    std::vector<std::string> labels;
    double site_log_ratio = 0.0;
    WeightLedger nested;
    std::vector<Choice> choices;
  };

  void run_scope(std::string_view label, const ScopeBody& body, const std::function<void()>& on_accept);
  bool run_iteration(const ScopeId& id, std::uint32_t iteration, const ScopeBody& body, Frame& out);
  void commit_iteration(const ScopeId& id, Frame& frame);
  void apply_correction(const ScopeId& id, const ScopeBody& body, ScopeStats& stats);
  void add_factor(FactorTag tag, double log_value, std::string origin);
  [[nodiscard]] Address current_address(std::string_view label) const;
  [[nodiscard]] bool ledger_active() const noexcept { return !is_replay(mode_); }
  [[nodiscard]] const Dist* proposal_for(std::string_view label) const noexcept;
  [[nodiscard]] RngStream replay_stream(const ScopeId& id, ExecutionMode kind) const noexcept;
  [[nodiscard]] bool collect_choices() const noexcept;

  const ModelProgram& model_;
  const EngineConfig& config_;
  TraceRecord& record_;
  ExecutionMode mode_;
  bool use_proposals_;
  RngStream main_stream_;
  RngStream replay_root_;
  RngStream* rng_;
  std::vector<Frame> frames_;
  std::map<std::string, std::uint32_t, std::less<>> scope_instances_;
  int open_scopes_ = 0;
  bool pinned_active_;
};

/// Executes `model` once and returns its trace.
/**
 * `mode` must be kPriorOnly or kProposal. The particle stream drives the main
 * draws; loop-correction replays use streams split from its seed, so they are
 * independent of the draws made on the main path.
 */
[[nodiscard]] TraceRecord run_trace(const ModelProgram& model, ExecutionMode mode, RngStream particle_stream,
                                    const EngineConfig& config);

/// As above with explicit main and replay-root streams.
[[nodiscard]] TraceRecord run_trace(const ModelProgram& model, ExecutionMode mode, RngStream main_stream,
                                    RngStream replay_root, const EngineConfig& config);

}  // namespace ars

#endif
