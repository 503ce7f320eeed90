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

#include "ars/models/gum.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"

namespace ars {

namespace {

struct Branch {
  std::string_view scope;
  std::string_view site;
  bool upper;  // accepts mu > mu0; otherwise mu <= mu0
};

constexpr Branch kUpper{"branch1", "branch1.mu", true};
constexpr Branch kLower{"branch2", "branch2.mu", false};

const Branch& branch_for(std::string_view scope) {
  if (scope == kUpper.scope) {
    return kUpper;
  }
  if (scope == kLower.scope) {
    return kLower;
  }
  throw ConfigError("GUM has no rejection scope '" + std::string(scope) + "' (expected branch1 or branch2)");
}

bool accepts(const Branch& b, double mu, double mu0) noexcept { return b.upper ? mu > mu0 : mu <= mu0; }

double region_log_mass(const Branch& b, const Dist& d, double mu0) noexcept {
  return std::log(b.upper ? d.mass(mu0, kInf) : d.mass(-kInf, mu0));
}

}  // namespace

std::string_view to_string(GumProposal preset) noexcept {
  return preset == GumProposal::kPrior ? "prior" : "fixed";
}

GumProposal parse_gum_proposal(std::string_view name) {
  if (name == "prior") {
    return GumProposal::kPrior;
  }
  if (name == "fixed") {
    return GumProposal::kFixed;
  }
  throw ConfigError("unknown GUM proposal preset '" + std::string(name) + "' (expected prior or fixed)");
}

ModelProgram build_gum(const GumParams& params, GumProposal preset) {
  const Dist prior = Dist::normal(params.mu0, params.sigma0);
  if (!(params.sigma > 0.0) || !std::isfinite(params.sigma) || !std::isfinite(params.y_obs)) {
    throw InvalidDistribution("GUM likelihood needs a finite observation and sigma > 0");
  }

  auto entry = [params, prior](Interpreter& h) {
    const double u = h.sample("u", Dist::uniform(0.0, 1.0));
    const Branch& b = u > 0.5 ? kUpper : kLower;
    const double mu = h.rejection_scope(b.scope, [&](Interpreter& s) -> std::optional<double> {
      const double z = s.sample(b.site, prior);
      return accepts(b, z, params.mu0) ? std::optional<double>{z} : std::nullopt;
    });
    h.observe("y", Dist::normal(mu, params.sigma), params.y_obs);
    return mu;
  };

  ModelProgram model{"gum", std::move(entry), {params.y_obs}};
  if (preset == GumProposal::kFixed) {
    model.set_proposal(std::string(kUpper.site), Dist::normal(-2.0, 2.0));
  }
  model.set_oracle([mu0 = params.mu0](const AcceptanceQuery& q) {
    const Branch& b = branch_for(q.scope.label);
    if (q.accepted.size() != 1) {
      throw OracleUnavailable("GUM oracle expects exactly one draw per loop iteration");
    }
    const Choice& c = q.accepted.front();
    return AcceptanceProbabilities{region_log_mass(b, c.prior, mu0), region_log_mass(b, c.dist_used, mu0)};
  });
  return model;
}

double gum_true_posterior_mean(const GumParams& params) noexcept {
  const double v0 = params.sigma0 * params.sigma0;
  const double v = params.sigma * params.sigma;
  return (v0 * params.y_obs + v * params.mu0) / (v0 + v);
}

LoopSite gum_loop_site(const GumParams& params, GumProposal preset, std::string_view scope) {
  const Branch& b = branch_for(scope);
  const Dist prior = Dist::normal(params.mu0, params.sigma0);
  const Dist proposal = preset == GumProposal::kFixed && b.upper ? Dist::normal(-2.0, 2.0) : prior;
  return LoopSite{prior, proposal, [&b, mu0 = params.mu0](double z) { return accepts(b, z, mu0) ? 1.0 : 0.0; }};
}

std::map<std::string, double, std::less<>> gum_fixture(std::string_view scope, double mu) {
  const Branch& b = branch_for(scope);
  return {{"u", b.upper ? 0.75 : 0.25}, {std::string(b.site), mu}};
}

}  // namespace ars
