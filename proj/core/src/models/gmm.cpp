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

#include "ars/models/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "ars/error.hpp"
#include "ars/interpreter.hpp"
#include "ars/quadrature.hpp"

namespace ars {

namespace {

double log_ratio(const GmmParams& p, double x) noexcept {
  const double a = (x - p.mu1) / p.sigma1;
  const double b = (x - p.mu0_base) / p.sigma0_base;
  return -0.5 * a * a + 0.5 * b * b + std::log(p.sigma0_base / p.sigma1);
}

void validate(const GmmParams& p) {
  if (!(p.pi1 > 0.0 && p.pi1 < 1.0)) {
    throw InvalidDistribution("GMM mixture weight pi1 must lie in (0, 1)");
  }
  for (const double s : {p.sigma1, p.sigma2, p.sigma0_base, p.sigma_lik}) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidDistribution("GMM scales must be finite and positive");
    }
  }
  for (const double m : {p.mu1, p.mu2, p.mu0_base, p.y_obs}) {
    if (!std::isfinite(m)) {
      throw InvalidDistribution("GMM locations must be finite");
    }
  }
}

Dist base_mu_proposal(const GmmParams& p, GmmProposal preset) {
  switch (preset) {
    case GmmProposal::kPrior:
      return Dist::normal(p.mu0_base, p.sigma0_base);
    case GmmProposal::kFixed:
      return Dist::normal(-2.0, 2.0);
    case GmmProposal::kPerfectBase:
    case GmmProposal::kPerfectPlusU2:
      return Dist::normal(p.mu1, p.sigma1);
  }
  throw ConfigError("unknown GMM proposal preset");
}

Dist u2_proposal() { return Dist::truncated_normal(-0.5, 0.5, 0.0, 1.0); }

}  // namespace

std::string_view to_string(GmmProposal preset) noexcept {
  switch (preset) {
    case GmmProposal::kPrior:
      return "prior";
    case GmmProposal::kFixed:
      return "fixed";
    case GmmProposal::kPerfectBase:
      return "perfect_base";
    case GmmProposal::kPerfectPlusU2:
      return "perfect_plus_u2";
  }
  return "unknown";
}

GmmProposal parse_gmm_proposal(std::string_view name) {
  for (const auto preset :
       {GmmProposal::kPrior, GmmProposal::kFixed, GmmProposal::kPerfectBase, GmmProposal::kPerfectPlusU2}) {
    if (name == to_string(preset)) {
      return preset;
    }
  }
  throw ConfigError("unknown GMM proposal preset '" + std::string(name) +
                    "' (expected prior, fixed, perfect_base or perfect_plus_u2)");
}

double gmm_envelope_constant(const GmmParams& p) {
  if (p.sigma1 == p.sigma0_base && p.mu1 == p.mu0_base) {
    return 1.0;
  }
  if (!(p.sigma0_base > p.sigma1)) {
    throw EnvelopeInfinite("soft-rejection envelope is unbounded unless sigma0_base > sigma1");
  }
  const double prec1 = 1.0 / (p.sigma1 * p.sigma1);
  const double prec0 = 1.0 / (p.sigma0_base * p.sigma0_base);
  const double x_star = (p.mu1 * prec1 - p.mu0_base * prec0) / (prec1 - prec0);
  return std::exp(log_ratio(p, x_star));
}

double gmm_alpha(const GmmParams& p, double x) {
  return std::exp(log_ratio(p, x) - std::log(gmm_envelope_constant(p)));
}

ModelProgram build_gmm(const GmmParams& params, GmmProposal preset) {
  validate(params);
  const double log_m = std::log(gmm_envelope_constant(params));

  auto entry = [p = params, log_m](Interpreter& h) {
    const double u = h.sample("u", Dist::uniform(0.0, 1.0));
    const double mu = h.rejection_scope("mixture", [&](Interpreter& s) -> std::optional<double> {
      if (u < p.pi1) {
        const double x = s.sample("base.mu", Dist::normal(p.mu0_base, p.sigma0_base));
        const double u2 = s.sample("base.u2", Dist::uniform(0.0, 1.0));
        if (u2 < std::exp(log_ratio(p, x) - log_m)) {
          return x;
        }
        return std::nullopt;
      }
      return s.sample("component2.mu", Dist::normal(p.mu2, p.sigma2));
    });
    h.observe("y", Dist::normal(mu, p.sigma_lik), p.y_obs);
    return mu;
  };

  ModelProgram model{"gmm", std::move(entry), {params.y_obs}};
  if (preset != GmmProposal::kPrior) {
    model.set_proposal("base.mu", base_mu_proposal(params, preset));
  }
  if (preset == GmmProposal::kPerfectPlusU2) {
    model.set_proposal("base.u2", u2_proposal());
  }
  return model;
}

GmmAcceptance gmm_acceptance_probability(const GmmParams& params, GmmProposal preset) {
  validate(params);
  const double m = gmm_envelope_constant(params);
  const Dist q_mu = base_mu_proposal(params, preset);
  const std::optional<Dist> q_u2 =
      preset == GmmProposal::kPerfectPlusU2 ? std::optional<Dist>{u2_proposal()} : std::nullopt;
  const auto integrand = [&](double x) {
    const double a = std::min(1.0, gmm_alpha(params, x));
    const double accept = q_u2 ? q_u2->cdf(a) : a;
    return std::exp(q_mu.log_pdf(x)) * accept;
  };
  const double spread = 12.0 * std::sqrt(q_mu.variance());
  const QuadratureResult r = integrate_adaptive(integrand, q_mu.mean() - spread, q_mu.mean() + spread, 1e-12);
  return GmmAcceptance{1.0 / m, r.value};
}

double gmm_true_posterior_mean(const GmmParams& params) {
  validate(params);
  const double vl = params.sigma_lik * params.sigma_lik;
  const auto component = [&](double pi, double mu, double sigma) {
    const double v = sigma * sigma;
    const double marginal_sd = std::sqrt(v + vl);
    const double z = (params.y_obs - mu) / marginal_sd;
    return std::pair{std::log(pi) - 0.5 * z * z - std::log(marginal_sd), (v * params.y_obs + vl * mu) / (v + vl)};
  };
  const auto [l1, m1] = component(params.pi1, params.mu1, params.sigma1);
  const auto [l2, m2] = component(1.0 - params.pi1, params.mu2, params.sigma2);
  const double w1 = 1.0 / (1.0 + std::exp(l2 - l1));
  return w1 * m1 + (1.0 - w1) * m2;
}

LoopSite gmm_loop_site(const GmmParams& params, GmmProposal preset) {
  if (preset == GmmProposal::kPerfectPlusU2) {
    throw ConfigError("the perfect_plus_u2 loop has two proposed sites; S is defined here for one");
  }
  validate(params);
  const double log_m = std::log(gmm_envelope_constant(params));
  return LoopSite{Dist::normal(params.mu0_base, params.sigma0_base), base_mu_proposal(params, preset),
                  [params, log_m](double x) { return std::min(1.0, std::exp(log_ratio(params, x) - log_m)); }};
}

}  // namespace ars
