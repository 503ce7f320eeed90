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

#ifndef ARS_TESTS_FIXTURES_HPP
#define ARS_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ars/distributions.hpp"
#include "ars/interpreter.hpp"
#include "ars/model.hpp"

namespace ars::fixtures {

/// x ~ prior; observe y_obs ~ N(x, 1).
inline ModelProgram single_site(const Dist& prior, std::optional<Dist> proposal = std::nullopt, double y_obs = 0.3) {
  ModelProgram m{"single_site", [prior, y_obs](Interpreter& h) {
                   const double x = h.sample("x", prior);
                   h.observe("y", Dist::normal(x, 1.0), y_obs);
                   return x;
                 }};
  if (proposal) {
    m.set_proposal("x", *proposal);
  }
  return m;
}

/// One loop: c ~ Uniform(0, 1) until c < p; returns c.
inline ModelProgram coin_loop(double p) {
  return ModelProgram{"coin_loop", [p](Interpreter& h) {
                        return h.rejection_scope("coin", [p](Interpreter& s) -> std::optional<double> {
                          const double c = s.sample("c", Dist::uniform(0.0, 1.0));
                          return c < p ? std::optional<double>{c} : std::nullopt;
                        });
                      }};
}

/// A loop whose condition never holds.
inline ModelProgram never_accepts() {
  return ModelProgram{"never", [](Interpreter& h) {
                        return h.rejection_scope("stuck", [](Interpreter& s) -> std::optional<double> {
                          (void)s.sample("z", Dist::normal(0.0, 1.0));
                          return std::nullopt;
                        });
                      }};
}

/// Two-level nesting: the outer loop draws a, runs an inner loop for b > a - 1,
/// and accepts when a + b > 0. An observation follows both loops.
inline ModelProgram nested_loops() {
  ModelProgram m{"nested", [](Interpreter& h) {
                   const double s = h.rejection_scope("outer", [](Interpreter& o) -> std::optional<double> {
                     const double a = o.sample("a", Dist::normal(0.0, 1.0));
                     const double b = o.rejection_scope("inner", [a](Interpreter& i) -> std::optional<double> {
                       const double v = i.sample("b", Dist::normal(0.0, 1.0));
                       return v > a - 1.0 ? std::optional<double>{v} : std::nullopt;
                     });
                     return a + b > 0.0 ? std::optional<double>{a + b} : std::nullopt;
                   });
                   h.observe("y", Dist::normal(s, 1.0), 0.5);
                   return s;
                 }};
  m.set_proposal("a", Dist::normal(-0.5, 1.5));
  m.set_proposal("b", Dist::normal(0.5, 1.5));
  return m;
}

/// Largest gap between the empirical CDF of `values` and `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> values, Cdf cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace ars::fixtures

#endif
