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

#ifndef ARS_QUADRATURE_HPP
#define ARS_QUADRATURE_HPP

#include <functional>

namespace ars {

struct QuadratureResult {
  double value;
  double abs_error;  ///< sum of |K15 - G7| over the final partition
  int intervals;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.
/**
 * Repeatedly bisects the sub-interval with the largest error estimate until
 * the summed estimate drops below `abs_tol`. Jump discontinuities are handled
 * by this refinement (each bisection halves the contribution of the jump).
 *
 * \throws QuadratureNonconvergent if `max_intervals` is reached first or the
 *         integrand produces a non-finite value.
 */
[[nodiscard]] QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                                  double abs_tol, int max_intervals = 20000);

}  // namespace ars

#endif
