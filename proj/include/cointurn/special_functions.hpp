// Copyright 2026 The cointurn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COINTURN_SPECIAL_FUNCTIONS_HPP_
#define COINTURN_SPECIAL_FUNCTIONS_HPP_

#include <cstddef>
#include <functional>

namespace cointurn {

// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms; reflection below 1/2).
double log_gamma(double x);

// Modified Bessel function of the first kind,
//   I_alpha(x) = sum_m (x/2)^{2m+alpha} / (m! Gamma(m + alpha + 1)),
// summed with log-space terms until a term drops below 1e-17 of the partial
// sum. Requires alpha >= -1/2 and x >= 0.
double bessel_i(double alpha, double x);

// ln I_alpha(x); usable where I_alpha itself would overflow.
double log_bessel_i(double alpha, double x);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // |Kronrod - Gauss| summed over the final partition
  std::size_t intervals = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12,
                           std::size_t max_intervals = 4000);

}  // namespace cointurn

#endif  // COINTURN_SPECIAL_FUNCTIONS_HPP_
