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

#include "cointurn/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cointurn/errors.hpp"

namespace cointurn {

double ks_statistic(std::span<const double> sorted_sample, const Cdf& cdf) {
  return ks_statistic(sorted_sample, cdf, cdf);
}

double ks_statistic(std::span<const double> sorted_sample, const Cdf& cdf,
                    const Cdf& cdf_left) {
  if (sorted_sample.empty()) {
    throw PreconditionError("ks_statistic needs a nonempty sample");
  }
  const double m = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted_sample.size()) {
    const double x = sorted_sample[i];
    std::size_t j = i;
    while (j + 1 < sorted_sample.size() && sorted_sample[j + 1] == x) ++j;
    // Empirical CDF is i/M just below x and (j+1)/M at x.
    const double below = static_cast<double>(i) / m;
    const double at = static_cast<double>(j + 1) / m;
    d = std::max({d, std::fabs(at - cdf(x)), std::fabs(cdf_left(x) - below)});
    i = j + 1;
  }
  return std::min(d, 1.0);
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // P(K <= l) = sqrt(2 pi) / l * sum_k exp(-(2k - 1)^2 pi^2 / (8 l^2))
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double survival = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    survival += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(survival, 0.0, 1.0);
}

double ks_p_value(double d, std::size_t m) {
  return kolmogorov_survival(std::sqrt(static_cast<double>(m)) * d);
}

}  // namespace cointurn
