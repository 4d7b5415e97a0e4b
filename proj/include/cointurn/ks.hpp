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

#ifndef COINTURN_KS_HPP_
#define COINTURN_KS_HPP_

#include <cstddef>
#include <functional>
#include <span>

namespace cointurn {

using Cdf = std::function<double(double)>;

// sup_x |F_M(x) - F(x)| for a sorted sample. Equal values are treated as one
// step of the empirical CDF, so `cdf` is evaluated once per distinct value.
// Throws PreconditionError on an empty sample.
double ks_statistic(std::span<const double> sorted_sample, const Cdf& cdf);

// Same, for a target with atoms: `cdf_left(x)` must return F(x-).
double ks_statistic(std::span<const double> sorted_sample, const Cdf& cdf,
                    const Cdf& cdf_left);

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

// Asymptotic p-value of statistic d from m observations.
double ks_p_value(double d, std::size_t m);

}  // namespace cointurn

#endif  // COINTURN_KS_HPP_
