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

#ifndef COINTURN_LIMIT_LAWS_HPP_
#define COINTURN_LIMIT_LAWS_HPP_

#include <string>
#include <string_view>
#include <variant>

#include "cointurn/random.hpp"

namespace cointurn {

// Mass 1/2 at -1 and +1 on the S_N / N scale (Beta(0, 0) for the frequency
// of heads). The supercritical limit.
struct DegeneratePair {};

// xi_a on (-1, 1) with density proportional to (1 - x^2)^{a - 1}:
// a = 1/2 arcsine, a = 1 uniform, a = 3/2 semicircle. The critical limit.
struct SymmetricBeta {
  double a = 1.0;
};

// Normal(0, variance) for S_N / N^exponent.
struct Gaussian {
  double variance = 1.0;
  double scaling_exponent = 0.5;
};

using LimitLaw = std::variant<DegeneratePair, SymmetricBeta, Gaussian>;

// Which sigma^2 constant to attach to the subcritical Gaussian limit.
//   kPaper     1 / (a (1 - gamma))
//   kAppendix  1 / (a (1 + gamma)), the value the exact variance converges to
enum class SigmaConvention { kPaper, kAppendix };

// Selected by extrapolating the exact Var(S_N) / N^{1+gamma}; the acceptance
// suite re-derives the choice and fails if it disagrees with this constant.
inline constexpr SigmaConvention kDefaultSigmaConvention =
    SigmaConvention::kAppendix;

std::string_view to_string(SigmaConvention convention);

double symmetric_beta_density(double a, double x);
// Raw moment E xi_a^k; zero for odd k.
double symmetric_beta_moment(double a, unsigned k);
// Adaptive quadrature of the density, absolute error below 1e-9.
double symmetric_beta_cdf(double a, double x);

// E exp(t xi_a) = Gamma(a + 1/2) (|t|/2)^{1/2 - a} I_{a - 1/2}(|t|).
double beta_mgf(double a, double t);

double subcritical_sigma2(double a, double gamma,
                          SigmaConvention convention = kDefaultSigmaConvention);
// (1 - c) / c, the Markov-chain CLT variance for p_n = c.
double constant_regime_sigma2(double c);
// sigma^k (k - 1)!! for even k, 0 for odd k.
double gaussian_moment(double sigma2, unsigned k);

double normal_cdf(double x, double variance);

double scaling_exponent(const LimitLaw& law);
double limit_cdf(const LimitLaw& law, double x);
// Left limit F(x-); differs from limit_cdf only at atoms.
double limit_cdf_left(const LimitLaw& law, double x);
// Density, or 0 for the atomic law.
double limit_density(const LimitLaw& law, double x);
double limit_moment(const LimitLaw& law, unsigned k);
std::string describe(const LimitLaw& law);

// One draw. SymmetricBeta uses 2 G_1 / (G_1 + G_2) - 1 with independent
// Gamma(a) variates (Marsaglia-Tsang, with the U^{1/a} boost for a < 1);
// Gaussian uses Box-Muller.
double sample_limit(const LimitLaw& law, CounterRng& rng);

// Grammar: degenerate | uniform | arcsine | semicircle | beta:a=<x>
//   | gaussian:var=<x>[,exponent=<e>] | constant:c=<x>
//   | subcritical:a=<x>,gamma=<y>[,convention=paper|appendix]
LimitLaw parse_limit_law(std::string_view text);

}  // namespace cointurn

#endif  // COINTURN_LIMIT_LAWS_HPP_
