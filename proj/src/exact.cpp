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

#include "cointurn/exact.hpp"

#include <cmath>
#include <string>

#include "cointurn/errors.hpp"
#include "cointurn/numeric.hpp"

namespace cointurn {
namespace {

void require_even_order(unsigned k) {
  if (k < 2 || k % 2 != 0) {
    throw DomainError("pair sums need an even order K >= 2, got " +
                      std::to_string(k));
  }
}

}  // namespace

std::vector<std::int64_t> ExactLaw::support() const {
  std::vector<std::int64_t> s(mass.size());
  for (std::size_t k = 0; k < mass.size(); ++k) s[k] = value(k);
  return s;
}

double ExactLaw::mass_at(std::int64_t s) const {
  const std::int64_t shifted = s + static_cast<std::int64_t>(n);
  if (shifted < 0 || shifted % 2 != 0) return 0.0;
  const auto k = static_cast<std::size_t>(shifted / 2);
  return k < mass.size() ? mass[k] : 0.0;
}

ExactLaw exact_law(const Schedule& schedule, std::size_t n) {
  if (n < 1) throw DomainError("exact_law needs N >= 1");
  if (n > kExactLawMaxHorizon) {
    throw CapacityError("exact_law horizon " + std::to_string(n) +
                        " exceeds cap " + std::to_string(kExactLawMaxHorizon));
  }
  // Index k counts the +1 signs so far; plus/minus split on the current sign.
  std::vector<double> plus(n + 1, 0.0);
  std::vector<double> minus(n + 1, 0.0);
  plus[1] = 0.5;
  minus[0] = 0.5;
  for (std::size_t step = 2; step <= n; ++step) {
    const double p = schedule.turn_probability(step);
    const double q = 1.0 - p;
    for (std::size_t k = step - 1;; --k) {
      const double up = plus[k];
      const double down = minus[k];
      plus[k + 1] = q * up + p * down;
      minus[k] = q * down + p * up;
      if (k == 0) break;
    }
    plus[0] = 0.0;
  }
  ExactLaw law;
  law.n = n;
  law.mass.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) law.mass[k] = plus[k] + minus[k];
  return law;
}

ExactLaw brute_force_law(const Schedule& schedule, std::size_t n) {
  if (n < 1) throw DomainError("brute_force_law needs N >= 1");
  if (n > kBruteForceMaxHorizon) {
    throw CapacityError("brute_force_law horizon " + std::to_string(n) +
                        " exceeds cap " + std::to_string(kBruteForceMaxHorizon));
  }
  std::vector<double> p(n + 1);
  for (std::size_t k = 2; k <= n; ++k) p[k] = schedule.turn_probability(k);

  ExactLaw law;
  law.n = n;
  law.mass.assign(n + 1, 0.0);
  const std::uint64_t outcomes = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < outcomes; ++bits) {
    // Bit 0 picks Y_1, bit k-1 is W_k.
    int y = (bits & 1u) ? 1 : -1;
    std::int64_t sum = y;
    double weight = 0.5;
    for (std::size_t k = 2; k <= n; ++k) {
      const bool turned = (bits >> (k - 1)) & 1u;
      weight *= turned ? p[k] : 1.0 - p[k];
      if (turned) y = -y;
      sum += y;
    }
    law.mass[static_cast<std::size_t>((sum + static_cast<std::int64_t>(n)) / 2)] +=
        weight;
  }
  return law;
}

double exact_moment(const ExactLaw& law, unsigned k) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < law.mass.size(); ++i) {
    acc.add(integer_power(static_cast<double>(law.value(i)), k) * law.mass[i]);
  }
  return acc.value();
}

PairSumState::PairSumState(unsigned max_pairs)
    : closed_(max_pairs + 1, 0.0), open_(max_pairs + 1, 0.0) {
  closed_[0] = 1.0;
}

void PairSumState::advance(double step_factor) {
  const double t = index_ == 0 ? 0.0 : step_factor;
  const std::size_t pairs = closed_.size() - 1;
  // Close an open pair at j (from the top so closed_[m - 1] is still the
  // value before j), then open a new pair at j from the pre-j closed sums.
  for (std::size_t m = pairs; m >= 1; --m) {
    const double before = closed_[m];
    closed_[m] += open_[m - 1] * t;
    open_[m] = open_[m] * t + before;
  }
  open_[0] = open_[0] * t + closed_[0];
  ++index_;
}

double pair_product_sum(std::span<const double> step_factors, unsigned k) {
  require_even_order(k);
  const std::size_t n = step_factors.size() + 1;
  if (n < k) return 0.0;
  PairSumState state(k / 2);
  state.advance(1.0);
  for (double t : step_factors) state.advance(t);
  return state.closed(k / 2);
}

std::vector<double> pair_product_sum_series(std::span<const double> step_factors,
                                            unsigned k) {
  require_even_order(k);
  std::vector<double> out;
  out.reserve(step_factors.size() + 1);
  PairSumState state(k / 2);
  state.advance(1.0);
  out.push_back(state.closed(k / 2));
  for (double t : step_factors) {
    state.advance(t);
    out.push_back(state.closed(k / 2));
  }
  return out;
}

double e_moment_sum(const Schedule& schedule, std::size_t n, unsigned k) {
  require_even_order(k);
  if (n < 1) throw DomainError("E(N, K) needs N >= 1");
  const auto factors = correlation_factors(schedule, n);
  const double m = pair_product_sum(factors, k);
  return m / std::pow(static_cast<double>(n), static_cast<double>(k));
}

std::vector<double> e_moment_series(const Schedule& schedule, std::size_t n,
                                    unsigned k) {
  require_even_order(k);
  const auto factors = correlation_factors(schedule, n);
  auto series = pair_product_sum_series(factors, k);
  for (std::size_t j = 1; j <= series.size(); ++j) {
    series[j - 1] /= std::pow(static_cast<double>(j), static_cast<double>(k));
  }
  return series;
}

double variance_of_sum(const Schedule& schedule, std::size_t n) {
  if (n < 1) throw DomainError("variance_of_sum needs N >= 1");
  const auto factors = correlation_factors(schedule, n);
  return static_cast<double>(n) + 2.0 * pair_product_sum(factors, 2);
}

TurnCountLaw turn_count_pmf(const Schedule& schedule, std::size_t n) {
  if (n < 2) throw DomainError("turn_count_pmf needs n >= 2");
  TurnCountLaw law;
  law.n = n;
  law.mass.assign(n, 0.0);
  law.mass[0] = 1.0;
  for (std::size_t j = 2; j <= n; ++j) {
    const double p = schedule.turn_probability(j);
    const std::size_t top = j - 1;  // turns possible so far
    for (std::size_t k = top; k >= 1; --k) {
      law.mass[k] = law.mass[k] * (1.0 - p) + law.mass[k - 1] * p;
    }
    law.mass[0] *= 1.0 - p;
  }
  return law;
}

std::complex<double> turn_count_cf(const Schedule& schedule, std::size_t n,
                                   double t) {
  if (n < 2) throw DomainError("turn_count_cf needs n >= 2");
  const std::complex<double> phase = std::polar(1.0, t);
  std::complex<double> acc(1.0, 0.0);
  for (std::size_t j = 2; j <= n; ++j) {
    const double p = schedule.turn_probability(j);
    acc *= (1.0 - p) + p * phase;
  }
  return acc;
}

AppendixSum appendix_sum(double c, double gamma, unsigned k, std::size_t n,
                         std::size_t n0) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("appendix sum needs c > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("appendix sum needs gamma in (0, 1)");
  }
  require_even_order(k);
  if (n0 < 1) throw DomainError("appendix sum needs n0 >= 1");

  const unsigned m = k / 2;
  AppendixSum out;
  out.normalizer = std::pow(static_cast<double>(n), k * (1.0 + gamma) / 2.0) /
                   (std::pow(c * (1.0 - gamma * gamma), m) * std::tgamma(m + 1.0));
  if (n0 > n || n - n0 + 1 < k) return out;

  // t_i = exp(c[(i-1)^{1-g} - i^{1-g}]) so that w(i, j) = exp(c[i^{1-g} - j^{1-g}]).
  const double power = 1.0 - gamma;
  std::vector<double> factors;
  factors.reserve(n - n0);
  for (std::size_t i = n0 + 1; i <= n; ++i) {
    const double x = static_cast<double>(i);
    const double gap = std::pow(x, power) * std::expm1(power * std::log1p(-1.0 / x));
    factors.push_back(std::exp(c * gap));
  }
  out.q = pair_product_sum(factors, k);
  out.ratio = out.q / out.normalizer;
  return out;
}

double appendix_q_ratio(double c, double gamma, unsigned k, std::size_t n,
                        std::size_t n0) {
  return appendix_sum(c, gamma, k, n, n0).ratio;
}

}  // namespace cointurn
