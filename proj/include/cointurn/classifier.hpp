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

#ifndef COINTURN_CLASSIFIER_HPP_
#define COINTURN_CLASSIFIER_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cointurn/schedule.hpp"

namespace cointurn {

enum class RegimeTag {
  kSupercritical,     // sum p_n < infinity
  kCritical,          // p_n = a / n
  kSubcriticalPower,  // p_n = a / n^gamma, 0 < gamma < 1
  kConstantClt,       // p_n = c
  kUnknown,
};

struct Regime {
  RegimeTag tag = RegimeTag::kUnknown;
  double a = 0.0;
  double gamma = 0.0;
  double c = 0.0;
};

enum class Evidence { kHolds, kFails, kInconclusive };
enum class CarlemanVerdict { kDiverges, kConverges, kInconclusive };

std::string_view to_string(RegimeTag tag);
std::string_view to_string(Evidence evidence);
std::string_view to_string(CarlemanVerdict verdict);

// Finite-N heuristics. None of these prove anything about N -> infinity; they
// report what the exact finite-N data look like.
struct ClassifierThresholds {
  // |theta - target| below this counts as "theta is target".
  double theta_tolerance = 0.15;
  // Ratio of the last two dyadic block sums below this: series converging.
  double block_ratio = 0.8;
  // At or above this: series diverging. In between: inconclusive.
  double divergence_ratio = 0.95;
  // Carleman terms shrinking by at least this factor every step: converges.
  double carleman_ratio = 0.9;
  // min term / first term at or above this: terms bounded below, diverges.
  double carleman_floor = 0.5;
};

struct ExponentFit {
  double theta = 0.0;
  double standard_error = 0.0;
  // theta +- 2 standard errors.
  double lower = 0.0;
  double upper = 0.0;
  std::size_t points = 0;
};

struct SeriesEvidence {
  // Partial sums up to each horizon.
  std::vector<double> partial_sums;
  // |sum| over complete dyadic blocks [2^b, 2^{b+1}).
  std::vector<std::size_t> block_starts;
  std::vector<double> block_sums;
  double last_ratio = 0.0;
  Evidence converges = Evidence::kInconclusive;
};

struct LlnEvidence {
  unsigned k = 2;
  std::vector<std::size_t> horizons;
  std::vector<double> e2;  // E(N, 2) at each horizon
  std::vector<double> ek;  // E(N, K) at each horizon
  SeriesEvidence c1;       // sum_N E(N, 2) / N
  SeriesEvidence c2;       // sum_N E(N, K)
  double e2_slope = 0.0;   // d log E(N, 2) / d log N over the horizons
  double ek_slope = 0.0;
  Evidence wlln = Evidence::kInconclusive;    // E(N, 2), E(N, K) -> 0
  Evidence no_lln = Evidence::kInconclusive;  // E(N, 2) -> positive constant
  // Two-point extrapolation of E(N, 2) in 1/N at the largest horizons.
  double e2_limit_estimate = 0.0;
  // min E(N, 2) over N in [N_max / 2, N_max]; a liminf proxy.
  double e2_tail_min = 0.0;
};

struct CarlemanReport {
  std::vector<double> terms;         // mu_K^{-1/K}
  std::vector<double> partial_sums;
  CarlemanVerdict verdict = CarlemanVerdict::kInconclusive;
};

struct RegimeReport {
  Regime analytic;
  std::vector<std::size_t> horizons;
  std::vector<double> e2;           // E(N, 2)
  std::vector<double> pair_sum;     // N^2 E(N, 2)
  ExponentFit fit;                  // N^2 E(N, 2) ~ N^theta
  Evidence crucial = Evidence::kInconclusive;         // E(N, 2) = O(1/N)
  Evidence second_crucial = Evidence::kInconclusive;  // E(N, 2) = o(1)
  Evidence no_lln = Evidence::kInconclusive;
  // Clause (1 CLT, 2 non-standard CLT, 3 no WLLN; 0 undecided)
  // suggested by the data and by the analytic regime.
  int empirical_clause = 0;
  int analytic_clause = 0;
  bool consistent = false;
  LlnEvidence lln;
  // Limit moment estimates K! lim E(N, K), filled in when no_lln holds.
  std::vector<unsigned> moment_orders;
  std::vector<double> moment_limits;
  CarlemanReport carleman;
  ClassifierThresholds thresholds;
};

Regime classify_analytic(const Schedule& schedule);

// Clause implied by an analytic regime (0 for kUnknown).
int regime_clause(const Regime& regime);

// Least-squares slope of log|y| against log x; zero entries are skipped.
ExponentFit fit_log_log(std::span<const std::size_t> x, std::span<const double> y);

// Needs >= 4 ascending horizons, the largest >= 1000.
RegimeReport classify_empirical(const Schedule& schedule,
                                std::span<const std::size_t> horizons,
                                const ClassifierThresholds& thresholds = {},
                                unsigned k = 4);

// Needs >= 2 ascending horizons and an even K.
LlnEvidence lln_conditions(const Schedule& schedule,
                           std::span<const std::size_t> horizons, unsigned k,
                           const ClassifierThresholds& thresholds = {});

// `moments[i]` is the order-(2i + 2) moment.
CarlemanReport carleman_check(std::span<const double> moments,
                              const ClassifierThresholds& thresholds = {});

}  // namespace cointurn

#endif  // COINTURN_CLASSIFIER_HPP_
