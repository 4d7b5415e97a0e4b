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

#ifndef COINTURN_MONTECARLO_HPP_
#define COINTURN_MONTECARLO_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cointurn/limit_laws.hpp"
#include "cointurn/schedule.hpp"

namespace cointurn {

inline constexpr std::size_t kMaxSimulationHorizon = 1'000'000'000;
inline constexpr std::size_t kMaxSimulationPaths = 50'000'000;
// Raw scaled sums kept in a summary are capped at this many values.
inline constexpr std::size_t kMaxRetainedSample = 1'000'000;

// S_N for paths 0..paths-1, in path order.
//
// Path i draws from CounterRng(seed, i): Philox4x32-10 keyed by the seed with
// counter (block, i). The top bit of its first 64-bit word picks Y_1 = +1;
// word n - 1 drives step n >= 2, which turns the coin iff
// (word >> 11) < p_n * 2^53. The result does not depend on `threads`.
std::vector<std::int32_t> simulate_sums(const Schedule& schedule, std::size_t n,
                                        std::size_t paths, std::uint64_t seed,
                                        unsigned threads = 1);

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending edges
  std::vector<std::uint64_t> counts;
};

struct SimulationOptions {
  unsigned threads = 1;
  // Scaled sum is S_N / N^exponent; unset picks it from the analytic regime.
  std::optional<double> scaling_exponent;
  std::size_t bins = 101;
  std::size_t retain = 0;
};

struct SimulationSummary {
  std::string schedule;
  std::size_t n = 0;
  std::size_t paths = 0;
  std::uint64_t seed = 0;
  double scaling_exponent = 1.0;
  // moments[k - 1] = sample mean of x^k, x the scaled sum.
  std::array<double, 8> moments{};
  // Over [-1, 1] for exponent 1, otherwise over [-r, r] with r = max |x|.
  Histogram histogram;
  std::vector<double> retained_sample;
};

// Exponent used when none is given: 1 for critical, supercritical and
// unknown schedules, (1 + gamma) / 2 subcritical, 1/2 constant.
double default_scaling_exponent(const Schedule& schedule);

SimulationSummary summarize_sums(const Schedule& schedule, std::size_t n,
                                 std::uint64_t seed,
                                 const std::vector<std::int32_t>& sums,
                                 double scaling_exponent, std::size_t bins,
                                 std::size_t retain);

SimulationSummary simulate_paths(const Schedule& schedule, std::size_t n,
                                 std::size_t paths, std::uint64_t seed,
                                 const SimulationOptions& options = {});

// Theoretical limit predicted by the analytic regime. Throws
// PreconditionError for table schedules and DomainError for p_n = 1.
LimitLaw auto_target(const Schedule& schedule);

struct MomentCheck {
  unsigned order = 0;
  double sample = 0.0;
  double target = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
};

struct VerifyOptions {
  double ks_threshold = 0.02;
  double z_threshold = 4.0;
  std::vector<unsigned> moment_orders = {2, 4};
  unsigned threads = 1;
  std::size_t bins = 101;
};

struct VerificationReport {
  std::string target;
  double ks = 0.0;
  double p_value = 0.0;
  std::vector<MomentCheck> moments;
  double ks_threshold = 0.0;
  double z_threshold = 0.0;
  bool pass = false;
  SimulationSummary summary;
};

// Pass iff ks <= ks_threshold and every |z| <= z_threshold.
bool verdict(const VerificationReport& report);

// Simulates, then compares the scaled sums with `target` (auto_target when
// unset) via KS and per-moment z-scores.
VerificationReport verify(const Schedule& schedule, std::size_t n,
                          std::size_t paths, std::uint64_t seed,
                          const std::optional<LimitLaw>& target,
                          const VerifyOptions& options = {});

}  // namespace cointurn

#endif  // COINTURN_MONTECARLO_HPP_
