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

#include "cointurn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "cointurn/classifier.hpp"
#include "cointurn/errors.hpp"
#include "cointurn/ks.hpp"
#include "cointurn/numeric.hpp"
#include "cointurn/random.hpp"

namespace cointurn {
namespace {

// thresholds[n] = p_n * 2^53, so a 53-bit uniform u turns iff u < threshold.
std::vector<std::uint64_t> turn_thresholds(const Schedule& schedule,
                                           std::size_t n) {
  std::vector<std::uint64_t> thresholds(n + 1, 0);
  for (std::size_t k = 2; k <= n; ++k) {
    thresholds[k] = static_cast<std::uint64_t>(
        std::llround(std::ldexp(schedule.turn_probability(k), 53)));
  }
  return thresholds;
}

void simulate_range(const std::vector<std::uint64_t>& thresholds, std::size_t n,
                    std::uint64_t seed, std::size_t begin, std::size_t end,
                    std::int32_t* out) {
  for (std::size_t path = begin; path < end; ++path) {
    CounterRng rng(seed, path);
    std::int64_t y = (rng.next_u64() >> 63) ? 1 : -1;
    std::int64_t sum = y;
    for (std::size_t k = 2; k <= n; ++k) {
      const std::int64_t turn = (rng.next_u64() >> 11) < thresholds[k];
      y *= 1 - 2 * turn;
      sum += y;
    }
    out[path] = static_cast<std::int32_t>(sum);
  }
}

}  // namespace

std::vector<std::int32_t> simulate_sums(const Schedule& schedule, std::size_t n,
                                        std::size_t paths, std::uint64_t seed,
                                        unsigned threads) {
  if (n < 1) throw DomainError("simulation needs N >= 1");
  if (paths < 1) throw DomainError("simulation needs at least one path");
  if (n > kMaxSimulationHorizon) {
    throw CapacityError("simulation horizon exceeds cap " +
                        std::to_string(kMaxSimulationHorizon));
  }
  if (paths > kMaxSimulationPaths) {
    throw CapacityError("path count exceeds cap " +
                        std::to_string(kMaxSimulationPaths));
  }
  const auto thresholds = turn_thresholds(schedule, n);
  std::vector<std::int32_t> sums(paths);
  const std::size_t workers =
      std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, paths / 64));
  if (workers == 1) {
    simulate_range(thresholds, n, seed, 0, paths, sums.data());
    return sums;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = paths * w / workers;
    const std::size_t end = paths * (w + 1) / workers;
    pool.emplace_back(simulate_range, std::cref(thresholds), n, seed, begin, end,
                      sums.data());
  }
  for (auto& t : pool) t.join();
  return sums;
}

double default_scaling_exponent(const Schedule& schedule) {
  const Regime regime = classify_analytic(schedule);
  switch (regime.tag) {
    case RegimeTag::kSubcriticalPower: return (1.0 + regime.gamma) / 2.0;
    case RegimeTag::kConstantClt: return 0.5;
    default: return 1.0;
  }
}

SimulationSummary summarize_sums(const Schedule& schedule, std::size_t n,
                                 std::uint64_t seed,
                                 const std::vector<std::int32_t>& sums,
                                 double scaling_exponent, std::size_t bins,
                                 std::size_t retain) {
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  if (retain > kMaxRetainedSample) {
    throw CapacityError("retained sample exceeds cap " +
                        std::to_string(kMaxRetainedSample));
  }
  SimulationSummary s;
  s.schedule = schedule.describe();
  s.n = n;
  s.paths = sums.size();
  s.seed = seed;
  s.scaling_exponent = scaling_exponent;

  const double scale = scaling_exponent == 1.0
                           ? static_cast<double>(n)
                           : std::pow(static_cast<double>(n), scaling_exponent);
  std::array<CompensatedSum, 8> acc;
  double radius = 0.0;
  for (auto v : sums) {
    const double x = v / scale;
    double power = 1.0;
    for (auto& a : acc) {
      power *= x;
      a.add(power);
    }
    radius = std::max(radius, std::fabs(x));
  }
  const double m = static_cast<double>(sums.size());
  for (std::size_t k = 0; k < acc.size(); ++k) s.moments[k] = acc[k].value() / m;

  if (scaling_exponent == 1.0 || radius == 0.0) radius = 1.0;
  s.histogram.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    s.histogram.edges[b] = -radius + 2.0 * radius * static_cast<double>(b) /
                                         static_cast<double>(bins);
  }
  s.histogram.counts.assign(bins, 0);
  for (auto v : sums) {
    const double x = v / scale;
    auto b = static_cast<std::ptrdiff_t>(std::floor((x + radius) / (2.0 * radius) *
                                                    static_cast<double>(bins)));
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++s.histogram.counts[static_cast<std::size_t>(b)];
  }
  const std::size_t keep = std::min(retain, sums.size());
  s.retained_sample.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) s.retained_sample.push_back(sums[i] / scale);
  return s;
}

SimulationSummary simulate_paths(const Schedule& schedule, std::size_t n,
                                 std::size_t paths, std::uint64_t seed,
                                 const SimulationOptions& options) {
  const double exponent =
      options.scaling_exponent.value_or(default_scaling_exponent(schedule));
  if (!(exponent > 0.0 && exponent <= 1.0)) {
    throw DomainError("scaling exponent must lie in (0, 1]");
  }
  const auto sums = simulate_sums(schedule, n, paths, seed, options.threads);
  return summarize_sums(schedule, n, seed, sums, exponent, options.bins,
                        options.retain);
}

LimitLaw auto_target(const Schedule& schedule) {
  const Regime regime = classify_analytic(schedule);
  switch (regime.tag) {
    case RegimeTag::kSupercritical: return DegeneratePair{};
    case RegimeTag::kCritical: return SymmetricBeta{regime.a};
    case RegimeTag::kSubcriticalPower:
      return Gaussian{subcritical_sigma2(regime.a, regime.gamma),
                      (1.0 + regime.gamma) / 2.0};
    case RegimeTag::kConstantClt:
      return Gaussian{constant_regime_sigma2(regime.c), 0.5};
    case RegimeTag::kUnknown: break;
  }
  throw PreconditionError(
      "no analytic limit for schedule '" + schedule.describe() +
      "'; pass an explicit target");
}

bool verdict(const VerificationReport& report) {
  if (!(report.ks <= report.ks_threshold)) return false;
  for (const auto& m : report.moments) {
    if (!(std::fabs(m.z) <= report.z_threshold)) return false;
  }
  return true;
}

VerificationReport verify(const Schedule& schedule, std::size_t n,
                          std::size_t paths, std::uint64_t seed,
                          const std::optional<LimitLaw>& target,
                          const VerifyOptions& options) {
  const LimitLaw law = target ? *target : auto_target(schedule);
  const double exponent = scaling_exponent(law);
  const auto sums = simulate_sums(schedule, n, paths, seed, options.threads);

  VerificationReport report;
  report.target = describe(law);
  report.ks_threshold = options.ks_threshold;
  report.z_threshold = options.z_threshold;
  report.summary =
      summarize_sums(schedule, n, seed, sums, exponent, options.bins, 0);

  const double scale = exponent == 1.0
                           ? static_cast<double>(n)
                           : std::pow(static_cast<double>(n), exponent);
  std::vector<double> sample(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) sample[i] = sums[i] / scale;
  std::sort(sample.begin(), sample.end());

  report.ks = ks_statistic(
      sample, [&law](double x) { return limit_cdf(law, x); },
      [&law](double x) { return limit_cdf_left(law, x); });
  report.p_value = ks_p_value(report.ks, sample.size());

  const double m = static_cast<double>(sample.size());
  for (unsigned order : options.moment_orders) {
    CompensatedSum first;
    CompensatedSum second;
    for (double x : sample) {
      const double p = integer_power(x, order);
      first.add(p);
      second.add(p * p);
    }
    MomentCheck check;
    check.order = order;
    check.sample = first.value() / m;
    check.target = limit_moment(law, order);
    const double var =
        std::max(0.0, second.value() / m - check.sample * check.sample);
    check.standard_error = std::sqrt(var / m);
    const double diff = check.sample - check.target;
    if (check.standard_error > 0.0) {
      check.z = diff / check.standard_error;
    } else {
      check.z = std::fabs(diff) < 1e-12 ? 0.0 : std::copysign(INFINITY, diff);
    }
    report.moments.push_back(check);
  }
  report.pass = verdict(report);
  return report;
}

}  // namespace cointurn
