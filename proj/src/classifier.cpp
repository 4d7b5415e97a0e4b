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

#include "cointurn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cointurn/errors.hpp"
#include "cointurn/exact.hpp"

namespace cointurn {
namespace {

void require_ascending(std::span<const std::size_t> horizons, std::size_t count) {
  if (horizons.size() < count) {
    throw PreconditionError("need at least " + std::to_string(count) +
                            " horizons, got " + std::to_string(horizons.size()));
  }
  if (horizons.front() < 1) throw PreconditionError("horizons must be >= 1");
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) {
      throw PreconditionError("horizons must be strictly ascending", i);
    }
  }
}

Evidence ratio_verdict(double ratio, const ClassifierThresholds& th) {
  if (ratio < th.block_ratio) return Evidence::kHolds;
  if (ratio >= th.divergence_ratio) return Evidence::kFails;
  return Evidence::kInconclusive;
}

// terms[n - 1] is the n-th term of the series.
SeriesEvidence series_evidence(const std::vector<double>& terms,
                               std::span<const std::size_t> horizons,
                               const ClassifierThresholds& th) {
  SeriesEvidence out;
  double running = 0.0;
  std::size_t next = 0;
  for (std::size_t n = 1; n <= terms.size() && next < horizons.size(); ++n) {
    running += terms[n - 1];
    while (next < horizons.size() && horizons[next] == n) {
      out.partial_sums.push_back(running);
      ++next;
    }
  }
  for (std::size_t start = 1; 2 * start - 1 <= terms.size(); start *= 2) {
    double block = 0.0;
    for (std::size_t n = start; n < 2 * start; ++n) block += terms[n - 1];
    out.block_starts.push_back(start);
    out.block_sums.push_back(std::fabs(block));
  }
  const std::size_t blocks = out.block_sums.size();
  if (blocks < 2) return out;
  const double last = out.block_sums[blocks - 1];
  const double prev = out.block_sums[blocks - 2];
  if (last == 0.0) {
    out.last_ratio = 0.0;
    out.converges = Evidence::kHolds;
  } else if (prev == 0.0) {
    out.last_ratio = INFINITY;
    out.converges = Evidence::kFails;
  } else {
    out.last_ratio = last / prev;
    out.converges = ratio_verdict(out.last_ratio, th);
  }
  return out;
}

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

std::vector<double> sample_at(const std::vector<double>& series,
                              std::span<const std::size_t> horizons) {
  std::vector<double> out;
  out.reserve(horizons.size());
  for (auto n : horizons) out.push_back(series[n - 1]);
  return out;
}

double two_point_limit(std::size_t n1, double v1, std::size_t n2, double v2) {
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return (b * v2 - a * v1) / (b - a);
}

}  // namespace

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::kSupercritical: return "supercritical";
    case RegimeTag::kCritical: return "critical";
    case RegimeTag::kSubcriticalPower: return "subcritical_power";
    case RegimeTag::kConstantClt: return "constant_clt";
    case RegimeTag::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Evidence evidence) {
  switch (evidence) {
    case Evidence::kHolds: return "holds";
    case Evidence::kFails: return "fails";
    case Evidence::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(CarlemanVerdict verdict) {
  switch (verdict) {
    case CarlemanVerdict::kDiverges: return "diverges";
    case CarlemanVerdict::kConverges: return "converges";
    case CarlemanVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Regime classify_analytic(const Schedule& schedule) {
  Regime r;
  switch (schedule.kind()) {
    case ScheduleKind::kSummable:
      r.tag = RegimeTag::kSupercritical;
      r.a = schedule.scale();
      break;
    case ScheduleKind::kPowerLaw:
      r.a = schedule.scale();
      if (schedule.exponent() == 1.0) {
        r.tag = RegimeTag::kCritical;
      } else {
        r.tag = RegimeTag::kSubcriticalPower;
        r.gamma = schedule.exponent();
      }
      break;
    case ScheduleKind::kConstant:
      r.tag = RegimeTag::kConstantClt;
      r.c = schedule.scale();
      break;
    case ScheduleKind::kTable:
      r.tag = RegimeTag::kUnknown;
      break;
  }
  return r;
}

int regime_clause(const Regime& regime) {
  switch (regime.tag) {
    case RegimeTag::kConstantClt: return 1;
    case RegimeTag::kSubcriticalPower: return 2;
    case RegimeTag::kCritical:
    case RegimeTag::kSupercritical: return 3;
    case RegimeTag::kUnknown: return 0;
  }
  return 0;
}

ExponentFit fit_log_log(std::span<const std::size_t> x, std::span<const double> y) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] == 0.0 || !std::isfinite(y[i])) continue;
    lx.push_back(std::log(static_cast<double>(x[i])));
    ly.push_back(std::log(std::fabs(y[i])));
  }
  ExponentFit fit;
  fit.points = lx.size();
  if (lx.size() < 2) {
    fit.theta = fit.standard_error = fit.lower = fit.upper = NAN;
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.theta = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - my - fit.theta * (lx[i] - mx);
    ssr += r * r;
  }
  fit.standard_error = lx.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  fit.lower = fit.theta - 2.0 * fit.standard_error;
  fit.upper = fit.theta + 2.0 * fit.standard_error;
  return fit;
}

LlnEvidence lln_conditions(const Schedule& schedule,
                           std::span<const std::size_t> horizons, unsigned k,
                           const ClassifierThresholds& th) {
  if (k < 2 || k % 2 != 0) throw DomainError("lln_conditions needs an even K");
  require_ascending(horizons, 2);
  const std::size_t n_max = horizons.back();

  LlnEvidence out;
  out.k = k;
  out.horizons.assign(horizons.begin(), horizons.end());
  const auto e2_series = e_moment_series(schedule, n_max, 2);
  const auto ek_series = k == 2 ? e2_series : e_moment_series(schedule, n_max, k);
  out.e2 = sample_at(e2_series, horizons);
  out.ek = sample_at(ek_series, horizons);

  std::vector<double> c1_terms(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    c1_terms[n - 1] = e2_series[n - 1] / static_cast<double>(n);
  }
  out.c1 = series_evidence(c1_terms, horizons, th);
  out.c2 = series_evidence(ek_series, horizons, th);

  const double tol = th.theta_tolerance;
  const bool e2_zero = all_zero(out.e2);
  const bool ek_zero = all_zero(out.ek);
  out.e2_slope = e2_zero ? -INFINITY : fit_log_log(horizons, out.e2).theta;
  out.ek_slope = ek_zero ? -INFINITY : fit_log_log(horizons, out.ek).theta;

  const bool e2_decays = out.e2_slope <= -tol;
  const bool ek_decays = out.ek_slope <= -tol;
  const bool e2_flat = std::fabs(out.e2_slope) < tol;
  const bool ek_flat = std::fabs(out.ek_slope) < tol;
  if (e2_decays && ek_decays) {
    out.wlln = Evidence::kHolds;
  } else if (e2_flat || ek_flat) {
    out.wlln = Evidence::kFails;
  }

  const std::size_t h = horizons.size();
  out.e2_limit_estimate =
      two_point_limit(horizons[h - 2], out.e2[h - 2], horizons[h - 1], out.e2[h - 1]);
  out.e2_tail_min = INFINITY;
  for (std::size_t n = std::max<std::size_t>(1, n_max / 2); n <= n_max; ++n) {
    out.e2_tail_min = std::min(out.e2_tail_min, e2_series[n - 1]);
  }

  bool non_decreasing = true;
  for (std::size_t i = 1; i < h; ++i) {
    if (out.e2[i] < out.e2[i - 1] * (1.0 - 1e-12)) non_decreasing = false;
  }
  if (e2_flat && non_decreasing && out.e2_limit_estimate > 0.0 &&
      out.e2_tail_min > 0.0) {
    out.no_lln = Evidence::kHolds;
  } else if (e2_decays) {
    out.no_lln = Evidence::kFails;
  }
  return out;
}

CarlemanReport carleman_check(std::span<const double> moments,
                              const ClassifierThresholds& th) {
  CarlemanReport out;
  double running = 0.0;
  for (std::size_t i = 0; i < moments.size(); ++i) {
    const double mu = moments[i];
    if (!(mu > 0.0)) {
      throw DomainError("carleman_check needs positive moments (order " +
                        std::to_string(2 * i + 2) + ")");
    }
    const double term = std::pow(mu, -1.0 / static_cast<double>(2 * i + 2));
    running += term;
    out.terms.push_back(term);
    out.partial_sums.push_back(running);
  }
  if (out.terms.size() < 3) return out;
  const double first = out.terms.front();
  const double smallest = *std::min_element(out.terms.begin(), out.terms.end());
  bool geometric = true;
  for (std::size_t i = 1; i < out.terms.size(); ++i) {
    if (!(out.terms[i] < th.carleman_ratio * out.terms[i - 1])) geometric = false;
  }
  if (geometric) {
    out.verdict = CarlemanVerdict::kConverges;
  } else if (smallest >= th.carleman_floor * first) {
    out.verdict = CarlemanVerdict::kDiverges;
  }
  return out;
}

RegimeReport classify_empirical(const Schedule& schedule,
                                std::span<const std::size_t> horizons,
                                const ClassifierThresholds& th, unsigned k) {
  require_ascending(horizons, 4);
  if (horizons.back() < 1000) {
    throw PreconditionError("largest horizon must be >= 1000");
  }
  RegimeReport report;
  report.thresholds = th;
  report.analytic = classify_analytic(schedule);
  report.horizons.assign(horizons.begin(), horizons.end());
  report.lln = lln_conditions(schedule, horizons, k, th);
  report.e2 = report.lln.e2;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    const double n = static_cast<double>(horizons[i]);
    report.pair_sum.push_back(n * n * report.e2[i]);
  }

  const double tol = th.theta_tolerance;
  if (all_zero(report.pair_sum)) {
    // Uncorrelated signs: E(N, 2) vanishes identically.
    report.fit = fit_log_log(horizons, report.pair_sum);
    report.crucial = Evidence::kHolds;
    report.second_crucial = Evidence::kHolds;
    report.no_lln = Evidence::kFails;
  } else {
    report.fit = fit_log_log(horizons, report.pair_sum);
    const double theta = report.fit.theta;
    if (std::isnan(theta)) {
      report.crucial = report.second_crucial = Evidence::kInconclusive;
    } else {
      report.crucial = theta < 1.0 + tol ? Evidence::kHolds : Evidence::kFails;
      report.second_crucial =
          theta < 2.0 - tol ? Evidence::kHolds : Evidence::kFails;
    }
    report.no_lln = report.lln.no_lln;
  }

  if (report.crucial == Evidence::kHolds) {
    report.empirical_clause = 1;
  } else if (report.crucial == Evidence::kFails &&
             report.second_crucial == Evidence::kHolds) {
    report.empirical_clause = 2;
  } else if (report.second_crucial == Evidence::kFails) {
    report.empirical_clause = 3;
  }
  report.analytic_clause = regime_clause(report.analytic);
  report.consistent = report.analytic_clause == 0 ||
                      report.analytic_clause == report.empirical_clause;

  if (report.no_lln == Evidence::kHolds) {
    const std::size_t h = horizons.size();
    std::vector<double> limits;
    double factorial = 2.0;
    for (unsigned order = 2; order <= 12; order += 2) {
      if (order > 2) factorial *= static_cast<double>(order - 1) * order;
      const double lo = e_moment_sum(schedule, horizons[h - 2], order);
      const double hi = e_moment_sum(schedule, horizons[h - 1], order);
      const double mu = factorial * two_point_limit(horizons[h - 2], lo,
                                                    horizons[h - 1], hi);
      if (!(mu > 0.0)) break;
      report.moment_orders.push_back(order);
      limits.push_back(mu);
    }
    report.moment_limits = limits;
    report.carleman = carleman_check(limits, th);
  }
  return report;
}

}  // namespace cointurn
