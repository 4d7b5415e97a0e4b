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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cointurn/errors.hpp"

namespace cointurn {
namespace {

double uniform_cdf(double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); }

// Textbook formula for distinct values.
double reference_ks(const std::vector<double>& sorted, const Cdf& cdf) {
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (i + 1) / m - f, f - i / m});
  }
  return d;
}

double alternating_series(double lambda) {
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    s += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return s;
}

TEST(KsStatistic, MatchesTextbookOnDistinctValues) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(1 + trial * 7);
    for (auto& v : x) v = u(rng);
    std::sort(x.begin(), x.end());
    EXPECT_NEAR(ks_statistic(x, uniform_cdf), reference_ks(x, uniform_cdf), 1e-15);
  }
}

TEST(KsStatistic, SinglePoint) {
  const std::vector<double> x = {0.0};
  EXPECT_DOUBLE_EQ(ks_statistic(x, uniform_cdf), 0.5);
}

TEST(KsStatistic, TiesAreOneStep) {
  // Four copies of 0: the empirical CDF jumps from 0 to 1 there.
  const std::vector<double> x = {0.0, 0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(ks_statistic(x, uniform_cdf), 0.5);
  const std::vector<double> y = {-0.5, 0.5, 0.5, 0.5};
  // Below 0.5 the ECDF is 1/4 while F rises to 3/4.
  EXPECT_DOUBLE_EQ(ks_statistic(y, uniform_cdf), 0.5);
}

TEST(KsStatistic, AtomicTarget) {
  auto cdf = [](double x) { return x < -1 ? 0.0 : (x < 1 ? 0.5 : 1.0); };
  auto left = [](double x) { return x <= -1 ? 0.0 : (x <= 1 ? 0.5 : 1.0); };
  std::vector<double> x(100, -1.0);
  std::fill(x.begin() + 47, x.end(), 1.0);
  EXPECT_NEAR(ks_statistic(x, cdf, left), 0.03, 1e-15);
  std::vector<double> even(100, -1.0);
  std::fill(even.begin() + 50, even.end(), 1.0);
  EXPECT_EQ(ks_statistic(even, cdf, left), 0.0);
  // Treating the target as continuous compares the ECDF just below +1 (0.47)
  // with F(1) = 1 and overstates the distance.
  EXPECT_NEAR(ks_statistic(x, cdf), 0.53, 1e-15);
}

TEST(KsStatistic, EmptySample) {
  const std::vector<double> none;
  EXPECT_THROW(ks_statistic(none, uniform_cdf), PreconditionError);
}

TEST(Kolmogorov, KnownQuantiles) {
  EXPECT_NEAR(kolmogorov_survival(1.3580986), 0.05, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.6276236), 0.01, 1e-6);
  EXPECT_NEAR(kolmogorov_survival(1.2238478), 0.10, 1e-6);
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_survival(0.2), 1.0, 1e-12);
  EXPECT_LT(kolmogorov_survival(10.0), 1e-80);
}

TEST(Kolmogorov, SeriesAgreeAcrossSwitch) {
  for (double lambda = 0.9; lambda <= 1.5; lambda += 0.01) {
    EXPECT_NEAR(kolmogorov_survival(lambda), alternating_series(lambda), 1e-14) << lambda;
  }
}

TEST(Kolmogorov, MonotoneDecreasing) {
  double prev = 1.0;
  for (double lambda = 0.05; lambda < 4.0; lambda += 0.01) {
    const double s = kolmogorov_survival(lambda);
    EXPECT_LE(s, prev + 1e-15);
    EXPECT_GE(s, 0.0);
    prev = s;
  }
}

TEST(KsPValue, Scaling) {
  const double d = 0.01;
  const std::size_t m = 10000;
  EXPECT_EQ(ks_p_value(d, m), kolmogorov_survival(std::sqrt(double(m)) * d));
  EXPECT_GE(ks_p_value(0.0, m), 0.999);
  EXPECT_LT(ks_p_value(0.05, m), 1e-15);
}

}  // namespace
}  // namespace cointurn
