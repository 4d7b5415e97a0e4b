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

#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "cointurn/errors.hpp"
#include "cointurn/schedule.hpp"

namespace cointurn {
namespace {

std::vector<Schedule> oracle_schedules() {
  return {Schedule::constant(0.5),        Schedule::constant(0.3),
          Schedule::critical(1.0),        Schedule::critical(2.0),
          Schedule::power_law(1.0, 0.5),  Schedule::summable(1.0, 2.0),
          Schedule::constant(0.9),        Schedule::table({0.1, 1.0, 0.0, 0.7})};
}

double naive_e(const Schedule& s, std::size_t i, std::size_t j) {
  double e = 1.0;
  for (std::size_t k = i + 1; k <= j; ++k) e *= 1.0 - 2.0 * s.turn_probability(k);
  return e;
}

// sum over all K-tuples (repetition allowed) of E[Y_{i_1} ... Y_{i_K}]. Indices
// seen an even number of times drop out since Y^2 = 1; the survivors, sorted,
// pair up consecutively.
double multinomial_moment(const Schedule& s, std::size_t n, unsigned k) {
  std::vector<std::size_t> tuple(k, 1);
  double total = 0.0;
  while (true) {
    std::vector<int> parity(n + 1, 0);
    for (auto i : tuple) parity[i] ^= 1;
    std::vector<std::size_t> odd;
    for (std::size_t i = 1; i <= n; ++i) {
      if (parity[i]) odd.push_back(i);
    }
    if (odd.size() % 2 == 0) {
      double term = 1.0;
      for (std::size_t l = 0; l < odd.size(); l += 2) term *= naive_e(s, odd[l], odd[l + 1]);
      total += term;
    }
    std::size_t pos = 0;
    while (pos < k && tuple[pos] == n) tuple[pos++] = 1;
    if (pos == k) break;
    ++tuple[pos];
  }
  return total;
}

// sum over i_1 < ... < i_{2m} <= n of prod w(i_{2l-1}, i_{2l}).
double enumerate_pair_sum(const std::vector<double>& t, std::size_t n, unsigned k) {
  auto w = [&t](std::size_t i, std::size_t j) {
    double p = 1.0;
    for (std::size_t q = i + 1; q <= j; ++q) p *= t[q - 2];
    return p;
  };
  double total = 0.0;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() == k) {
      double term = 1.0;
      for (std::size_t l = 0; l < k; l += 2) term *= w(idx[l], idx[l + 1]);
      total += term;
      return;
    }
    for (std::size_t i = start; i <= n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(1);
  return total;
}

double total_variation(const ExactLaw& a, const ExactLaw& b) {
  double tv = 0.0;
  for (std::size_t k = 0; k < a.mass.size(); ++k) tv += std::fabs(a.mass[k] - b.mass[k]);
  return 0.5 * tv;
}

TEST(ExactLaw, SmallHorizons) {
  const ExactLaw one = exact_law(Schedule::critical(1.0), 1);
  ASSERT_EQ(one.mass.size(), 2u);
  EXPECT_EQ(one.mass[0], 0.5);
  EXPECT_EQ(one.mass[1], 0.5);
  EXPECT_EQ(one.value(0), -1);
  const ExactLaw two = exact_law(Schedule::critical(1.0), 2);
  EXPECT_EQ(two.mass_at(-2), 0.25);
  EXPECT_EQ(two.mass_at(0), 0.5);
  EXPECT_EQ(two.mass_at(2), 0.25);
  EXPECT_EQ(two.mass_at(1), 0.0);
  EXPECT_EQ(two.mass_at(4), 0.0);
  EXPECT_EQ(two.support(), (std::vector<std::int64_t>{-2, 0, 2}));
}

TEST(ExactLaw, CriticalThreeStepVariance) {
  // Paths of (Y_1, W_2, W_3): P(W_2) = 1/2, P(W_3) = 1/3.
  double var = 0.0;
  for (int y1 : {-1, 1}) {
    for (int w2 : {0, 1}) {
      for (int w3 : {0, 1}) {
        const double p = 0.5 * 0.5 * (w3 ? 1.0 / 3 : 2.0 / 3);
        const int y2 = w2 ? -y1 : y1;
        const int y3 = w3 ? -y2 : y2;
        var += p * (y1 + y2 + y3) * (y1 + y2 + y3);
      }
    }
  }
  EXPECT_NEAR(var, 11.0 / 3.0, 1e-15);
  const ExactLaw law = exact_law(Schedule::critical(1.0), 3);
  EXPECT_NEAR(exact_moment(law, 2), var, 1e-14);
  EXPECT_NEAR(variance_of_sum(Schedule::critical(1.0), 3), var, 1e-14);
}

TEST(ExactLaw, MatchesBruteForce) {
  for (const auto& s : oracle_schedules()) {
    for (std::size_t n = 1; n <= 12; ++n) {
      const ExactLaw dp = exact_law(s, n);
      const ExactLaw bf = brute_force_law(s, n);
      EXPECT_LE(total_variation(dp, bf), 1e-12) << s.describe() << " N=" << n;
    }
  }
}

TEST(ExactLaw, NormalizedAndSymmetric) {
  for (const auto& s : oracle_schedules()) {
    for (std::size_t n : {1u, 2u, 7u, 100u, 2001u}) {
      const ExactLaw law = exact_law(s, n);
      double total = 0.0;
      for (double m : law.mass) total += m;
      EXPECT_NEAR(total, 1.0, 1e-12);
      for (std::size_t k = 0; k <= n; ++k) {
        EXPECT_NEAR(law.mass[k], law.mass[n - k], 1e-12);
        EXPECT_GE(law.mass[k], 0.0);
      }
      EXPECT_LE(std::fabs(exact_moment(law, 3)), 1e-10 * std::pow(double(n), 3));
      EXPECT_LE(std::fabs(exact_moment(law, 1)), 1e-10 * n);
    }
  }
}

TEST(ExactLaw, Caps) {
  EXPECT_THROW(brute_force_law(Schedule::constant(0.3), 21), CapacityError);
  EXPECT_NO_THROW(brute_force_law(Schedule::constant(0.3), 20));
  EXPECT_THROW(exact_law(Schedule::constant(0.3), kExactLawMaxHorizon + 1), CapacityError);
  EXPECT_THROW(exact_law(Schedule::constant(0.3), 0), DomainError);
  EXPECT_GE(kExactLawMaxHorizon, 20000u);
}

TEST(ExactMoment, FairIndependentPair) {
  const ExactLaw law = exact_law(Schedule::constant(0.5), 2);
  EXPECT_DOUBLE_EQ(exact_moment(law, 2), 2.0);
  EXPECT_DOUBLE_EQ(exact_moment(law, 4), 8.0);
  EXPECT_EQ(exact_moment(law, 3), 0.0);
  EXPECT_EQ(exact_moment(law, 0), 1.0);
}

TEST(ExactMoment, MultinomialExpansion) {
  for (const auto& s : oracle_schedules()) {
    for (std::size_t n : {3u, 6u, 9u, 12u}) {
      const ExactLaw law = exact_law(s, n);
      for (unsigned k : {2u, 4u}) {
        const double expected = multinomial_moment(s, n, k);
        EXPECT_NEAR(exact_moment(law, k), expected, 1e-10 * std::max(1.0, expected))
            << s.describe() << " N=" << n << " K=" << k;
      }
    }
  }
}

TEST(VarianceOfSum, MatchesLawUpToTwoThousand) {
  for (const auto& s : oracle_schedules()) {
    for (std::size_t n : {1u, 2u, 10u, 333u, 2000u}) {
      const double direct = exact_moment(exact_law(s, n), 2);
      EXPECT_NEAR(variance_of_sum(s, n), direct, 1e-9 * direct) << s.describe() << n;
    }
  }
  EXPECT_EQ(variance_of_sum(Schedule::constant(0.3), 1), 1.0);
  EXPECT_NEAR(variance_of_sum(Schedule::constant(0.3), 2), 2.0 + 2.0 * 0.4, 1e-15);
}

TEST(PairSumState, MatchesEnumeration) {
  const std::vector<std::vector<double>> factor_sets = {
      {0.5, -0.3, 0.9, 0.1, 1.0, 0.7, -0.8, 0.25, 0.6, 0.0, 0.4},
      {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05, 0.01}};
  for (const auto& t : factor_sets) {
    PairSumState state(3);
    for (std::size_t n = 1; n <= 12; ++n) {
      state.advance(n == 1 ? 123.0 : t[n - 2]);
      EXPECT_EQ(state.index(), n);
      EXPECT_EQ(state.closed(0), 1.0);
      for (unsigned m = 1; m <= 3; ++m) {
        EXPECT_NEAR(state.closed(m), enumerate_pair_sum(t, n, 2 * m), 1e-12)
            << "n=" << n << " m=" << m;
      }
    }
  }
}

TEST(PairProductSum, MatchesEnumerationUpToSixIndices) {
  const std::vector<double> t = {0.0, 1.0 / 3, 0.5, 0.6, 2.0 / 3, 5.0 / 7, 0.75, 7.0 / 9,
                                 0.8, 9.0 / 11, 5.0 / 6};
  for (std::size_t n = 1; n <= 12; ++n) {
    const std::span<const double> prefix(t.data(), n - 1);
    for (unsigned k : {2u, 4u, 6u}) {
      EXPECT_NEAR(pair_product_sum(prefix, k), enumerate_pair_sum(t, n, k), 1e-12);
    }
  }
}

TEST(PairProductSum, SmallCases) {
  const auto t = correlation_factors(Schedule::critical(1.0), 3);
  EXPECT_NEAR(pair_product_sum(t, 2), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(pair_product_sum(t, 4), 0.0);
  const std::vector<double> kappa = {0.37};
  EXPECT_DOUBLE_EQ(pair_product_sum(kappa, 2), 0.37);
  EXPECT_THROW(pair_product_sum(t, 3), DomainError);
  EXPECT_THROW(pair_product_sum(t, 0), DomainError);
}

TEST(PairProductSum, SeriesMatchesPointwise) {
  const auto t = correlation_factors(Schedule::power_law(1.0, 0.5), 40);
  const auto series = pair_product_sum_series(t, 4);
  ASSERT_EQ(series.size(), 40u);
  for (std::size_t n = 1; n <= 40; ++n) {
    const std::span<const double> prefix(t.data(), n - 1);
    EXPECT_NEAR(series[n - 1], pair_product_sum(prefix, 4), 1e-12 * (1 + series[n - 1]));
  }
}

TEST(EMomentSum, CriticalSecondOrder) {
  const Schedule s = Schedule::critical(1.0);
  EXPECT_NEAR(e_moment_sum(s, 3, 2), 1.0 / 27.0, 1e-16);
  EXPECT_EQ(e_moment_sum(s, 3, 4), 0.0);
  // Direct double loop: sum_{i<j} (i-1) i / ((j-1) j) = binom(N-1, 2) / 3.
  for (std::size_t n : {5u, 17u, 200u}) {
    double direct = 0.0;
    for (std::size_t j = 2; j <= n; ++j) {
      for (std::size_t i = 1; i < j; ++i) {
        direct += double((i - 1) * i) / double((j - 1) * j);
      }
    }
    const double binom = double(n - 1) * double(n - 2) / 2.0;
    EXPECT_NEAR(direct, binom / 3.0, 1e-9 * direct);
    EXPECT_NEAR(e_moment_sum(s, n, 2) * double(n) * double(n), direct, 1e-10 * direct);
  }
  EXPECT_NEAR(e_moment_sum(s, 10000, 2), 1.0 / 6.0, 1e-4);
}

TEST(EMomentSeries, AgreesWithPointEvaluations) {
  const Schedule s = Schedule::summable(1.0, 2.0);
  const auto series = e_moment_series(s, 64, 2);
  for (std::size_t n : {1u, 2u, 10u, 64u}) {
    EXPECT_NEAR(series[n - 1], e_moment_sum(s, n, 2), 1e-15);
  }
}

TEST(TurnCount, CriticalThreeSteps) {
  const TurnCountLaw law = turn_count_pmf(Schedule::critical(1.0), 3);
  ASSERT_EQ(law.mass.size(), 3u);
  EXPECT_NEAR(law.mass[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(law.mass[1], 1.0 / 2, 1e-15);
  EXPECT_NEAR(law.mass[2], 1.0 / 6, 1e-15);
}

TEST(TurnCount, BinomialForConstant) {
  const double c = 0.3;
  const std::size_t n = 15;
  const TurnCountLaw law = turn_count_pmf(Schedule::constant(c), n);
  for (std::size_t k = 0; k < n; ++k) {
    const double binom = std::exp(std::lgamma(n) - std::lgamma(k + 1.0) - std::lgamma(double(n - k)));
    EXPECT_NEAR(law.mass[k], binom * std::pow(c, k) * std::pow(1 - c, n - 1 - k), 1e-13);
  }
}

TEST(TurnCount, ForcedTurn) {
  const TurnCountLaw law = turn_count_pmf(Schedule::critical(2.0), 2);
  ASSERT_EQ(law.mass.size(), 2u);
  EXPECT_EQ(law.mass[0], 0.0);
  EXPECT_EQ(law.mass[1], 1.0);
  EXPECT_THROW(turn_count_pmf(Schedule::critical(2.0), 1), DomainError);
}

TEST(TurnCount, MatchesEnumeration) {
  for (const auto& s : oracle_schedules()) {
    for (std::size_t n = 2; n <= 12; ++n) {
      std::vector<double> expected(n, 0.0);
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        double p = 1.0;
        for (std::size_t j = 2; j <= n; ++j) {
          const double pj = s.turn_probability(j);
          p *= (mask >> (j - 2)) & 1u ? pj : 1.0 - pj;
        }
        expected[std::popcount(mask)] += p;
      }
      const TurnCountLaw law = turn_count_pmf(s, n);
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(law.mass[k], expected[k], 1e-12);
    }
  }
}

TEST(TurnCount, FourierDuality) {
  for (const auto& s : oracle_schedules()) {
    const std::size_t n = 40;
    const TurnCountLaw law = turn_count_pmf(s, n);
    for (int g = 0; g < 64; ++g) {
      const double t = -std::numbers::pi + 2 * std::numbers::pi * g / 64.0;
      std::complex<double> sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += law.mass[k] * std::polar(1.0, t * double(k));
      const auto cf = turn_count_cf(s, n, t);
      EXPECT_LE(std::abs(cf - sum), 1e-10);
      EXPECT_LE(std::abs(cf), 1.0 + 1e-15);
    }
  }
  EXPECT_NEAR(std::abs(turn_count_cf(Schedule::critical(1.0), 2, std::numbers::pi)), 0.0, 1e-16);
  EXPECT_EQ(turn_count_cf(Schedule::constant(0.2), 9, 0.0), std::complex<double>(1.0, 0.0));
}

TEST(AppendixSum, DirectDoubleLoop) {
  for (double gamma : {0.3, 0.5, 0.7}) {
    const double c = 2.0 / (1.0 - gamma);
    for (std::size_t n0 : {1u, 3u}) {
      const std::size_t n = 60;
      double q = 0.0;
      for (std::size_t j = n0; j <= n; ++j) {
        for (std::size_t i = n0; i < j; ++i) {
          q += std::exp(c * (std::pow(double(i), 1 - gamma) - std::pow(double(j), 1 - gamma)));
        }
      }
      const AppendixSum a = appendix_sum(c, gamma, 2, n, n0);
      EXPECT_NEAR(a.q, q, 1e-10 * q);
      const double norm = std::pow(double(n), 1 + gamma) / (c * (1 - gamma * gamma));
      EXPECT_NEAR(a.normalizer, norm, 1e-12 * norm);
      EXPECT_NEAR(a.ratio, q / norm, 1e-10);
      EXPECT_EQ(appendix_q_ratio(c, gamma, 2, n, n0), a.ratio);
    }
  }
}

TEST(AppendixSum, FourIndicesByEnumeration) {
  const double gamma = 0.5, c = 4.0;
  const std::size_t n = 14;
  std::vector<double> t;
  for (std::size_t i = 2; i <= n; ++i) {
    t.push_back(std::exp(c * (std::pow(i - 1.0, 1 - gamma) - std::pow(double(i), 1 - gamma))));
  }
  const double q = enumerate_pair_sum(t, n, 4);
  EXPECT_NEAR(appendix_sum(c, gamma, 4, n).q, q, 1e-10 * q);
}

TEST(AppendixSum, EdgeCases) {
  EXPECT_EQ(appendix_q_ratio(4.0, 0.5, 4, 3), 0.0);
  EXPECT_EQ(appendix_q_ratio(4.0, 0.5, 2, 1), 0.0);
  EXPECT_THROW(appendix_q_ratio(4.0, 1.0, 2, 10), DomainError);
  EXPECT_THROW(appendix_q_ratio(4.0, 0.0, 2, 10), DomainError);
  EXPECT_THROW(appendix_q_ratio(0.0, 0.5, 2, 10), DomainError);
  EXPECT_THROW(appendix_q_ratio(4.0, 0.5, 3, 10), DomainError);
}

}  // namespace
}  // namespace cointurn
