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

#include "cointurn/special_functions.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "cointurn/errors.hpp"

namespace cointurn {
namespace {

TEST(LogGamma, AgainstBoostOnZeroToFifty) {
  for (double x = 1e-3; x <= 50.0; x += 0.0137) {
    const double expected = boost::math::lgamma(x);
    EXPECT_NEAR(log_gamma(x), expected, 1e-13 * std::max(1.0, std::fabs(expected))) << x;
  }
}

TEST(LogGamma, Integers) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-15);
  double logfact = 0.0;
  for (int n = 1; n < 30; ++n) {
    logfact += std::log(double(n));
    EXPECT_NEAR(log_gamma(n + 1.0), logfact, 1e-13 * (1 + logfact));
  }
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.0), DomainError);
}

TEST(BesselI, ClosedForms) {
  EXPECT_EQ(bessel_i(0.0, 0.0), 1.0);
  EXPECT_EQ(bessel_i(1.0, 0.0), 0.0);
  EXPECT_NEAR(bessel_i(0.5, 1.0), std::sqrt(2 / std::numbers::pi) * std::sinh(1.0), 1e-15);
  EXPECT_NEAR(bessel_i(0.5, 1.0), 0.9376748, 1e-7);
  EXPECT_NEAR(bessel_i(-0.5, 2.0), std::sqrt(2 / (std::numbers::pi * 2.0)) * std::cosh(2.0),
              1e-14);
  EXPECT_NEAR(bessel_i(0.0, 1.0), 1.2660658, 1e-7);
}

TEST(BesselI, AgainstBoostUpToFifty) {
  for (double alpha : {-0.5, 0.0, 0.25, 0.5, 1.0, 1.7, 2.2, 5.0}) {
    for (double x = 0.01; x <= 50.0; x *= 1.13) {
      const double expected = boost::math::cyl_bessel_i(alpha, x);
      EXPECT_NEAR(bessel_i(alpha, x), expected, 1e-12 * expected) << alpha << ' ' << x;
      EXPECT_NEAR(log_bessel_i(alpha, x), std::log(expected), 1e-12 * std::max(1.0, std::log(expected)));
    }
  }
}

TEST(BesselI, LogFormSurvivesOverflow) {
  // I_0(x) ~ e^x / sqrt(2 pi x) (1 + 1/(8x) + 9/(128x^2) + 225/(3072x^3)).
  const double x = 1000.0;
  const double tail = 1.0 / (8 * x) + 9.0 / (128 * x * x) + 225.0 / (3072 * x * x * x);
  EXPECT_NEAR(log_bessel_i(0.0, x), x - 0.5 * std::log(2 * std::numbers::pi * x) + std::log1p(tail),
              1e-10);
}

TEST(BesselI, Domain) {
  EXPECT_THROW(bessel_i(-0.75, 1.0), DomainError);
  EXPECT_THROW(bessel_i(0.0, -1.0), DomainError);
}

TEST(Integrate, KnownIntegrals) {
  const auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
  EXPECT_LE(r.error, 1e-12);
  const auto s = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(s.value, 2.0 / 3.0, 1e-11);
  const auto p = integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0,
                           10 * std::numbers::pi);
  EXPECT_NEAR(p.value, 5 * std::numbers::pi, 1e-12);
  EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
  EXPECT_NEAR(integrate([](double) { return 1.0; }, 3.0, 1.0).value, -2.0, 1e-15);
}

}  // namespace
}  // namespace cointurn
