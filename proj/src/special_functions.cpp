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

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "cointurn/errors.hpp"

namespace cointurn {

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma needs x > 0");
  if (x < 0.5) {
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  static constexpr std::array<double, 9> kCoefficients = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double z = x - 1.0;
  double series = kCoefficients[0];
  for (std::size_t i = 1; i < kCoefficients.size(); ++i) {
    series += kCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

double log_bessel_i(double alpha, double x) {
  if (!(alpha >= -0.5)) throw DomainError("bessel_i needs alpha >= -1/2");
  if (!(x >= 0.0)) throw DomainError("bessel_i needs x >= 0");
  if (x == 0.0) {
    if (alpha == 0.0) return 0.0;
    return alpha > 0.0 ? -INFINITY : INFINITY;
  }
  const double log_half = std::log(0.5 * x);
  // Running sum kept as scale * exp(log_scale).
  double log_term = alpha * log_half - log_gamma(alpha + 1.0);
  double log_scale = log_term;
  double scaled_sum = 1.0;
  for (int m = 0; m < 100000; ++m) {
    const double md = m;
    log_term += 2.0 * log_half - std::log(md + 1.0) - std::log(md + alpha + 1.0);
    if (log_term > log_scale) {
      scaled_sum = scaled_sum * std::exp(log_scale - log_term) + 1.0;
      log_scale = log_term;
      continue;
    }
    const double rel = std::exp(log_term - log_scale);
    scaled_sum += rel;
    // Past the peak the terms only shrink.
    const bool decreasing = (0.5 * x) * (0.5 * x) < (md + 2.0) * (md + alpha + 2.0);
    if (decreasing && rel < 1e-17 * scaled_sum) break;
  }
  return log_scale + std::log(scaled_sum);
}

double bessel_i(double alpha, double x) {
  return std::exp(log_bessel_i(alpha, x));
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           std::size_t max_intervals) {
  QuadratureResult result;
  if (a == b) return result;
  std::priority_queue<Segment> work;
  Segment first = kronrod15(f, a, b);
  double total = first.value;
  double total_error = first.error;
  work.push(first);
  while (total_error > std::max(abs_tol, rel_tol * std::fabs(total)) &&
         work.size() < max_intervals) {
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      work.push(worst);
      break;
    }
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
  }
  // Re-add from scratch: the running total drifts after many updates.
  result.intervals = work.size();
  double value = 0.0;
  double error = 0.0;
  while (!work.empty()) {
    value += work.top().value;
    error += work.top().error;
    work.pop();
  }
  result.value = value;
  result.error = error;
  return result;
}

}  // namespace cointurn
