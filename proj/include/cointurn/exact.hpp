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

#ifndef COINTURN_EXACT_HPP_
#define COINTURN_EXACT_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cointurn/schedule.hpp"

namespace cointurn {

// Largest horizon exact_law accepts. The DP is O(N^2) time, O(N) memory.
inline constexpr std::size_t kExactLawMaxHorizon = 50000;
inline constexpr std::size_t kBruteForceMaxHorizon = 20;

// Law of S_N = Y_1 + ... + Y_N. mass[k] is P(S_N = 2k - N), k = 0..N.
struct ExactLaw {
  std::size_t n = 0;
  std::vector<double> mass;

  std::int64_t value(std::size_t k) const {
    return 2 * static_cast<std::int64_t>(k) - static_cast<std::int64_t>(n);
  }
  std::vector<std::int64_t> support() const;
  // Mass at sum s; zero off the support lattice.
  double mass_at(std::int64_t s) const;
};

// Sequential Bernoulli convolution state that also yields the law of the total
// number of turns. mass[k] = P(W_2 + ... + W_n = k), k = 0..n-1.
struct TurnCountLaw {
  std::size_t n = 0;
  std::vector<double> mass;
};

// Forward DP over (current sign, running sum).
ExactLaw exact_law(const Schedule& schedule, std::size_t n);

// Enumerates all 2^n outcomes of (Y_1, W_2, ..., W_n). Test oracle; n <= 20.
ExactLaw brute_force_law(const Schedule& schedule, std::size_t n);

// sum_s s^k P(S_N = s), compensated summation.
double exact_moment(const ExactLaw& law, unsigned k);

// Streaming sums over ordered index tuples grouped into consecutive pairs.
//
// After indices 1..j have been fed, closed(m) is
//   sum_{i_1 < ... < i_{2m} <= j} prod_l w(i_{2l-1}, i_{2l}),
// with w(i, j) = t_{i+1} ... t_j. open(m) carries the same sum with one extra
// trailing index i_{2m+1} whose pair is still open, weighted by
// w(i_{2m+1}, j).
class PairSumState {
 public:
  explicit PairSumState(unsigned max_pairs);

  // Feeds the next index j with step factor t_j (ignored for the first).
  void advance(double step_factor);

  unsigned max_pairs() const { return static_cast<unsigned>(closed_.size() - 1); }
  std::size_t index() const { return index_; }
  double closed(unsigned m) const { return closed_.at(m); }
  double open(unsigned m) const { return open_.at(m); }

 private:
  std::vector<double> closed_;
  std::vector<double> open_;
  std::size_t index_ = 0;
};

// M_K(N) for step factors t_2..t_N (N = factors.size() + 1). K even, K >= 2.
// Zero when N < K.
double pair_product_sum(std::span<const double> step_factors, unsigned k);

// M_K(j) for every j = 1..N, packed as out[j - 1].
std::vector<double> pair_product_sum_series(std::span<const double> step_factors,
                                            unsigned k);

// E(N, K) = N^{-K} M_K(N) with t_k = 1 - 2 p_k.
double e_moment_sum(const Schedule& schedule, std::size_t n, unsigned k);

// E(j, K) for every j = 1..n, packed as out[j - 1].
std::vector<double> e_moment_series(const Schedule& schedule, std::size_t n,
                                    unsigned k);

// Var(S_N) = N + 2 N^2 E(N, 2).
double variance_of_sum(const Schedule& schedule, std::size_t n);

TurnCountLaw turn_count_pmf(const Schedule& schedule, std::size_t n);

// prod_{j=2}^{n} (1 - p_j + p_j e^{it}).
std::complex<double> turn_count_cf(const Schedule& schedule, std::size_t n,
                                   double t);

struct AppendixSum {
  double q = 0.0;           // Q(n0, N)
  double normalizer = 0.0;  // N^{K(1+gamma)/2} / (c^m (1-gamma^2)^m m!)
  double ratio = 0.0;       // q / normalizer
};

// Q(n0, N) = sum_{n0 <= i_1 < ... < i_K <= N}
//            exp(c [i_1^{1-g} - i_2^{1-g} + ... - i_K^{1-g}])
// evaluated with the pair-sum DP on telescoping step factors.
AppendixSum appendix_sum(double c, double gamma, unsigned k, std::size_t n,
                         std::size_t n0 = 1);
double appendix_q_ratio(double c, double gamma, unsigned k, std::size_t n,
                        std::size_t n0 = 1);

}  // namespace cointurn

#endif  // COINTURN_EXACT_HPP_
