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

#ifndef COINTURN_SCHEDULE_HPP_
#define COINTURN_SCHEDULE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cointurn {

enum class ScheduleKind { kConstant, kPowerLaw, kSummable, kTable };

// What a table schedule does past its last explicit entry.
enum class TailRule { kRepeatLast, kZero };

// A deterministic turning-probability sequence p_n. The first flip is always
// fair (p_1 = 1/2); every other probability is the formula value clamped into
// [0, 1].
//
//   Constant   p_n = c                 c in (0, 1]
//   PowerLaw   p_n = a / n^gamma       a > 0, gamma in (0, 1]
//   Summable   p_n = a / n^beta        a > 0, beta > 1
//   Table      p_2, p_3, ... listed explicitly, then the tail rule
//
// Schedules are immutable values; concurrent reads are safe.
class Schedule {
 public:
  static Schedule constant(double c);
  static Schedule power_law(double a, double gamma);
  // p_n = a / n, the critical family.
  static Schedule critical(double a) { return power_law(a, 1.0); }
  static Schedule summable(double a, double beta);
  // `probabilities[0]` is p_2. Entries must lie in [0, 1].
  static Schedule table(std::vector<double> probabilities,
                        TailRule tail = TailRule::kRepeatLast,
                        std::string source = {});

  ScheduleKind kind() const { return kind_; }

  // Constant: c. PowerLaw / Summable: a.
  double scale() const { return scale_; }
  // PowerLaw: gamma. Summable: beta. Otherwise 0.
  double exponent() const { return exponent_; }
  const std::vector<double>& table_entries() const { return table_; }
  TailRule tail_rule() const { return tail_; }

  // p_n for n >= 1. Total on valid schedules; n = 0 is treated as n = 1.
  double turn_probability(std::size_t n) const;

  // Canonical text form accepted by parse_schedule (table schedules render
  // their source path, or an inline summary when built in memory).
  std::string describe() const;

 private:
  Schedule(ScheduleKind kind, double scale, double exponent)
      : kind_(kind), scale_(scale), exponent_(exponent) {}

  ScheduleKind kind_;
  double scale_ = 0.0;
  double exponent_ = 0.0;
  std::vector<double> table_;
  TailRule tail_ = TailRule::kRepeatLast;
  std::string source_;
};

inline double turn_probability(const Schedule& schedule, std::size_t n) {
  return schedule.turn_probability(n);
}

// p_1 .. p_n packed as out[k - 1]; handy for the O(N) passes.
std::vector<double> turn_probabilities(const Schedule& schedule, std::size_t n);

// Step factors t_k = 1 - 2 p_k for k = 2..n, packed as out[k - 2].
std::vector<double> correlation_factors(const Schedule& schedule, std::size_t n);

// e_{i,j} = prod_{k=i+1}^{j} (1 - 2 p_k) by direct multiplication.
// Requires 1 <= i <= j; returns exactly 0 when some factor vanishes.
double pair_correlation(const Schedule& schedule, std::size_t i, std::size_t j);

struct CorrelationBounds {
  double lower;
  double upper;
};

// First k in (i, j] with p_k > 1/2, if any.
std::optional<std::size_t> first_turn_above_half(const Schedule& schedule,
                                                 std::size_t i, std::size_t j);

// exp(-2 sum p_k) prod (1 - r_k) <= e_{i,j} <= exp(-2 sum p_k) with
// r_k = 2 p_k^2 exp(2 p_k), over k in (i, j]. Factors with r_k >= 1 are
// floored at zero so the lower side stays a valid bound when some p_k is
// close to 1/2. Throws PreconditionError naming the first k with p_k > 1/2.
CorrelationBounds correlation_bounds(const Schedule& schedule, std::size_t i,
                                     std::size_t j);

// Prefix representation of e_{i,j} for all 1 <= i <= j <= horizon that keeps
// long-range correlations from underflowing: running sums of log|1 - 2 p_k|,
// sign parities and counts of zero factors.
class CorrelationAccumulator {
 public:
  CorrelationAccumulator(const Schedule& schedule, std::size_t horizon);

  std::size_t horizon() const { return horizon_; }
  double correlation(std::size_t i, std::size_t j) const;
  // Natural log of |e_{i,j}|; -infinity when the range holds a zero factor.
  double log_magnitude(std::size_t i, std::size_t j) const;
  std::size_t zero_count(std::size_t i, std::size_t j) const;
  int sign(std::size_t i, std::size_t j) const;

 private:
  std::size_t horizon_;
  // Index k holds the prefix over factors 2..k (index 0 and 1 are empty).
  std::vector<long double> log_prefix_;
  std::vector<signed char> parity_prefix_;
  std::vector<std::size_t> zero_prefix_;
};

// Grammar:
//   const:p=<x> | power:a=<x>,gamma=<y> | critical:a=<x>
//   | summable:a=<x>,beta=<y> | table:<path>[,tail=last|zero]
// Throws ParseError (with character position) on malformed text and
// DomainError on out-of-range parameters.
Schedule parse_schedule(std::string_view text);

// Table file: one probability per line for p_2, p_3, ...; '#' starts a
// comment, blank lines are ignored.
Schedule load_table_schedule(const std::string& path,
                             TailRule tail = TailRule::kRepeatLast);
std::vector<double> parse_table_text(std::string_view text);

}  // namespace cointurn

#endif  // COINTURN_SCHEDULE_HPP_
