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

#include "cointurn/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "cointurn/errors.hpp"

namespace cointurn {
namespace {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double clamp_probability(double p) {
  if (!(p > 0.0)) return 0.0;  // also maps NaN to 0
  return std::min(p, 1.0);
}

}  // namespace

Schedule Schedule::constant(double c) {
  if (!(c > 0.0 && c <= 1.0)) {
    throw DomainError("constant schedule needs p in (0, 1], got " +
                      format_number(c));
  }
  return Schedule(ScheduleKind::kConstant, c, 0.0);
}

Schedule Schedule::power_law(double a, double gamma) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("power schedule needs a > 0, got " + format_number(a));
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw DomainError("power schedule needs gamma in (0, 1], got " +
                      format_number(gamma));
  }
  return Schedule(ScheduleKind::kPowerLaw, a, gamma);
}

Schedule Schedule::summable(double a, double beta) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("summable schedule needs a > 0, got " + format_number(a));
  }
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw DomainError("summable schedule needs beta > 1, got " +
                      format_number(beta));
  }
  return Schedule(ScheduleKind::kSummable, a, beta);
}

Schedule Schedule::table(std::vector<double> probabilities, TailRule tail,
                         std::string source) {
  if (probabilities.empty()) {
    throw DomainError("table schedule needs at least one entry");
  }
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    const double p = probabilities[k];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("table entry for p_" + std::to_string(k + 2) +
                        " outside [0, 1]: " + format_number(p));
    }
  }
  Schedule s(ScheduleKind::kTable, 0.0, 0.0);
  s.table_ = std::move(probabilities);
  s.tail_ = tail;
  s.source_ = std::move(source);
  return s;
}

double Schedule::turn_probability(std::size_t n) const {
  if (n <= 1) return 0.5;
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case ScheduleKind::kConstant:
      return scale_;
    case ScheduleKind::kPowerLaw:
    case ScheduleKind::kSummable:
      if (exponent_ == 1.0) return clamp_probability(scale_ / nd);
      return clamp_probability(scale_ / std::pow(nd, exponent_));
    case ScheduleKind::kTable: {
      const std::size_t k = n - 2;
      if (k < table_.size()) return table_[k];
      return tail_ == TailRule::kZero ? 0.0 : table_.back();
    }
  }
  return 0.0;
}

std::string Schedule::describe() const {
  switch (kind_) {
    case ScheduleKind::kConstant:
      return "const:p=" + format_number(scale_);
    case ScheduleKind::kPowerLaw:
      if (exponent_ == 1.0) return "critical:a=" + format_number(scale_);
      return "power:a=" + format_number(scale_) +
             ",gamma=" + format_number(exponent_);
    case ScheduleKind::kSummable:
      return "summable:a=" + format_number(scale_) +
             ",beta=" + format_number(exponent_);
    case ScheduleKind::kTable: {
      const std::string tail =
          tail_ == TailRule::kZero ? ",tail=zero" : ",tail=last";
      if (!source_.empty()) return "table:" + source_ + tail;
      return "table:<" + std::to_string(table_.size()) + " entries>" + tail;
    }
  }
  return {};
}

std::vector<double> turn_probabilities(const Schedule& schedule,
                                       std::size_t n) {
  std::vector<double> p(n);
  for (std::size_t k = 1; k <= n; ++k) p[k - 1] = schedule.turn_probability(k);
  return p;
}

std::vector<double> correlation_factors(const Schedule& schedule,
                                        std::size_t n) {
  std::vector<double> t;
  if (n < 2) return t;
  t.reserve(n - 1);
  for (std::size_t k = 2; k <= n; ++k) {
    t.push_back(1.0 - 2.0 * schedule.turn_probability(k));
  }
  return t;
}

double pair_correlation(const Schedule& schedule, std::size_t i,
                        std::size_t j) {
  if (i < 1 || i > j) {
    throw PreconditionError("pair_correlation requires 1 <= i <= j", i);
  }
  double e = 1.0;
  for (std::size_t k = i + 1; k <= j; ++k) {
    const double factor = 1.0 - 2.0 * schedule.turn_probability(k);
    if (factor == 0.0) return 0.0;
    e *= factor;
  }
  return e;
}

std::optional<std::size_t> first_turn_above_half(const Schedule& schedule,
                                                 std::size_t i,
                                                 std::size_t j) {
  for (std::size_t k = i + 1; k <= j; ++k) {
    if (schedule.turn_probability(k) > 0.5) return k;
  }
  return std::nullopt;
}

CorrelationBounds correlation_bounds(const Schedule& schedule, std::size_t i,
                                     std::size_t j) {
  if (i < 1 || i > j) {
    throw PreconditionError("correlation_bounds requires 1 <= i <= j", i);
  }
  if (auto k = first_turn_above_half(schedule, i, j)) {
    throw PreconditionError(
        "correlation_bounds requires p_k <= 1/2, violated at k=" +
            std::to_string(*k),
        *k);
  }
  double sum_p = 0.0;
  double remainder_product = 1.0;
  for (std::size_t k = i + 1; k <= j; ++k) {
    const double p = schedule.turn_probability(k);
    sum_p += p;
    const double r = 2.0 * p * p * std::exp(2.0 * p);
    remainder_product *= std::max(0.0, 1.0 - r);
  }
  const double upper = std::exp(-2.0 * sum_p);
  return {upper * remainder_product, upper};
}

CorrelationAccumulator::CorrelationAccumulator(const Schedule& schedule,
                                               std::size_t horizon)
    : horizon_(horizon),
      log_prefix_(horizon + 1, 0.0L),
      parity_prefix_(horizon + 1, 1),
      zero_prefix_(horizon + 1, 0) {
  for (std::size_t k = 2; k <= horizon; ++k) {
    const double factor = 1.0 - 2.0 * schedule.turn_probability(k);
    log_prefix_[k] = log_prefix_[k - 1];
    parity_prefix_[k] = parity_prefix_[k - 1];
    zero_prefix_[k] = zero_prefix_[k - 1];
    if (factor == 0.0) {
      ++zero_prefix_[k];
    } else {
      log_prefix_[k] += std::log(std::fabs(static_cast<long double>(factor)));
      if (factor < 0.0) parity_prefix_[k] = static_cast<signed char>(-parity_prefix_[k]);
    }
  }
}

std::size_t CorrelationAccumulator::zero_count(std::size_t i,
                                               std::size_t j) const {
  if (i < 1 || i > j || j > horizon_) {
    throw PreconditionError("correlation range outside 1 <= i <= j <= horizon",
                            i);
  }
  return zero_prefix_[j] - zero_prefix_[i];
}

int CorrelationAccumulator::sign(std::size_t i, std::size_t j) const {
  if (zero_count(i, j) > 0) return 0;
  return parity_prefix_[i] * parity_prefix_[j];
}

double CorrelationAccumulator::log_magnitude(std::size_t i,
                                             std::size_t j) const {
  if (zero_count(i, j) > 0) return -INFINITY;
  return static_cast<double>(log_prefix_[j] - log_prefix_[i]);
}

double CorrelationAccumulator::correlation(std::size_t i, std::size_t j) const {
  const int s = sign(i, j);
  if (s == 0) return 0.0;
  return s * static_cast<double>(std::exp(log_prefix_[j] - log_prefix_[i]));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= text_.size(); }
  std::string_view rest() const { return text_.substr(pos_); }

  void expect(char c) {
    if (done() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "' at position " +
                           std::to_string(pos_),
                       pos_);
    }
    ++pos_;
  }

  std::string_view word() {
    const std::size_t start = pos_;
    while (!done() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                       text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) {
      throw ParseError("expected a name at position " + std::to_string(pos_),
                       pos_);
    }
    return text_.substr(start, pos_ - start);
  }

  double number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr == first) {
      throw ParseError("expected a number at position " + std::to_string(pos_),
                       pos_);
    }
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Parses `k1=<x>,k2=<y>` in the given key order.
std::vector<double> parse_params(Cursor& cur,
                                 std::initializer_list<std::string_view> keys) {
  std::vector<double> values;
  bool first = true;
  for (auto key : keys) {
    if (!first) cur.expect(',');
    first = false;
    const std::size_t at = cur.pos();
    const auto name = cur.word();
    if (name != key) {
      throw ParseError("expected parameter '" + std::string(key) +
                           "' at position " + std::to_string(at),
                       at);
    }
    cur.expect('=');
    values.push_back(cur.number());
  }
  if (!cur.done()) {
    throw ParseError("unexpected trailing text at position " +
                         std::to_string(cur.pos()),
                     cur.pos());
  }
  return values;
}

}  // namespace

std::vector<double> parse_table_text(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    ++line_no;
    const std::size_t line_start = offset;
    offset = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    std::size_t e = line.size();
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (b == e) continue;
    const std::string_view token = line.substr(b, e - b);
    double value = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw ParseError("table line " + std::to_string(line_no) +
                           ": not a probability: '" + std::string(token) + "'",
                       line_start + b, line_no);
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("table line " + std::to_string(line_no) +
                        ": probability outside [0, 1]");
    }
    values.push_back(value);
  }
  return values;
}

Schedule load_table_schedule(const std::string& path, TailRule tail) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file '" + path + "'", 0);
  std::stringstream buf;
  buf << in.rdbuf();
  auto values = parse_table_text(buf.str());
  if (values.empty()) {
    throw ParseError("table file '" + path + "' has no entries", 0);
  }
  return Schedule::table(std::move(values), tail, path);
}

Schedule parse_schedule(std::string_view text) {
  Cursor cur(text);
  const auto kind = cur.word();
  cur.expect(':');
  if (kind == "const") {
    const auto v = parse_params(cur, {"p"});
    return Schedule::constant(v[0]);
  }
  if (kind == "power") {
    const auto v = parse_params(cur, {"a", "gamma"});
    return Schedule::power_law(v[0], v[1]);
  }
  if (kind == "critical") {
    const auto v = parse_params(cur, {"a"});
    return Schedule::critical(v[0]);
  }
  if (kind == "summable") {
    const auto v = parse_params(cur, {"a", "beta"});
    return Schedule::summable(v[0], v[1]);
  }
  if (kind == "table") {
    std::string_view path = cur.rest();
    TailRule tail = TailRule::kRepeatLast;
    if (path.ends_with(",tail=zero")) {
      tail = TailRule::kZero;
      path.remove_suffix(10);
    } else if (path.ends_with(",tail=last")) {
      path.remove_suffix(10);
    }
    if (path.empty()) {
      throw ParseError("table schedule needs a file path", cur.pos());
    }
    return load_table_schedule(std::string(path), tail);
  }
  throw ParseError("unknown schedule kind '" + std::string(kind) + "'", 0);
}

}  // namespace cointurn
