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

#ifndef COINTURN_NUMERIC_HPP_
#define COINTURN_NUMERIC_HPP_

#include <cstdint>

namespace cointurn {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// x^k by repeated squaring; exact for small integer x.
inline double integer_power(double x, unsigned k) {
  double result = 1.0;
  double base = x;
  while (k != 0) {
    if (k & 1u) result *= base;
    base *= base;
    k >>= 1u;
  }
  return result;
}

}  // namespace cointurn

#endif  // COINTURN_NUMERIC_HPP_
