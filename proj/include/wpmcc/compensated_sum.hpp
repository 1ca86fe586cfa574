// Copyright 2026 The WPMCC Authors
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

#ifndef WPMCC_COMPENSATED_SUM_HPP_
#define WPMCC_COMPENSATED_SUM_HPP_

#include <cmath>

namespace wpmcc {

// Neumaier's variant of Kahan summation. Accumulating a few million
// positive terms of similar magnitude keeps ~1 ulp of accuracy.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;

  constexpr void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  constexpr CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  constexpr double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace wpmcc

#endif  // WPMCC_COMPENSATED_SUM_HPP_
