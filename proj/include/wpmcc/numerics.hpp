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

#ifndef WPMCC_NUMERICS_HPP_
#define WPMCC_NUMERICS_HPP_

#include <functional>
#include <optional>

namespace wpmcc::numerics {

inline constexpr double kE = 2.718281828459045235360287;
inline constexpr double kInvE = 0.367879441171442321595524;

// Bracketing interval plus stopping rule for the scalar root finders.
// A root is accepted once the bracket width drops below
// tol_abs + tol_rel * |midpoint|, or f evaluates to exactly zero.
struct RootBracket {
  double lo = 0.0;
  double hi = 1.0;
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  int max_iter = 200;

  // Throws DomainError when lo >= hi, a tolerance is not positive, or
  // max_iter < 1.
  void validate() const;
};

enum class Monotonicity { kIncreasing, kDecreasing };

using ScalarFunction = std::function<double(double)>;

/// Principal branch W0 of the Lambert W function, the solution of
/// w * exp(w) = x with w >= -1.
///
/// Inputs within 1e-12 below -1/e are clamped to the branch point and
/// return exactly -1. Throws DomainError for x < -1/e - 1e-12 or NaN.
double lambert_w0(double x);

/// W0(q - 1/e) for q >= 0.
///
/// Taking the offset from the branch point as the argument keeps full
/// relative precision in W + 1 when q is tiny, where forming q - 1/e
/// first would cancel. Throws DomainError for q < 0.
double lambert_w0_shifted(double q);

/// W0(-exp(-1 - d)) for d >= 0; lies in [-1, 0).
double lambert_w0_neg_exp(double d);

/// Bisection on a function that is monotone over the bracket.
///
/// For kIncreasing f(lo) <= 0 <= f(hi) is required; for kDecreasing the
/// signs are swapped. Throws BracketError if the endpoints do not
/// straddle zero in the stated direction and ConvergenceError if the
/// stopping rule is not met within max_iter halvings.
double bisect_monotone(const ScalarFunction& f, const RootBracket& bracket,
                       Monotonicity direction);

/// Grows hi = lo + 1, lo + 2, lo + 4, ... until f changes sign relative
/// to f(lo), or hi would pass 1e30. Returns nullopt when no sign change
/// is reachable, which callers treat as infeasibility.
std::optional<RootBracket> expand_upper_bracket(const ScalarFunction& f,
                                                double lo);

}  // namespace wpmcc::numerics

#endif  // WPMCC_NUMERICS_HPP_
