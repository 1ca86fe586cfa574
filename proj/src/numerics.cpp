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

#include "wpmcc/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "wpmcc/errors.hpp"

namespace wpmcc::numerics {
namespace {

constexpr double kBranchSlack = 1e-12;
// Offsets r = 1 + e*x below this use the branch-point series directly.
constexpr double kSeriesCutoff = 1e-3;
// e = kEHigh + kELow to roughly 2x double precision.
constexpr double kEHigh = 2.718281828459045;
constexpr double kELow = 1.4456468917292502e-16;

// Series of W about -1/e in p = sqrt(2 (1 + e x)).
double BranchSeries(double p) {
  static constexpr std::array<double, 10> kCoeffs = {
      -1.0,
      1.0,
      -1.0 / 3.0,
      11.0 / 72.0,
      -43.0 / 540.0,
      769.0 / 17280.0,
      -221.0 / 8505.0,
      680863.0 / 43545600.0,
      -1963.0 / 204120.0,
      226287557.0 / 37623398400.0,
  };
  double result = 0.0;
  for (auto it = kCoeffs.rbegin(); it != kCoeffs.rend(); ++it) {
    result = result * p + *it;
  }
  return result;
}

double InitialGuess(double x, double r) {
  if (r < 0.5) return BranchSeries(std::sqrt(2.0 * r));
  if (x < 3.0) return std::log1p(x);
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

// x is the argument, r = 1 + e*x its (separately computed) offset from
// the branch point.
double W0FromOffset(double x, double r) {
  if (std::isnan(x) || std::isnan(r)) {
    throw DomainError("lambert_w0: NaN argument");
  }
  if (r < 0.0) {
    if (r < -kE * kBranchSlack) {
      throw DomainError("lambert_w0: argument below -1/e: " +
                        std::to_string(x));
    }
    return -1.0;
  }
  if (r <= kE * kBranchSlack) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  if (r < kSeriesCutoff) return BranchSeries(std::sqrt(2.0 * r));

  // Halley iteration on w e^w - x.
  double w = InitialGuess(x, r);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    if (!std::isfinite(step)) break;
    w -= step;
    if (std::abs(step) <= 2.0 * kEps * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace

void RootBracket::validate() const {
  if (!(lo < hi)) throw DomainError("RootBracket: lo must be < hi");
  if (!(tol_abs > 0.0) || !(tol_rel > 0.0)) {
    throw DomainError("RootBracket: tolerances must be positive");
  }
  if (max_iter < 1) throw DomainError("RootBracket: max_iter must be >= 1");
}

double lambert_w0(double x) {
  const double r = std::fma(kEHigh, x, 1.0) + kELow * x;
  return W0FromOffset(x, r);
}

double lambert_w0_shifted(double q) {
  if (!(q >= 0.0)) throw DomainError("lambert_w0_shifted: q must be >= 0");
  return W0FromOffset(q - kInvE, kE * q);
}

double lambert_w0_neg_exp(double d) {
  if (!(d >= 0.0)) throw DomainError("lambert_w0_neg_exp: d must be >= 0");
  return W0FromOffset(-std::exp(-1.0 - d), -std::expm1(-d));
}

double bisect_monotone(const ScalarFunction& f, const RootBracket& bracket,
                       Monotonicity direction) {
  bracket.validate();
  const double sign = direction == Monotonicity::kIncreasing ? 1.0 : -1.0;
  auto g = [&](double x) { return sign * f(x); };

  double lo = bracket.lo;
  double hi = bracket.hi;
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (std::isnan(g_lo) || std::isnan(g_hi) || g_lo > 0.0 || g_hi < 0.0) {
    throw BracketError("bisect_monotone: no sign change over [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;

  for (int iter = 0; iter < bracket.max_iter; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {  // bracket is one ulp wide
      return std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
    }
    const double g_mid = g(mid);
    if (std::isnan(g_mid)) {
      throw ConvergenceError("bisect_monotone: function returned NaN");
    }
    if (g_mid == 0.0) return mid;
    if (g_mid < 0.0) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
    const double width = hi - lo;
    if (width <= bracket.tol_abs + bracket.tol_rel * std::abs(mid)) {
      const double centre = lo + 0.5 * width;
      const double g_centre = std::abs(g(centre));
      if (g_centre <= std::abs(g_lo) && g_centre <= std::abs(g_hi)) {
        return centre;
      }
      return std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
    }
  }
  throw ConvergenceError("bisect_monotone: no convergence after " +
                         std::to_string(bracket.max_iter) + " iterations");
}

std::optional<RootBracket> expand_upper_bracket(const ScalarFunction& f,
                                                double lo) {
  constexpr double kLimit = 1e30;
  const double f_lo = f(lo);
  if (std::isnan(f_lo)) return std::nullopt;
  RootBracket bracket;
  bracket.lo = lo;
  if (f_lo == 0.0) {
    bracket.hi = lo + 1.0;
    return bracket;
  }
  for (double width = 1.0; lo + width <= kLimit; width *= 2.0) {
    const double hi = lo + width;
    const double f_hi = f(hi);
    if (std::isnan(f_hi)) return std::nullopt;
    if (f_hi == 0.0 || std::signbit(f_hi) != std::signbit(f_lo)) {
      bracket.hi = hi;
      return bracket;
    }
  }
  return std::nullopt;
}

}  // namespace wpmcc::numerics
