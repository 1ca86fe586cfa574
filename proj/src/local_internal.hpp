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

// Shared between the exact solver and the tabulated evaluator so both
// classify budgets identically.

#ifndef WPMCC_SRC_LOCAL_INTERNAL_HPP_
#define WPMCC_SRC_LOCAL_INTERNAL_HPP_

#include "wpmcc/local_computing.hpp"

namespace wpmcc::local::detail {

// Relative slack around N^3 inside which a budget is treated as exactly
// covering N cycles at N/T. Absorbs the rounding of forming
// upsilon * a * T^3 / gamma back from a threshold.
inline constexpr double kBoundarySlack = 1e-12;

enum class BudgetClass { kInfeasible, kBoundary, kInterior, kSlack };

// `balance` is the budget in multiplier-equation units, E T^2 / gamma.
inline BudgetClass classify(double balance, double n_cubed,
                            double balance_zero) {
  if (balance < n_cubed * (1.0 - kBoundarySlack)) {
    return BudgetClass::kInfeasible;
  }
  if (balance >= balance_zero) return BudgetClass::kSlack;
  if (balance <= n_cubed * (1.0 + kBoundarySlack)) {
    return BudgetClass::kBoundary;
  }
  return BudgetClass::kInterior;
}

inline double budget_balance(const LocalConfig& cfg, double h,
                             double residual) {
  const double t = cfg.deadline;
  const double energy = cfg.upsilon * cfg.bs_power * h * t + residual;
  return energy * t * t / cfg.gamma;
}

}  // namespace wpmcc::local::detail

#endif  // WPMCC_SRC_LOCAL_INTERNAL_HPP_
