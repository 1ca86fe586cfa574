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

#include "wpmcc/local_computing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "local_internal.hpp"
#include "wpmcc/compensated_sum.hpp"
#include "wpmcc/errors.hpp"
#include "wpmcc/numerics.hpp"

namespace wpmcc::local {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Newton stops once the multiplier equation holds to this relative level.
constexpr double kBalanceTol = 1e-12;
constexpr int kMaxNewton = 200;

double SumProbs(std::span<const double> probs) {
  CompensatedSum s;
  for (const double p : probs) s += p;
  return s.value();
}

struct Solution {
  LocalOutcome outcome;
  // (1/T) sum (p + lambda)^(1/3); frequencies are this times
  // (p_k + lambda)^(-1/3). Unused at the boundary.
  double scale = 0.0;
};

// Safeguarded Newton on balance(lambda) = target. The balance is
// decreasing and convex in lambda, so Newton started at the left end of
// the bracket climbs monotonically to the root; bisection takes over if a
// step leaves the bracket or stalls.
double SolveMultiplier(std::span<const double> probs, double target,
                       MultiplierSums* at_root) {
  auto residual = [&](double lambda) {
    return multiplier_sums(probs, lambda).balance() - target;
  };
  const auto bracket = numerics::expand_upper_bracket(residual, 0.0);
  if (!bracket) {
    throw ConvergenceError("solve_lambda: no bracket for the multiplier");
  }
  double lo = bracket->lo;
  double hi = bracket->hi;
  double x = lo;
  double step = hi - lo;
  double prev_step = kInf;
  for (int iter = 0; iter < kMaxNewton; ++iter) {
    const MultiplierSums s = multiplier_sums(probs, x, true);
    const double g = s.balance() - target;
    if (std::abs(g) <= kBalanceTol * target) {
      *at_root = s;
      return x;
    }
    if (g > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      *at_root = s;
      return x;
    }
    double next = x - g / s.d_balance();
    const bool inside = std::isfinite(next) && next > lo && next < hi;
    if (!inside || std::abs(next - x) > 0.5 * prev_step) {
      // Geometric midpoint converges faster across decades.
      next = lo > 0.0 && hi > 4.0 * lo ? std::sqrt(lo * hi)
                                       : lo + 0.5 * (hi - lo);
    }
    prev_step = step;
    step = std::abs(next - x);
    x = next;
  }
  throw ConvergenceError("solve_lambda: multiplier did not converge");
}

Solution Solve(std::span<const double> probs, const LocalConfig& cfg,
               double h, double residual) {
  cfg.validate();
  if (!(h >= 0.0) || !(residual >= 0.0)) {
    throw DomainError("local policy: gain and residual must be >= 0");
  }
  const double t = cfg.deadline;
  const double n = static_cast<double>(probs.size());
  const double n_cubed = n * n * n;
  const MultiplierSums zero = multiplier_sums(probs, 0.0);
  const double target = detail::budget_balance(cfg, h, residual);
  const double budget = cfg.upsilon * cfg.bs_power * h * t;

  Solution sol;
  LocalOutcome& out = sol.outcome;
  switch (detail::classify(target, n_cubed, zero.balance())) {
    case detail::BudgetClass::kInfeasible:
      out.regime = LocalRegime::kInfeasible;
      return sol;
    case detail::BudgetClass::kBoundary:
      out.regime = LocalRegime::kHarvestLimited;
      out.lambda = kInf;
      out.lambda_unbounded = true;
      out.avg_energy = cfg.gamma / (t * t) * n * n * SumProbs(probs);
      break;
    case detail::BudgetClass::kSlack:
      out.regime = LocalRegime::kHarvestUnconstrained;
      out.lambda = 0.0;
      out.avg_energy = cfg.gamma / (t * t) * zero.energy_factor();
      sol.scale = zero.cbrt / t;
      break;
    case detail::BudgetClass::kInterior: {
      MultiplierSums root;
      out.regime = LocalRegime::kHarvestLimited;
      out.lambda = SolveMultiplier(probs, target, &root);
      out.avg_energy = cfg.gamma / (t * t) * root.energy_factor();
      sol.scale = root.cbrt / t;
      break;
    }
  }
  out.savings = budget - out.avg_energy;
  return sol;
}

LocalPolicy Materialize(std::span<const double> probs, const Solution& sol,
                        double deadline) {
  LocalPolicy policy;
  const LocalOutcome& out = sol.outcome;
  policy.regime = out.regime;
  policy.feasible = out.feasible();
  policy.lambda = out.lambda;
  policy.lambda_unbounded = out.lambda_unbounded;
  policy.avg_energy = out.avg_energy;
  policy.savings = out.savings;
  if (!policy.feasible) return policy;
  policy.frequencies.resize(probs.size());
  if (out.lambda_unbounded) {
    std::fill(policy.frequencies.begin(), policy.frequencies.end(),
              static_cast<double>(probs.size()) / deadline);
    return policy;
  }
  for (std::size_t k = 0; k < probs.size(); ++k) {
    policy.frequencies[k] = sol.scale / std::cbrt(probs[k] + out.lambda);
  }
  return policy;
}

}  // namespace

void LocalConfig::validate() const {
  if (!(gamma > 0.0) || !(bs_power > 0.0) || !(deadline > 0.0)) {
    throw DomainError("LocalConfig: gamma, bs_power and deadline must be > 0");
  }
  if (!(upsilon > 0.0 && upsilon <= 1.0)) {
    throw DomainError("LocalConfig: upsilon must lie in (0, 1]");
  }
}

const char* to_string(LocalRegime regime) {
  switch (regime) {
    case LocalRegime::kInfeasible:
      return "infeasible";
    case LocalRegime::kHarvestLimited:
      return "harvest-limited";
    case LocalRegime::kHarvestUnconstrained:
      return "harvest-unconstrained";
  }
  return "unknown";
}

double MultiplierSums::d_balance() const {
  return 2.0 / 3.0 * cbrt * (inv * inv - cbrt * inv5);
}

double MultiplierSums::d_energy_factor() const {
  return 2.0 / 3.0 * cbrt * (inv * weighted - cbrt * weighted5);
}

MultiplierSums multiplier_sums(std::span<const double> probs, double lambda,
                               bool with_derivatives) {
  CompensatedSum s_cbrt;
  CompensatedSum s_inv;
  CompensatedSum s_weighted;
  CompensatedSum s_inv5;
  CompensatedSum s_weighted5;
  for (const double p : probs) {
    const double q = p + lambda;
    const double c = std::cbrt(q);
    const double inv = 1.0 / (c * c);
    s_cbrt += c;
    s_inv += inv;
    // p (p + lambda)^(-2/3) -> 0 as p -> 0 even at lambda = 0.
    if (p > 0.0) s_weighted += p * inv;
    if (with_derivatives) {
      const double inv5 = inv / q;
      s_inv5 += inv5;
      if (p > 0.0) s_weighted5 += p * inv5;
    }
  }
  MultiplierSums out;
  out.cbrt = s_cbrt.value();
  out.inv = s_inv.value();
  out.weighted = s_weighted.value();
  out.inv5 = s_inv5.value();
  out.weighted5 = s_weighted5.value();
  return out;
}

Thresholds thresholds(const cci::ExecutionProbabilities& probs,
                      const LocalConfig& cfg) {
  cfg.validate();
  const double n = static_cast<double>(probs.cycles());
  const double t3 = cfg.deadline * cfg.deadline * cfg.deadline;
  const double scale = cfg.gamma / (cfg.upsilon * t3);
  Thresholds out;
  out.a = scale * n * n * n;
  out.a_prime = scale * multiplier_sums(probs.view(), 0.0).balance();
  return out;
}

double solve_lambda(const cci::ExecutionProbabilities& probs,
                    const LocalConfig& cfg, double received_power) {
  cfg.validate();
  const std::span<const double> p = probs.view();
  const double n = static_cast<double>(p.size());
  const double t = cfg.deadline;
  const double target = cfg.upsilon * received_power * t * t * t / cfg.gamma;
  const double balance_zero = multiplier_sums(p, 0.0).balance();
  switch (detail::classify(target, n * n * n, balance_zero)) {
    case detail::BudgetClass::kBoundary:
      return kInf;
    case detail::BudgetClass::kInterior: {
      MultiplierSums root;
      return SolveMultiplier(p, target, &root);
    }
    default:
      throw InfeasibleError("solve_lambda: received power " +
                            std::to_string(received_power) +
                            " outside [a, a')");
  }
}

LocalPolicy static_policy(const cci::ExecutionProbabilities& probs,
                          const LocalConfig& cfg, double h) {
  return slave_policy(probs, cfg, h, 0.0);
}

LocalPolicy slave_policy(const cci::ExecutionProbabilities& probs,
                         const LocalConfig& cfg, double h, double residual) {
  return Materialize(probs.view(), Solve(probs.view(), cfg, h, residual),
                     cfg.deadline);
}

LocalPolicy slave_policy(const cci::CciModel& model, const LocalConfig& cfg,
                         double bits, double h, double residual) {
  if (!(bits >= 0.0)) throw DomainError("slave_policy: bits must be >= 0");
  if (bits == 0.0) {
    cfg.validate();
    LocalPolicy empty;
    empty.feasible = true;
    empty.regime = LocalRegime::kHarvestUnconstrained;
    empty.savings = cfg.upsilon * cfg.bs_power * h * cfg.deadline;
    return empty;
  }
  return slave_policy(cci::execution_probabilities(model, bits), cfg, h,
                      residual);
}

LocalOutcome solve_outcome(const cci::ExecutionProbabilities& probs,
                           const LocalConfig& cfg, double h, double residual) {
  return Solve(probs.view(), cfg, h, residual).outcome;
}

double average_energy(std::span<const double> probs,
                      std::span<const double> frequencies, double gamma) {
  if (probs.size() != frequencies.size()) {
    throw DomainError("average_energy: size mismatch");
  }
  CompensatedSum s;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    s += probs[k] * frequencies[k] * frequencies[k];
  }
  return gamma * s.value();
}

double max_prefix_violation(std::span<const double> frequencies,
                            double gamma, double harvested_power,
                            double residual) {
  CompensatedSum used;
  CompensatedSum elapsed;
  double worst = -kInf;
  for (const double f : frequencies) {
    used += gamma * f * f;
    elapsed += 1.0 / f;
    worst = std::max(worst, used.value() - residual -
                                harvested_power * elapsed.value());
  }
  return worst;
}

}  // namespace wpmcc::local
