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

#include <algorithm>
#include <cmath>
#include <limits>

#include "local_internal.hpp"
#include "wpmcc/compensated_sum.hpp"
#include "wpmcc/errors.hpp"
#include "wpmcc/local_computing.hpp"

namespace wpmcc::local {
namespace {

constexpr int kInverseSteps = 64;

// Cubic Hermite on [0, 1] with end slopes already scaled by the interval.
double Hermite(double y0, double d0, double y1, double d1, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
}

// Solves Hermite(...) = target for s in [0, 1]; the interpolant is
// monotone on every segment for the grids used here, and bisection keeps
// the result inside the segment even if it is not.
double InvertHermite(double y0, double d0, double y1, double d1,
                     double target) {
  const bool decreasing = y1 < y0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kInverseSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = Hermite(y0, d0, y1, d1, mid);
    if ((v > target) == decreasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LocalEnergyTable::LocalEnergyTable(const cci::ExecutionProbabilities& probs,
                                   int nodes_per_decade, double lambda_min,
                                   double lambda_max) {
  if (nodes_per_decade < 1 || !(lambda_min > 0.0) ||
      !(lambda_max > lambda_min)) {
    throw DomainError("LocalEnergyTable: invalid grid");
  }
  const std::span<const double> p = probs.view();
  cycles_ = static_cast<std::int64_t>(p.size());
  data_bits_ = probs.data_bits;
  const double n = static_cast<double>(p.size());
  n_cubed_ = n * n * n;

  const MultiplierSums zero = multiplier_sums(p, 0.0, true);
  balance_zero_ = zero.balance();
  energy_zero_ = zero.energy_factor();
  d_balance_zero_ = zero.d_balance();
  d_energy_zero_ = zero.d_energy_factor();

  CompensatedSum s1;
  CompensatedSum s2;
  for (const double v : p) {
    s1 += v;
    s2 += v * v;
  }
  energy_unbounded_ = n * n * s1.value();
  // d(energy)/d(1/lambda) at 1/lambda = 0; the balance has zero slope
  // there.
  d_energy_unbounded_ =
      2.0 / 3.0 * n * (s1.value() * s1.value() - n * s2.value());

  const double u_min = std::log(lambda_min);
  const double u_max = std::log(lambda_max);
  const int count = std::max(
      2, static_cast<int>(std::ceil((u_max - u_min) / std::log(10.0) *
                                    nodes_per_decade)) + 1);
  nodes_.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = i + 1 == count
                         ? u_max
                         : u_min + (u_max - u_min) * i / (count - 1);
    const double lambda = std::exp(u);
    const MultiplierSums s = multiplier_sums(p, lambda, true);
    nodes_.push_back({u, s.balance(), lambda * s.d_balance(),
                      s.energy_factor(), lambda * s.d_energy_factor()});
  }
}

Thresholds LocalEnergyTable::thresholds(const LocalConfig& cfg) const {
  cfg.validate();
  const double t3 = cfg.deadline * cfg.deadline * cfg.deadline;
  const double scale = cfg.gamma / (cfg.upsilon * t3);
  return {scale * n_cubed_, scale * balance_zero_};
}

double LocalEnergyTable::energy_for_balance(double target,
                                            double* lambda) const {
  const Node& first = nodes_.front();
  const Node& last = nodes_.back();
  if (target >= first.balance) {
    // Between lambda = 0 and the first node, interpolate in lambda.
    const double l1 = std::exp(first.u);
    if (!std::isfinite(balance_zero_) || !std::isfinite(d_balance_zero_)) {
      *lambda = l1;
      return first.energy;
    }
    const double d1 = first.d_balance;  // = l1 * dB/dlambda
    const double s = InvertHermite(balance_zero_, l1 * d_balance_zero_,
                                   first.balance, d1, target);
    *lambda = s * l1;
    return Hermite(energy_zero_, l1 * d_energy_zero_, first.energy,
                   first.d_energy, s);
  }
  if (target <= last.balance) {
    // Beyond the last node, interpolate in e = 1 / lambda down to e = 0.
    const double l1 = std::exp(last.u);
    const double e1 = 1.0 / l1;
    // d/de = -lambda^2 d/dlambda = -lambda d/du.
    const double db = -l1 * last.d_balance * e1;
    const double de = -l1 * last.d_energy * e1;
    const double s = InvertHermite(n_cubed_, 0.0, last.balance, db, target);
    *lambda = s > 0.0 ? 1.0 / (s * e1)
                      : std::numeric_limits<double>::infinity();
    return Hermite(energy_unbounded_, d_energy_unbounded_ * e1, last.energy,
                   de, s);
  }
  // Balance decreases along the nodes.
  const auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), target,
      [](const Node& node, double v) { return node.balance > v; });
  const Node& hi = *it;
  const Node& lo = *(it - 1);
  const double du = hi.u - lo.u;
  const double s = InvertHermite(lo.balance, lo.d_balance * du, hi.balance,
                                 hi.d_balance * du, target);
  *lambda = std::exp(lo.u + s * du);
  return Hermite(lo.energy, lo.d_energy * du, hi.energy, hi.d_energy * du, s);
}

LocalOutcome LocalEnergyTable::evaluate(const LocalConfig& cfg, double h,
                                        double residual) const {
  const double t = cfg.deadline;
  const double target = detail::budget_balance(cfg, h, residual);
  const double scale = cfg.gamma / (t * t);
  LocalOutcome out;
  switch (detail::classify(target, n_cubed_, balance_zero_)) {
    case detail::BudgetClass::kInfeasible:
      return out;
    case detail::BudgetClass::kBoundary:
      out.regime = LocalRegime::kHarvestLimited;
      out.lambda = std::numeric_limits<double>::infinity();
      out.lambda_unbounded = true;
      out.avg_energy = scale * energy_unbounded_;
      break;
    case detail::BudgetClass::kSlack:
      out.regime = LocalRegime::kHarvestUnconstrained;
      out.avg_energy = scale * energy_zero_;
      break;
    case detail::BudgetClass::kInterior:
      out.regime = LocalRegime::kHarvestLimited;
      out.avg_energy = scale * energy_for_balance(target, &out.lambda);
      break;
  }
  out.savings = cfg.upsilon * cfg.bs_power * h * t - out.avg_energy;
  return out;
}

}  // namespace wpmcc::local
