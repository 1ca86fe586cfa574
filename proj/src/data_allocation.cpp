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

#include "wpmcc/data_allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "local_internal.hpp"
#include "wpmcc/errors.hpp"
#include "wpmcc/numerics.hpp"

namespace wpmcc::alloc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckBlocks(const channel::BlockGains& gains, double deadline) {
  if (gains.blocks() == 0) throw DomainError("allocation: no fading blocks");
  if (std::abs(gains.block_duration - deadline) > 1e-12 * deadline) {
    throw DomainError("allocation: config deadline must equal T_c");
  }
}

void CheckBits(double total_bits) {
  if (!(total_bits >= 0.0) || !std::isfinite(total_bits)) {
    throw DomainError("allocation: total bits must be finite and >= 0");
  }
}

// floor(cbrt(x)) exactly, for x up to ~1e54.
double FloorCbrt(double x) {
  if (!(x > 0.0)) return 0.0;
  const long double lx = x;
  long double k = std::floor(std::cbrt(lx));
  while ((k + 1) * (k + 1) * (k + 1) <= lx) k += 1;
  while (k > 0 && k * k * k > lx) k -= 1;
  return static_cast<double>(k);
}

}  // namespace

void DpGrid::validate() const {
  if (energy_levels < 2 || data_levels < 2) {
    throw DomainError("DpGrid: both grid sizes must be >= 2");
  }
}

LocalWorkload LocalWorkload::from_model(const cci::CciModel& model,
                                        double ref_bits) {
  LocalWorkload out;
  const cci::ExecutionProbabilities probs =
      cci::execution_probabilities(model, ref_bits);
  out.factors = cci::scaling_factors(probs);
  out.n0 = probs.n0;
  return out;
}

LocalBlockModel LocalBlockModel::make(const LocalWorkload& workload,
                                      const local::LocalConfig& cfg, double h,
                                      double residual) {
  cfg.validate();
  if (workload.n0 < 1) throw DomainError("LocalBlockModel: n0 must be >= 1");
  // (upsilon P_b h T_c^3 + R T_c^2) / gamma.
  const double budget = local::detail::budget_balance(cfg, h, residual);
  LocalBlockModel m;
  m.phi0 = workload.factors.phi0;
  m.phi1 = workload.factors.phi1;
  m.scale = cfg.gamma / (cfg.deadline * cfg.deadline);
  m.b_hat = std::cbrt(budget / workload.factors.theta0);
  // Whole cycles the budget can pay for at the equal-frequency schedule.
  m.b_hat_prime = FloorCbrt(budget) / static_cast<double>(workload.n0);
  return m;
}

double LocalBlockModel::energy(double bits) const {
  if (!(bits >= 0.0) || bits > b_hat_prime) {
    throw InfeasibleError("ghat_loc: data size " + std::to_string(bits) +
                          " exceeds block capacity " +
                          std::to_string(b_hat_prime));
  }
  const double l3 = bits * bits * bits;
  if (!has_bridge() || bits <= b_hat) return scale * phi0 * l3;
  const double s = (bits - b_hat) / (b_hat_prime - b_hat);
  const double s2 = s * s;
  return scale * (phi0 + (phi1 - phi0) * s2 * s2) * l3;
}

double LocalBlockModel::marginal(double bits) const {
  const double l2 = bits * bits;
  if (!has_bridge() || bits <= b_hat) return 3.0 * scale * phi0 * l2;
  const double width = b_hat_prime - b_hat;
  const double s = (bits - b_hat) / width;
  const double s3 = s * s * s;
  const double phi = phi0 + (phi1 - phi0) * s3 * s;
  const double d_phi = 4.0 * (phi1 - phi0) * s3 / width;
  return scale * (d_phi * l2 * bits + 3.0 * phi * l2);
}

double LocalBlockModel::invert_marginal(double xi) const {
  if (b_hat_prime <= 0.0 || xi <= 0.0) return 0.0;
  if (marginal(b_hat_prime) <= xi) return b_hat_prime;
  double lo = 0.0;
  double hi = b_hat_prime;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (marginal(mid) <= xi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<double> residual_estimates_local(
    const channel::BlockGains& gains, const local::LocalConfig& cfg,
    const cci::ScalingFactors& factors) {
  cfg.validate();
  const double phi_bar = factors.phi_bar();
  if (phi_bar < 0.0) throw DomainError("residual estimates: phi_bar < 0");
  std::vector<double> out(gains.blocks(), 0.0);
  const double per_gain = cfg.upsilon * cfg.bs_power * cfg.deadline;
  for (std::size_t n = 1; n < out.size(); ++n) {
    out[n] = phi_bar * (per_gain * gains.gains[n - 1] + out[n - 1]);
  }
  return out;
}

double ghat_loc(double bits, double r_hat, double h,
                const local::LocalConfig& cfg, const LocalWorkload& workload) {
  return LocalBlockModel::make(workload, cfg, h, r_hat).energy(bits);
}

AllocationPlan allocate_local(double total_bits,
                              const channel::BlockGains& gains,
                              const local::LocalConfig& cfg,
                              const LocalWorkload& workload) {
  CheckBits(total_bits);
  CheckBlocks(gains, cfg.deadline);
  const std::size_t m = gains.blocks();
  AllocationPlan plan;
  plan.residual_estimates =
      residual_estimates_local(gains, cfg, workload.factors);
  std::vector<LocalBlockModel> models;
  models.reserve(m);
  double capacity = 0.0;
  double max_marginal = 0.0;
  for (std::size_t n = 0; n < m; ++n) {
    models.push_back(LocalBlockModel::make(workload, cfg, gains.gains[n],
                                           plan.residual_estimates[n]));
    capacity += models.back().b_hat_prime;
    max_marginal =
        std::max(max_marginal, models.back().marginal(models.back().b_hat_prime));
  }
  plan.allocations.assign(m, 0.0);
  if (total_bits > capacity) return plan;

  if (total_bits > 0.0) {
    auto excess = [&](double xi) {
      double sum = 0.0;
      for (const auto& model : models) sum += model.invert_marginal(xi);
      return sum - total_bits;
    };
    numerics::RootBracket bracket;
    bracket.lo = 0.0;
    bracket.hi = max_marginal;
    bracket.tol_abs = max_marginal * 1e-16;
    bracket.tol_rel = 1e-15;
    bracket.max_iter = 400;
    plan.multiplier = excess(max_marginal) <= 0.0
                          ? max_marginal
                          : numerics::bisect_monotone(
                                excess, bracket,
                                numerics::Monotonicity::kIncreasing);
    double sum = 0.0;
    double free_sum = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
      plan.allocations[n] = models[n].invert_marginal(plan.multiplier);
      sum += plan.allocations[n];
      if (plan.allocations[n] < models[n].b_hat_prime) {
        free_sum += plan.allocations[n];
      }
    }
    // Spread the bisection remainder over uncapped blocks.
    if (free_sum > 0.0) {
      const double factor = 1.0 + (total_bits - sum) / free_sum;
      for (std::size_t n = 0; n < m; ++n) {
        if (plan.allocations[n] < models[n].b_hat_prime) {
          plan.allocations[n] = std::min(plan.allocations[n] * factor,
                                         models[n].b_hat_prime);
        }
      }
    }
  }

  plan.feasible = true;
  plan.per_block.reserve(m);
  for (std::size_t n = 0; n < m; ++n) {
    LocalBlock block;
    block.model = models[n];
    block.energy = models[n].energy(plan.allocations[n]);
    block.marginal = models[n].marginal(plan.allocations[n]);
    block.capped = plan.allocations[n] >= models[n].b_hat_prime;
    plan.total_objective += block.energy;
    plan.per_block.emplace_back(block);
  }
  return plan;
}

AllocationPlan allocate_offload_greedy(double total_bits,
                                       const channel::BlockGains& gains,
                                       const offload::OffloadConfig& cfg) {
  CheckBits(total_bits);
  CheckBlocks(gains, cfg.deadline);
  const std::size_t m = gains.blocks();
  std::vector<offload::SlaveEvaluator> blocks;
  blocks.reserve(m);
  for (const double h : gains.gains) blocks.emplace_back(cfg, h);

  AllocationPlan plan;
  plan.allocations.assign(m, 0.0);
  plan.residual_estimates.assign(m, 0.0);
  double capacity = 0.0;
  for (const auto& b : blocks) capacity += b.cap();
  if (total_bits > capacity) return plan;

  // Cheapest marginal cost per bit first; zero-gain blocks go last.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto cost = [&](std::size_t n) {
    return blocks[n].cap() > 0.0 ? blocks[n].y()
                                 : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return cost(a) < cost(b);
  });
  double remaining = total_bits;
  for (const std::size_t n : order) {
    if (remaining <= 0.0) break;
    const double take = std::min(blocks[n].cap(), remaining);
    plan.allocations[n] = take;
    remaining -= take;
  }

  plan.feasible = true;
  plan.per_block.reserve(m);
  for (std::size_t n = 0; n < m; ++n) {
    offload::OffloadPolicy p;
    p.feasible = true;
    p.regime = offload::OffloadRegime::kInterior;
    const double bits = plan.allocations[n];
    p.duration = bits > 0.0 ? blocks[n].rho() * bits : 0.0;
    p.savings = blocks[n].harvested() - (bits > 0.0 ? blocks[n].y() * bits : 0.0);
    plan.total_objective += p.savings;
    plan.per_block.emplace_back(p);
  }
  return plan;
}

AllocationPlan allocate_offload_dp(double total_bits,
                                   const channel::BlockGains& gains,
                                   const offload::OffloadConfig& cfg,
                                   const DpGrid& grid) {
  CheckBits(total_bits);
  CheckBlocks(gains, cfg.deadline);
  grid.validate();
  const std::size_t m = gains.blocks();
  const auto nd = static_cast<std::size_t>(grid.data_levels);
  const auto ne = static_cast<std::size_t>(grid.energy_levels);
  std::vector<offload::SlaveEvaluator> blocks;
  blocks.reserve(m);
  double energy_max = 0.0;
  for (const double h : gains.gains) {
    blocks.emplace_back(cfg, h);
    energy_max += blocks.back().harvested();
  }
  const double e_step = energy_max / static_cast<double>(ne - 1);
  auto bits_at = [&](std::size_t j) {
    return total_bits * static_cast<double>(j) / static_cast<double>(nd - 1);
  };
  // Residual energy is rounded down onto the grid, so every planned path
  // stays feasible when replayed with exact residuals.
  auto energy_index = [&](double r) {
    if (!(e_step > 0.0) || r <= 0.0) return std::size_t{0};
    const double idx = std::floor(r / e_step);
    return std::min(ne - 1, static_cast<std::size_t>(idx));
  };
  auto at = [&](std::size_t r, std::size_t e) { return r * ne + e; };

  std::vector<double> next(nd * ne, kNegInf);
  for (std::size_t e = 0; e < ne; ++e) next[at(0, e)] = 0.0;
  std::vector<double> value(nd * ne);
  // choice[n][state] = data-grid steps given to block n.
  std::vector<std::vector<std::uint16_t>> choice(
      m, std::vector<std::uint16_t>(nd * ne, 0));

  for (std::size_t n = m; n-- > 0;) {
    std::fill(value.begin(), value.end(), kNegInf);
    for (std::size_t e = 0; e < ne; ++e) {
      const double residual = static_cast<double>(e) * e_step;
      for (std::size_t j = 0; j < nd; ++j) {
        const offload::OffloadPolicy p = blocks[n](bits_at(j), residual);
        if (!p.feasible) continue;
        const double after = std::max(0.0, residual + p.savings);
        const std::size_t e_next = energy_index(after);
        for (std::size_t r = j; r < nd; ++r) {
          const double tail = next[at(r - j, e_next)];
          if (tail == kNegInf) continue;
          const double v = p.savings + tail;
          if (v > value[at(r, e)]) {
            value[at(r, e)] = v;
            choice[n][at(r, e)] = static_cast<std::uint16_t>(j);
          }
        }
      }
    }
    std::swap(value, next);
  }

  AllocationPlan plan;
  plan.allocations.assign(m, 0.0);
  plan.residual_estimates.assign(m, 0.0);
  if (next[at(nd - 1, 0)] == kNegInf) return plan;

  std::size_t r = nd - 1;
  double residual = 0.0;
  std::size_t steps = 0;
  plan.per_block.reserve(m);
  for (std::size_t n = 0; n < m; ++n) {
    const std::size_t j = choice[n][at(r, energy_index(residual))];
    const double bits = bits_at(steps + j) - bits_at(steps);
    const offload::OffloadPolicy p = blocks[n](bits, residual);
    if (!p.feasible) {
      throw ConvergenceError("allocate_offload_dp: replay left feasible set");
    }
    plan.residual_estimates[n] = residual;
    plan.allocations[n] = bits;
    plan.per_block.emplace_back(p);
    plan.total_objective += p.savings;
    residual = std::max(0.0, residual + p.savings);
    r -= j;
    steps += j;
  }
  plan.feasible = r == 0;
  return plan;
}

std::vector<double> allocate_equal(double total_bits, int m) {
  CheckBits(total_bits);
  if (m < 1) throw DomainError("allocate_equal: m must be >= 1");
  return std::vector<double>(static_cast<std::size_t>(m),
                             total_bits / static_cast<double>(m));
}

namespace {

template <class SolveBlock>
RealizedPlan RealizeLocal(std::span<const double> allocations,
                          const channel::BlockGains& gains,
                          const local::LocalConfig& cfg, SolveBlock solve) {
  CheckBlocks(gains, cfg.deadline);
  if (allocations.size() != gains.blocks()) {
    throw DomainError("realize_local_plan: size mismatch");
  }
  RealizedPlan out;
  double residual = 0.0;
  out.residuals.push_back(residual);
  for (std::size_t n = 0; n < allocations.size(); ++n) {
    const double h = gains.gains[n];
    double energy = 0.0;
    if (allocations[n] > 0.0) {
      const local::LocalOutcome o = solve(allocations[n], h, residual);
      if (!o.feasible()) return out;
      energy = o.avg_energy;
    }
    out.block_values.push_back(energy);
    out.total += energy;
    residual += cfg.upsilon * cfg.bs_power * h * cfg.deadline - energy;
    out.residuals.push_back(residual);
  }
  out.feasible = true;
  return out;
}

}  // namespace

RealizedPlan realize_local_plan(std::span<const double> allocations,
                                const channel::BlockGains& gains,
                                const local::LocalConfig& cfg,
                                const cci::CciModel& model) {
  return RealizeLocal(allocations, gains, cfg,
                      [&](double bits, double h, double residual) {
                        return local::solve_outcome(
                            cci::execution_probabilities(model, bits), cfg, h,
                            residual);
                      });
}

RealizedPlan realize_local_plan(std::span<const double> allocations,
                                const channel::BlockGains& gains,
                                const local::LocalConfig& cfg,
                                const local::LocalEnergyTable& table) {
  return RealizeLocal(allocations, gains, cfg,
                      [&](double bits, double h, double residual) {
                        if (bits != table.data_bits()) {
                          throw DomainError(
                              "realize_local_plan: allocation does not match "
                              "the table");
                        }
                        return table.evaluate(cfg, h, residual);
                      });
}

RealizedPlan realize_offload_plan(std::span<const double> allocations,
                                  const channel::BlockGains& gains,
                                  const offload::OffloadConfig& cfg) {
  CheckBlocks(gains, cfg.deadline);
  if (allocations.size() != gains.blocks()) {
    throw DomainError("realize_offload_plan: size mismatch");
  }
  RealizedPlan out;
  double residual = 0.0;
  out.residuals.push_back(residual);
  for (std::size_t n = 0; n < allocations.size(); ++n) {
    const offload::OffloadPolicy p =
        offload::slave_policy(cfg, gains.gains[n], allocations[n], residual);
    if (!p.feasible) return out;
    out.block_values.push_back(p.savings);
    out.total += p.savings;
    residual = std::max(0.0, residual + p.savings);
    out.residuals.push_back(residual);
  }
  out.feasible = true;
  return out;
}

}  // namespace wpmcc::alloc
