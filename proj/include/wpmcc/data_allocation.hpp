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

// Splitting L bits across M fading blocks of duration T_c with known
// gains. Each block runs the single-block policy of its mode; energy left
// over in one block carries into the next as residual energy.
//
// Local computing uses a convex surrogate g_hat of the per-block energy
// and lower-bound residual estimates, which makes the split a separable
// convex program solved by equalizing marginal energies. Offloading uses
// either a greedy fill by marginal cost per bit (residuals ignored) or a
// dynamic program over (remaining bits, residual energy).

#ifndef WPMCC_DATA_ALLOCATION_HPP_
#define WPMCC_DATA_ALLOCATION_HPP_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "wpmcc/cci_model.hpp"
#include "wpmcc/channel_model.hpp"
#include "wpmcc/local_computing.hpp"
#include "wpmcc/offloading.hpp"

namespace wpmcc::alloc {

struct DpGrid {
  int energy_levels = 200;
  int data_levels = 100;

  void validate() const;
};

// Scaling factors and per-bit cycle cap describing the local workload.
struct LocalWorkload {
  cci::ScalingFactors factors;
  std::int64_t n0 = 0;

  // Factors evaluated at `ref_bits`, normally the total data size.
  static LocalWorkload from_model(const cci::CciModel& model, double ref_bits);
};

// Surrogate energy curve of one block for local computing:
//   gamma phi0 l^3 / T_c^2                         for l <= b_hat
//   gamma phi_hat(l) l^3 / T_c^2, quartic phi_hat  for b_hat < l <= b_hat'
// with phi_hat rising from phi0 at b_hat to phi1 at b_hat'.
struct LocalBlockModel {
  double b_hat = 0.0;
  double b_hat_prime = 0.0;  // largest feasible data size
  double phi0 = 0.0;
  double phi1 = 0.0;
  double scale = 0.0;  // gamma / T_c^2

  static LocalBlockModel make(const LocalWorkload& workload,
                              const local::LocalConfig& cfg, double h,
                              double residual);

  bool has_bridge() const { return b_hat_prime > b_hat; }
  // Throws InfeasibleError above b_hat'.
  double energy(double bits) const;
  double marginal(double bits) const;
  // Largest l in [0, b_hat'] whose marginal energy is <= xi.
  double invert_marginal(double xi) const;
};

struct LocalBlock {
  LocalBlockModel model;
  double energy = 0.0;
  double marginal = 0.0;
  bool capped = false;
};

using BlockPolicy = std::variant<LocalBlock, offload::OffloadPolicy>;

struct AllocationPlan {
  bool feasible = false;
  std::vector<double> allocations;
  std::vector<double> residual_estimates;
  std::vector<BlockPolicy> per_block;
  // Total surrogate energy for local plans, total savings for offloading.
  double total_objective = 0.0;
  // Common marginal energy of uncapped local blocks.
  double multiplier = 0.0;
};

// R_hat_1 = 0, R_hat_n = phi_bar (upsilon P_b h_{n-1} T_c + R_hat_{n-1}).
// cfg.deadline is the block duration.
std::vector<double> residual_estimates_local(const channel::BlockGains& gains,
                                             const local::LocalConfig& cfg,
                                             const cci::ScalingFactors& factors);

// Surrogate energy of one block; throws InfeasibleError for bits above
// the block's b_hat'.
double ghat_loc(double bits, double r_hat, double h,
                const local::LocalConfig& cfg, const LocalWorkload& workload);

AllocationPlan allocate_local(double total_bits,
                              const channel::BlockGains& gains,
                              const local::LocalConfig& cfg,
                              const LocalWorkload& workload);

AllocationPlan allocate_offload_greedy(double total_bits,
                                       const channel::BlockGains& gains,
                                       const offload::OffloadConfig& cfg);

AllocationPlan allocate_offload_dp(double total_bits,
                                   const channel::BlockGains& gains,
                                   const offload::OffloadConfig& cfg,
                                   const DpGrid& grid = {});

std::vector<double> allocate_equal(double total_bits, int m);

// A plan executed block by block with exact slave policies and true
// residual energies.
struct RealizedPlan {
  bool feasible = false;
  // Residual energy entering each block; the last entry is what remains
  // after block M.
  std::vector<double> residuals;
  // Energy spent (local) or savings (offloading) per block.
  std::vector<double> block_values;
  double total = 0.0;
};

// Exact local slaves sized from the CCI model.
RealizedPlan realize_local_plan(std::span<const double> allocations,
                                const channel::BlockGains& gains,
                                const local::LocalConfig& cfg,
                                const cci::CciModel& model);

// Same, for plans whose non-zero allocations all equal table.data_bits().
RealizedPlan realize_local_plan(std::span<const double> allocations,
                                const channel::BlockGains& gains,
                                const local::LocalConfig& cfg,
                                const local::LocalEnergyTable& table);

RealizedPlan realize_offload_plan(std::span<const double> allocations,
                                  const channel::BlockGains& gains,
                                  const offload::OffloadConfig& cfg);

}  // namespace wpmcc::alloc

#endif  // WPMCC_DATA_ALLOCATION_HPP_
