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

// Energy-minimal CPU-cycle frequency control for local computing under an
// energy-harvesting constraint.
//
// With execution probabilities p_1..p_N, deadline T and an energy budget
// E = upsilon * P_b * h * T + R (R = residual energy carried into the
// block), the optimal schedule is
//
//   f_k = (S / T) (p_k + lambda)^(-1/3),   S = sum_m (p_m + lambda)^(1/3)
//
// where lambda >= 0 is the multiplier of the harvesting constraint. It is
// zero when the budget is ample, and otherwise solves
//
//   (sum (p_k + lambda)^(1/3))^2 (sum (p_k + lambda)^(-2/3)) = E T^2 / gamma.
//
// The left side decreases from its lambda = 0 value to N^3 as lambda grows,
// which yields the three regimes below.

#ifndef WPMCC_LOCAL_COMPUTING_HPP_
#define WPMCC_LOCAL_COMPUTING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "wpmcc/cci_model.hpp"

namespace wpmcc::local {

struct LocalConfig {
  double gamma = 1e-28;   // switched-capacitance constant, J s^2
  double upsilon = 0.8;   // energy conversion efficiency
  double bs_power = 0.5;  // BS transmission power P_b, W
  double deadline = 0.035;

  void validate() const;
};

enum class LocalRegime {
  kInfeasible,
  // 0 < lambda <= inf; the harvesting constraint binds.
  kHarvestLimited,
  // lambda = 0; frequencies do not depend on the received power.
  kHarvestUnconstrained,
};

const char* to_string(LocalRegime regime);

struct LocalPolicy {
  bool feasible = false;
  std::vector<double> frequencies;
  double lambda = 0.0;
  // Boundary case where the budget exactly covers N cycles at N/T Hz.
  // lambda is formally infinite and all frequencies equal N/T.
  bool lambda_unbounded = false;
  double avg_energy = 0.0;
  double savings = 0.0;
  LocalRegime regime = LocalRegime::kInfeasible;
};

// Policy without the materialized frequency vector.
struct LocalOutcome {
  LocalRegime regime = LocalRegime::kInfeasible;
  double lambda = 0.0;
  bool lambda_unbounded = false;
  double avg_energy = 0.0;
  double savings = 0.0;

  bool feasible() const { return regime != LocalRegime::kInfeasible; }
};

// Received-power thresholds. Below `a` no schedule meets the deadline on
// harvested energy; at or above `a_prime` the harvesting constraint is
// slack.
struct Thresholds {
  double a = 0.0;
  double a_prime = 0.0;
};

// Sums over k of powers of (p_k + lambda):
//   cbrt     (p+l)^(1/3)        inv     (p+l)^(-2/3)
//   weighted p (p+l)^(-2/3)     inv5    (p+l)^(-5/3)
//   weighted5 p (p+l)^(-5/3)
struct MultiplierSums {
  double cbrt = 0.0;
  double inv = 0.0;
  double weighted = 0.0;
  double inv5 = 0.0;
  double weighted5 = 0.0;

  // Left side of the multiplier equation.
  double balance() const { return cbrt * cbrt * inv; }
  // gamma / T^2 times this is the average energy.
  double energy_factor() const { return cbrt * cbrt * weighted; }
  double d_balance() const;
  double d_energy_factor() const;
};

MultiplierSums multiplier_sums(std::span<const double> probs, double lambda,
                               bool with_derivatives = false);

Thresholds thresholds(const cci::ExecutionProbabilities& probs,
                      const LocalConfig& cfg);

/// Multiplier lambda > 0 for a received power P_b h in [a, a').
///
/// Throws InfeasibleError outside that interval. At P_b h == a the
/// multiplier is unbounded and the function returns +infinity.
double solve_lambda(const cci::ExecutionProbabilities& probs,
                    const LocalConfig& cfg, double received_power);

// Static channel with gain h.
LocalPolicy static_policy(const cci::ExecutionProbabilities& probs,
                          const LocalConfig& cfg, double h);

// One fading block of duration cfg.deadline with residual energy carried
// in. residual == 0 reproduces static_policy.
LocalPolicy slave_policy(const cci::ExecutionProbabilities& probs,
                         const LocalConfig& cfg, double h, double residual);

// As above but sized from the CCI model; bits == 0 yields an empty
// feasible policy with zero energy.
LocalPolicy slave_policy(const cci::CciModel& model, const LocalConfig& cfg,
                         double bits, double h, double residual);

// Regime, multiplier and energies without materializing frequencies.
LocalOutcome solve_outcome(const cci::ExecutionProbabilities& probs,
                           const LocalConfig& cfg, double h, double residual);

// Objective sum gamma p_k f_k^2 of an arbitrary schedule.
double average_energy(std::span<const double> probs,
                      std::span<const double> frequencies, double gamma);

// Largest violation of the cumulative harvesting constraints
//   sum_{k<=m} gamma f_k^2 <= residual + P_rx sum_{k<=m} 1/f_k
// over all prefixes m, where P_rx = upsilon P_b h. Non-positive when the
// schedule is feasible.
double max_prefix_violation(std::span<const double> frequencies,
                            double gamma, double harvested_power,
                            double residual);

/**
 * Fast evaluator for repeated solves against one set of execution
 * probabilities.
 *
 * The multiplier curve lambda -> (balance, energy_factor) does not depend
 * on the deadline, power, gain or residual, so it is tabulated once on a
 * log-spaced lambda grid together with exact derivatives, and queries
 * invert a cubic Hermite interpolant. Regime boundaries use the exact
 * sums; only the harvest-limited energy is interpolated.
 */
class LocalEnergyTable {
 public:
  explicit LocalEnergyTable(const cci::ExecutionProbabilities& probs,
                            int nodes_per_decade = 10,
                            double lambda_min = 1e-6,
                            double lambda_max = 1e4);

  LocalOutcome evaluate(const LocalConfig& cfg, double h,
                        double residual) const;

  Thresholds thresholds(const LocalConfig& cfg) const;
  std::int64_t cycles() const { return cycles_; }
  double data_bits() const { return data_bits_; }

 private:
  struct Node {
    double u;  // ln(lambda)
    double balance;
    double d_balance;  // with respect to u
    double energy;
    double d_energy;
  };

  double energy_for_balance(double target, double* lambda) const;

  std::int64_t cycles_ = 0;
  double data_bits_ = 0.0;
  double n_cubed_ = 0.0;
  double balance_zero_ = 0.0;
  double energy_zero_ = 0.0;
  double d_balance_zero_ = 0.0;  // with respect to lambda
  double d_energy_zero_ = 0.0;
  double energy_unbounded_ = 0.0;
  double d_energy_unbounded_ = 0.0;  // with respect to 1 / lambda
  std::vector<Node> nodes_;
};

}  // namespace wpmcc::local

#endif  // WPMCC_LOCAL_COMPUTING_HPP_
