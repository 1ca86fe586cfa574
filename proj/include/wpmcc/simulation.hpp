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

// Monte-Carlo estimation of the computing probability: the fraction of
// channel and CCI realizations for which a policy finishes the data by the
// deadline on harvested energy.

#ifndef WPMCC_SIMULATION_HPP_
#define WPMCC_SIMULATION_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wpmcc/cci_model.hpp"
#include "wpmcc/channel_model.hpp"
#include "wpmcc/data_allocation.hpp"
#include "wpmcc/experiment_config.hpp"
#include "wpmcc/local_computing.hpp"

namespace wpmcc::sim {

// Random inputs of one trial: M block gains, then M CCI draws.
struct TrialDraws {
  channel::BlockGains gains;
  std::vector<double> cycles_per_bit;
};

// Trial `index` always reads stream `index` of the configured seed, so
// every grid point and policy sees the same realizations.
TrialDraws draw_trial(const ExperimentConfig& cfg, std::uint64_t index);

struct TrialOutcome {
  bool feasible = false;  // the policy found an admissible schedule
  bool success = false;   // ... and the realized cycles fit the budget
  double savings = 0.0;   // meaningful only when feasible
};

struct SweepRow {
  double sweep_value = 0.0;
  PolicyKind policy = PolicyKind::kLocalOpt;
  double p_c = 0.0;
  double ci = 0.0;  // 95% normal-approximation half-width
  double mean_savings = 0.0;  // over feasible trials; NaN if none
  std::int64_t trials = 0;
  std::int64_t successes = 0;
};

/**
 * Per-configuration state shared by all trials: execution probabilities,
 * energy tables and allocation workloads. None of it depends on the
 * deadline or the BS power, so one context serves a whole sweep.
 * Immutable after construction; safe to share across threads.
 */
class SimulationContext {
 public:
  explicit SimulationContext(const ExperimentConfig& cfg);

  // `point` is the base config with the sweep variable applied.
  TrialOutcome run_trial(PolicyKind policy, const ExperimentConfig& point,
                         const TrialDraws& draws) const;

  std::int64_t cycles() const { return cycles_; }
  std::int64_t n0() const { return n0_; }

 private:
  struct LocalStatic {
    bool feasible = false;
    double savings = 0.0;
  };

  TrialOutcome local_trial(bool equal_freq, const ExperimentConfig& point,
                           const TrialDraws& draws) const;
  TrialOutcome offload_trial(bool equal_time, const ExperimentConfig& point,
                             const TrialDraws& draws) const;
  TrialOutcome mms_trial(const ExperimentConfig& point,
                         const TrialDraws& draws) const;
  TrialOutcome dynamic_trial(PolicyKind policy, const ExperimentConfig& point,
                             const TrialDraws& draws) const;

  std::int64_t cycles_ = 0;
  std::int64_t n0_ = 0;
  double sum_probs_ = 0.0;
  std::unique_ptr<local::LocalEnergyTable> table_;
  std::unique_ptr<local::LocalEnergyTable> block_table_;
  std::optional<alloc::LocalWorkload> workload_;
};

// All configured policies at one grid value.
std::vector<SweepRow> estimate_point(const ExperimentConfig& cfg,
                                     const SimulationContext& ctx,
                                     double value, int threads);

SweepRow estimate(PolicyKind policy, const ExperimentConfig& cfg,
                  const SimulationContext& ctx, double value, int threads);

// Rows for every grid value times policy, in grid-then-policy order.
// Results do not depend on `threads` (0 = hardware concurrency).
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int threads);

inline constexpr const char* kCsvHeader =
    "sweep_value,policy,p_c,ci,mean_savings_j,trials";

std::string format_row(const SweepRow& row);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// Throws IoError if the file cannot be written.
void write_csv(const std::filesystem::path& path,
               const std::vector<SweepRow>& rows);

}  // namespace wpmcc::sim

#endif  // WPMCC_SIMULATION_HPP_
