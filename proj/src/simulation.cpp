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

#include "wpmcc/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "wpmcc/compensated_sum.hpp"
#include "wpmcc/errors.hpp"
#include "wpmcc/log.hpp"
#include "wpmcc/mode_selection.hpp"
#include "wpmcc/offloading.hpp"

namespace wpmcc::sim {
namespace {

constexpr std::uint64_t kChunk = 32;

bool Needs(const ExperimentConfig& cfg, std::initializer_list<PolicyKind> any) {
  return std::any_of(cfg.policies.begin(), cfg.policies.end(),
                     [&](PolicyKind p) {
                       return std::find(any.begin(), any.end(), p) != any.end();
                     });
}

int ResolveThreads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, count) on `threads` workers. Work is handed
// out in chunks; each index is processed exactly once.
template <class Body>
void ParallelFor(std::uint64_t count, int threads, const Body& body) {
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(ResolveThreads(threads)),
                              (count + kChunk - 1) / kChunk));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    try {
      for (;;) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= count) return;
        const std::uint64_t end = std::min(count, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

double Harvest(const ExperimentConfig& point, const TrialDraws& draws) {
  double sum = 0.0;
  for (const double h : draws.gains.gains) sum += h;
  return point.upsilon * point.bs_power * point.block_duration() * sum;
}

// Every block that received data stays within N0 cycles per bit.
bool CyclesFit(const std::vector<double>& allocations,
               const std::vector<double>& cycles_per_bit, std::int64_t n0) {
  for (std::size_t n = 0; n < allocations.size(); ++n) {
    if (allocations[n] > 0.0 &&
        cycles_per_bit[n] > static_cast<double>(n0)) {
      return false;
    }
  }
  return true;
}

TrialOutcome Pick(const TrialOutcome& local, const TrialOutcome& offload) {
  switch (mode::choose(local.feasible, local.savings, offload.feasible,
                       offload.savings)) {
    case mode::Mode::kLocal:
      return local;
    case mode::Mode::kOffload:
      return offload;
    case mode::Mode::kInfeasible:
      break;
  }
  return {};
}

SweepRow Aggregate(PolicyKind policy, double value,
                   const std::vector<TrialOutcome>& outcomes,
                   std::size_t stride, std::size_t column) {
  SweepRow row;
  row.sweep_value = value;
  row.policy = policy;
  CompensatedSum savings;
  std::int64_t feasible = 0;
  for (std::size_t i = column; i < outcomes.size(); i += stride) {
    const TrialOutcome& o = outcomes[i];
    ++row.trials;
    if (o.success) ++row.successes;
    if (o.feasible) {
      ++feasible;
      savings += o.savings;
    }
  }
  const double n = static_cast<double>(row.trials);
  row.p_c = static_cast<double>(row.successes) / n;
  row.ci = 1.96 * std::sqrt(row.p_c * (1.0 - row.p_c) / n);
  row.mean_savings = feasible > 0
                         ? savings.value() / static_cast<double>(feasible)
                         : std::numeric_limits<double>::quiet_NaN();
  return row;
}

}  // namespace

TrialDraws draw_trial(const ExperimentConfig& cfg, std::uint64_t index) {
  RngStream rng(cfg.seed, index);
  TrialDraws draws;
  draws.gains = channel::sample_block_gains(cfg.channel, cfg.blocks,
                                            cfg.block_duration(), rng);
  const cci::CciModel model = cfg.cci.model();
  draws.cycles_per_bit.reserve(static_cast<std::size_t>(cfg.blocks));
  for (int n = 0; n < cfg.blocks; ++n) {
    draws.cycles_per_bit.push_back(model.sample(rng));
  }
  return draws;
}

SimulationContext::SimulationContext(const ExperimentConfig& cfg) {
  cfg.validate();
  const cci::CciModel model = cfg.cci.model();
  n0_ = cci::compute_n0(model);
  cycles_ = cci::cycle_budget(cfg.data_bits, n0_);
  if (Needs(cfg, {PolicyKind::kLocalOpt, PolicyKind::kLocalEqualFreq,
                  PolicyKind::kMms})) {
    const cci::ExecutionProbabilities probs =
        cci::execution_probabilities(model, cfg.data_bits);
    CompensatedSum s;
    for (const double p : probs.probs) s += p;
    sum_probs_ = s.value();
    log::logger().info("tabulating local energy curve over {} cycles",
                       probs.cycles());
    table_ = std::make_unique<local::LocalEnergyTable>(probs);
  }
  if (Needs(cfg, {PolicyKind::kDynSubopt, PolicyKind::kDynDp})) {
    workload_ = alloc::LocalWorkload::from_model(model, cfg.data_bits);
  }
  if (Needs(cfg, {PolicyKind::kDynEqual})) {
    const double bits = cfg.data_bits / cfg.blocks;
    block_table_ = std::make_unique<local::LocalEnergyTable>(
        cci::execution_probabilities(model, bits));
  }
}

TrialOutcome SimulationContext::local_trial(bool equal_freq,
                                            const ExperimentConfig& point,
                                            const TrialDraws& draws) const {
  const double h = draws.gains.gains.front();
  const local::LocalConfig cfg = point.local_config(point.deadline);
  const local::LocalOutcome o = table_->evaluate(cfg, h, 0.0);
  TrialOutcome out;
  out.feasible = o.feasible();
  if (!out.feasible) return out;
  if (equal_freq) {
    // All N cycles at N/T: feasible exactly when the optimal policy is.
    const double t = point.deadline;
    const double n = static_cast<double>(table_->cycles());
    out.savings = point.upsilon * point.bs_power * h * t -
                  point.gamma / (t * t) * n * n * sum_probs_;
  } else {
    out.savings = o.savings;
  }
  out.success = point.data_bits * draws.cycles_per_bit.front() <=
                static_cast<double>(cycles_);
  return out;
}

TrialOutcome SimulationContext::offload_trial(bool equal_time,
                                              const ExperimentConfig& point,
                                              const TrialDraws& draws) const {
  const double h = draws.gains.gains.front();
  const offload::OffloadConfig cfg = point.offload_config(point.deadline);
  const offload::OffloadPolicy p =
      equal_time ? offload::equal_time_policy(cfg, h, point.data_bits)
                 : offload::static_policy(cfg, h, point.data_bits);
  return {p.feasible, p.feasible, p.savings};
}

TrialOutcome SimulationContext::mms_trial(const ExperimentConfig& point,
                                          const TrialDraws& draws) const {
  return Pick(local_trial(false, point, draws),
              offload_trial(false, point, draws));
}

TrialOutcome SimulationContext::dynamic_trial(PolicyKind policy,
                                              const ExperimentConfig& point,
                                              const TrialDraws& draws) const {
  const double t_c = point.block_duration();
  const local::LocalConfig lcfg = point.local_config(t_c);
  const offload::OffloadConfig ocfg = point.offload_config(t_c);
  const double harvest = Harvest(point, draws);
  // Draws are shared across the deadline grid; only the duration moves.
  channel::BlockGains gains = draws.gains;
  gains.block_duration = t_c;

  TrialOutcome local;
  TrialOutcome off;
  if (policy == PolicyKind::kDynEqual) {
    const std::vector<double> split =
        alloc::allocate_equal(point.data_bits, point.blocks);
    const alloc::RealizedPlan lp =
        alloc::realize_local_plan(split, gains, lcfg, *block_table_);
    local.feasible = lp.feasible;
    local.savings = harvest - lp.total;
    local.success = lp.feasible && CyclesFit(split, draws.cycles_per_bit, n0_);
    const alloc::RealizedPlan op =
        alloc::realize_offload_plan(split, gains, ocfg);
    off = {op.feasible, op.feasible, op.total};
  } else {
    const alloc::AllocationPlan lp =
        alloc::allocate_local(point.data_bits, gains, lcfg, *workload_);
    local.feasible = lp.feasible;
    local.savings = harvest - lp.total_objective;
    local.success =
        lp.feasible && CyclesFit(lp.allocations, draws.cycles_per_bit, n0_);
    const alloc::AllocationPlan op =
        policy == PolicyKind::kDynDp
            ? alloc::allocate_offload_dp(point.data_bits, gains, ocfg,
                                         point.dp)
            : alloc::allocate_offload_greedy(point.data_bits, gains,
                                             ocfg);
    off = {op.feasible, op.feasible, op.total_objective};
  }
  return Pick(local, off);
}

TrialOutcome SimulationContext::run_trial(PolicyKind policy,
                                          const ExperimentConfig& point,
                                          const TrialDraws& draws) const {
  switch (policy) {
    case PolicyKind::kLocalOpt:
      return local_trial(false, point, draws);
    case PolicyKind::kLocalEqualFreq:
      return local_trial(true, point, draws);
    case PolicyKind::kOffloadOpt:
      return offload_trial(false, point, draws);
    case PolicyKind::kOffloadEqualTime:
      return offload_trial(true, point, draws);
    case PolicyKind::kMms:
      return mms_trial(point, draws);
    case PolicyKind::kDynSubopt:
    case PolicyKind::kDynDp:
    case PolicyKind::kDynEqual:
      return dynamic_trial(policy, point, draws);
  }
  return {};
}

std::vector<SweepRow> estimate_point(const ExperimentConfig& cfg,
                                     const SimulationContext& ctx,
                                     double value, int threads) {
  const ExperimentConfig point = cfg.at(value);
  const std::size_t stride = cfg.policies.size();
  const auto trials = static_cast<std::uint64_t>(cfg.trials);
  // Indexed by trial so the aggregation order never depends on scheduling.
  std::vector<TrialOutcome> outcomes(trials * stride);
  ParallelFor(trials, threads, [&](std::uint64_t i) {
    const TrialDraws draws = draw_trial(cfg, i);
    for (std::size_t k = 0; k < stride; ++k) {
      outcomes[i * stride + k] = ctx.run_trial(cfg.policies[k], point, draws);
    }
  });
  std::vector<SweepRow> rows;
  rows.reserve(stride);
  for (std::size_t k = 0; k < stride; ++k) {
    rows.push_back(Aggregate(cfg.policies[k], value, outcomes, stride, k));
  }
  return rows;
}

SweepRow estimate(PolicyKind policy, const ExperimentConfig& cfg,
                  const SimulationContext& ctx, double value, int threads) {
  ExperimentConfig single = cfg;
  single.policies = {policy};
  return estimate_point(single, ctx, value, threads).front();
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int threads) {
  const SimulationContext ctx(cfg);
  std::vector<SweepRow> rows;
  for (const double value : cfg.sweep.grid) {
    log::logger().info("sweep {} = {}", to_string(cfg.sweep.variable), value);
    auto point_rows = estimate_point(cfg, ctx, value, threads);
    rows.insert(rows.end(), point_rows.begin(), point_rows.end());
  }
  return rows;
}

std::string format_row(const SweepRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.10g,%s,%.10g,%.10g,%.10g,%lld",
                row.sweep_value, to_string(row.policy), row.p_c, row.ci,
                row.mean_savings, static_cast<long long>(row.trials));
  return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) out << format_row(row) << '\n';
}

void write_csv(const std::filesystem::path& path,
               const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace wpmcc::sim
