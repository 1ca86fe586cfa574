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

#include "wpmcc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>

#include "CLI11.hpp"
#include "wpmcc/data_allocation.hpp"
#include "wpmcc/errors.hpp"
#include "wpmcc/experiment_config.hpp"
#include "wpmcc/local_computing.hpp"
#include "wpmcc/mode_selection.hpp"
#include "wpmcc/offloading.hpp"
#include "wpmcc/simulation.hpp"

namespace wpmcc::cli {
namespace {

using sim::ExperimentConfig;

// Flags shared by every subcommand. Unset flags fall back to the config
// file, then to the built-in reference parameters.
struct Params {
  std::string config;
  std::optional<double> data_bits;
  std::optional<double> deadline;
  std::optional<int> blocks;
  std::optional<double> bs_power;
  std::optional<double> bandwidth;
  std::optional<double> noise_var;
  std::optional<double> upsilon;
  std::optional<double> gamma;
  std::optional<double> cci_shape;
  std::optional<double> cci_scale;
  std::optional<double> epsilon;
  std::optional<int> antennas;
  std::optional<double> rician_k;
  std::optional<double> avg_power;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON experiment config");
    app->add_option("--data-bits", data_bits, "input data size L, bits");
    app->add_option("--deadline", deadline, "deadline T, s");
    app->add_option("--blocks", blocks, "fading blocks M");
    app->add_option("--bs-power", bs_power, "BS transmission power P_b, W");
    app->add_option("--bandwidth", bandwidth, "bandwidth B, Hz");
    app->add_option("--noise-var", noise_var, "noise variance, W");
    app->add_option("--upsilon", upsilon, "energy conversion efficiency");
    app->add_option("--gamma", gamma, "switched-capacitance constant");
    app->add_option("--cci-shape", cci_shape, "Gamma shape of cycles/bit");
    app->add_option("--cci-scale", cci_scale, "Gamma scale of cycles/bit");
    app->add_option("--epsilon", epsilon, "cycle-cap tail probability");
    app->add_option("--antennas", antennas, "BS antennas N_t");
    app->add_option("--rician-k", rician_k, "Rician factor K");
    app->add_option("--avg-power", avg_power, "average fading gain Omega");
    app->add_option("--seed", seed, "RNG seed (overrides config)");
    app->add_option("--trials", trials, "Monte-Carlo trials (overrides config)");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg =
        config.empty() ? ExperimentConfig{} : sim::load_config(config);
    auto set = [](auto& dst, const auto& src) {
      if (src) dst = *src;
    };
    set(cfg.data_bits, data_bits);
    set(cfg.deadline, deadline);
    set(cfg.blocks, blocks);
    set(cfg.bs_power, bs_power);
    set(cfg.bandwidth, bandwidth);
    set(cfg.noise_var, noise_var);
    set(cfg.upsilon, upsilon);
    set(cfg.gamma, gamma);
    set(cfg.cci.shape, cci_shape);
    set(cfg.cci.scale, cci_scale);
    set(cfg.cci.epsilon, epsilon);
    set(cfg.channel.n_antennas, antennas);
    set(cfg.channel.rician_k, rician_k);
    set(cfg.channel.avg_power, avg_power);
    set(cfg.seed, seed);
    set(cfg.trials, trials);
    cfg.channel.seed = cfg.seed;
    cfg.validate();
    return cfg;
  }
};

void Line(std::ostream& out, const char* key, double value) {
  out << key << ' ' << format_value(value) << '\n';
}

void Line(std::ostream& out, const char* key, const std::string& value) {
  out << key << ' ' << value << '\n';
}

int StaticLocal(const ExperimentConfig& cfg, double h, std::ostream& out) {
  const cci::ExecutionProbabilities probs =
      cci::execution_probabilities(cfg.cci.model(), cfg.data_bits);
  const local::LocalConfig lcfg = cfg.local_config(cfg.deadline);
  const local::Thresholds th = local::thresholds(probs, lcfg);
  const local::LocalPolicy p = local::static_policy(probs, lcfg, h);
  Line(out, "mode", "local");
  Line(out, "feasible", p.feasible ? "1" : "0");
  Line(out, "regime", local::to_string(p.regime));
  Line(out, "cycles", static_cast<double>(probs.cycles()));
  Line(out, "threshold_a_w", th.a);
  Line(out, "threshold_a_prime_w", th.a_prime);
  Line(out, "received_power_w", cfg.bs_power * h);
  if (!p.feasible) return kExitInfeasible;
  Line(out, "lambda", p.lambda_unbounded ? "inf" : format_value(p.lambda));
  Line(out, "avg_energy_j", p.avg_energy);
  Line(out, "savings_j", p.savings);
  Line(out, "f_first_hz", p.frequencies.front());
  Line(out, "f_last_hz", p.frequencies.back());
  return kExitOk;
}

int StaticOffload(const ExperimentConfig& cfg, double h, std::ostream& out) {
  const offload::OffloadConfig ocfg = cfg.offload_config(cfg.deadline);
  const offload::OffloadPolicy p =
      offload::static_policy(ocfg, h, cfg.data_bits);
  Line(out, "mode", "offload");
  Line(out, "feasible", p.feasible ? "1" : "0");
  Line(out, "regime", offload::to_string(p.regime));
  Line(out, "threshold_a2", offload::threshold_a2(ocfg, cfg.data_bits));
  Line(out, "pb_h2", cfg.bs_power * h * h);
  if (!p.feasible) return kExitInfeasible;
  Line(out, "duration_s", p.duration);
  Line(out, "savings_j", p.savings);
  return kExitOk;
}

int ModeSelect(const ExperimentConfig& cfg, double h, std::ostream& out) {
  const cci::ExecutionProbabilities probs =
      cci::execution_probabilities(cfg.cci.model(), cfg.data_bits);
  const local::LocalPolicy lp =
      local::static_policy(probs, cfg.local_config(cfg.deadline), h);
  const offload::OffloadPolicy op = offload::static_policy(
      cfg.offload_config(cfg.deadline), h, cfg.data_bits);
  const mode::ModeDecision d = mode::select(lp, op);
  Line(out, "mode", mode::to_string(d.mode));
  Line(out, "local_feasible", lp.feasible ? "1" : "0");
  Line(out, "offload_feasible", op.feasible ? "1" : "0");
  if (lp.feasible) Line(out, "local_savings_j", lp.savings);
  if (op.feasible) Line(out, "offload_savings_j", op.savings);
  if (lp.feasible && op.feasible) Line(out, "delta_savings_j", d.delta_savings);
  return d.mode == mode::Mode::kInfeasible ? kExitInfeasible : kExitOk;
}

std::string JoinValues(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ',';
    s += format_value(values[i]);
  }
  return s;
}

int Dynamic(ExperimentConfig cfg, const std::vector<double>& gains,
            const std::string& policy, std::ostream& out) {
  cfg.blocks = static_cast<int>(gains.size());
  channel::BlockGains bg;
  bg.gains = gains;
  bg.block_duration = cfg.block_duration();
  const double t_c = bg.block_duration;
  const local::LocalConfig lcfg = cfg.local_config(t_c);
  const offload::OffloadConfig ocfg = cfg.offload_config(t_c);
  const cci::CciModel model = cfg.cci.model();
  double harvest = 0.0;
  for (const double h : gains) {
    harvest += cfg.upsilon * cfg.bs_power * h * t_c;
  }

  bool local_ok = false;
  bool off_ok = false;
  double local_savings = 0.0;
  double off_savings = 0.0;
  std::vector<double> local_alloc;
  std::vector<double> off_alloc;
  std::vector<double> residuals;
  if (policy == "equal") {
    local_alloc = alloc::allocate_equal(cfg.data_bits, cfg.blocks);
    off_alloc = local_alloc;
    const alloc::RealizedPlan lp =
        alloc::realize_local_plan(local_alloc, bg, lcfg, model);
    const alloc::RealizedPlan op =
        alloc::realize_offload_plan(off_alloc, bg, ocfg);
    local_ok = lp.feasible;
    local_savings = harvest - lp.total;
    off_ok = op.feasible;
    off_savings = op.total;
  } else {
    const alloc::AllocationPlan lp = alloc::allocate_local(
        cfg.data_bits, bg, lcfg,
        alloc::LocalWorkload::from_model(model, cfg.data_bits));
    const alloc::AllocationPlan op =
        policy == "dp"
            ? alloc::allocate_offload_dp(cfg.data_bits, bg, ocfg, cfg.dp)
            : alloc::allocate_offload_greedy(cfg.data_bits, bg, ocfg);
    local_ok = lp.feasible;
    local_savings = harvest - lp.total_objective;
    local_alloc = lp.allocations;
    residuals = lp.residual_estimates;
    off_ok = op.feasible;
    off_savings = op.total_objective;
    off_alloc = op.allocations;
  }
  const mode::Mode m =
      mode::choose(local_ok, local_savings, off_ok, off_savings);
  Line(out, "policy", policy);
  Line(out, "mode", mode::to_string(m));
  Line(out, "block_duration_s", t_c);
  Line(out, "local_feasible", local_ok ? "1" : "0");
  if (local_ok) {
    Line(out, "local_allocations", JoinValues(local_alloc));
    if (!residuals.empty()) {
      Line(out, "local_residual_estimates", JoinValues(residuals));
    }
    Line(out, "local_savings_j", local_savings);
  }
  Line(out, "offload_feasible", off_ok ? "1" : "0");
  if (off_ok) {
    Line(out, "offload_allocations", JoinValues(off_alloc));
    Line(out, "offload_savings_j", off_savings);
  }
  return m == mode::Mode::kInfeasible ? kExitInfeasible : kExitOk;
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Wirelessly powered mobile computing policies and simulator",
               "wpmcc"};
  // "--h" names the channel gain, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Params params;
  double h = 0.0;
  std::vector<double> gains;
  std::string dyn_policy = "subopt";
  std::string out_path;
  int threads = 0;

  auto* local_cmd =
      app.add_subcommand("static-local", "optimal local computing for gain h");
  auto* off_cmd =
      app.add_subcommand("static-offload", "optimal offloading for gain h");
  auto* mode_cmd =
      app.add_subcommand("mode-select", "choose local vs offload for gain h");
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Monte-Carlo sweep, CSV output");
  auto* dyn_cmd = app.add_subcommand(
      "dynamic", "data allocation over fading blocks with known gains");
  for (auto* cmd : {local_cmd, off_cmd, mode_cmd, sweep_cmd, dyn_cmd}) {
    params.attach(cmd);
  }
  for (auto* cmd : {local_cmd, off_cmd, mode_cmd}) {
    cmd->add_option("--h,--gain", h, "channel power gain h")
        ->required()
        ->check(CLI::NonNegativeNumber);
  }
  sweep_cmd->add_option("--out", out_path, "CSV path (default: stdout)");
  sweep_cmd->add_option("--threads", threads, "worker threads, 0 = auto")
      ->check(CLI::NonNegativeNumber);
  dyn_cmd->add_option("--gains", gains, "comma-separated block gains")
      ->required()
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  dyn_cmd->add_option("--policy", dyn_policy, "subopt, dp or equal")
      ->check(CLI::IsMember({"subopt", "dp", "equal"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitConfig;
  }

  try {
    const ExperimentConfig cfg = params.resolve();
    if (local_cmd->parsed()) return StaticLocal(cfg, h, out);
    if (off_cmd->parsed()) return StaticOffload(cfg, h, out);
    if (mode_cmd->parsed()) return ModeSelect(cfg, h, out);
    if (dyn_cmd->parsed()) return Dynamic(cfg, gains, dyn_policy, out);
    const std::vector<sim::SweepRow> rows = sim::run_sweep(cfg, threads);
    if (out_path.empty()) {
      sim::write_csv(out, rows);
    } else {
      sim::write_csv(out_path, rows);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace wpmcc::cli
