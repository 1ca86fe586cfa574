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

#ifndef WPMCC_EXPERIMENT_CONFIG_HPP_
#define WPMCC_EXPERIMENT_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wpmcc/cci_model.hpp"
#include "wpmcc/channel_model.hpp"
#include "wpmcc/data_allocation.hpp"
#include "wpmcc/local_computing.hpp"
#include "wpmcc/offloading.hpp"

namespace wpmcc::sim {

enum class PolicyKind {
  kLocalOpt,
  kLocalEqualFreq,
  kOffloadOpt,
  kOffloadEqualTime,
  kMms,
  kDynSubopt,
  kDynDp,
  kDynEqual,
};

const char* to_string(PolicyKind policy);
std::optional<PolicyKind> parse_policy(std::string_view name);
bool is_dynamic(PolicyKind policy);

enum class SweepVariable { kDeadline, kBsPower };

const char* to_string(SweepVariable variable);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kDeadline;
  std::vector<double> grid = {0.035};
};

struct CciSpec {
  cci::CciKind kind = cci::CciKind::kGamma;
  double shape = 4.0;
  double scale = 200.0;  // cycles per bit; the constant for deterministic
  double epsilon = 0.05;

  cci::CciModel model() const;
};

// Defaults are the reference system: 1000 bits, 35 ms, one block,
// P_b = 0.5 W, B = 1 MHz, sigma^2 = 1e-9 W, upsilon = 0.8,
// gamma = 1e-28, Gamma(4, 200) cycles per bit, Rayleigh fading with
// Omega = 5e-6 over two antennas.
struct ExperimentConfig {
  double data_bits = 1000.0;
  double deadline = 0.035;
  int blocks = 1;
  double bs_power = 0.5;
  double bandwidth = 1e6;
  double noise_var = 1e-9;
  double upsilon = 0.8;
  double gamma = 1e-28;
  CciSpec cci;
  channel::RicianParams channel;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  SweepSpec sweep;
  std::vector<PolicyKind> policies = {PolicyKind::kLocalOpt,
                                      PolicyKind::kOffloadOpt,
                                      PolicyKind::kMms};
  alloc::DpGrid dp;

  // Throws ConfigError on any violated invariant.
  void validate() const;

  double block_duration() const { return deadline / blocks; }
  // Copy with the sweep variable set to `value`.
  ExperimentConfig at(double value) const;
  // Solver configs for a given computing window (T or T_c).
  local::LocalConfig local_config(double window) const;
  offload::OffloadConfig offload_config(double window) const;
};

// Keys mirror the field names; unknown keys raise ConfigError. The channel
// draws from the top-level seed.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace wpmcc::sim

#endif  // WPMCC_EXPERIMENT_CONFIG_HPP_
