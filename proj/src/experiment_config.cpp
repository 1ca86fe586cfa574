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

#include "wpmcc/experiment_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>
#include <type_traits>

#include "wpmcc/errors.hpp"

namespace wpmcc::sim {
namespace {

using nlohmann::json;

struct PolicyName {
  PolicyKind kind;
  std::string_view name;
};

constexpr std::array<PolicyName, 8> kPolicyNames = {{
    {PolicyKind::kLocalOpt, "local-opt"},
    {PolicyKind::kLocalEqualFreq, "local-equal-freq"},
    {PolicyKind::kOffloadOpt, "offload-opt"},
    {PolicyKind::kOffloadEqualTime, "offload-equal-time"},
    {PolicyKind::kMms, "mms"},
    {PolicyKind::kDynSubopt, "dyn-subopt"},
    {PolicyKind::kDynDp, "dyn-dp"},
    {PolicyKind::kDynEqual, "dyn-equal"},
}};

void RequireObject(const json& j, std::string_view where,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + ": expected a JSON object");
  }
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() +
                        "'");
    }
  }
}

void ReadNumber(const json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("'") + key + "' must be a number");
  }
  out = v.get<double>();
}

template <class Int>
void ReadInteger(const json& j, const char* key, Int& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ConfigError(std::string("'") + key + "' must be an integer");
  }
  if constexpr (std::is_unsigned_v<Int>) {
    if (v.is_number_unsigned()) {
      out = v.get<Int>();
      return;
    }
    if (v.get<std::int64_t>() < 0) {
      throw ConfigError(std::string("'") + key + "' must be >= 0");
    }
  }
  out = v.get<Int>();
}

std::string ReadString(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) {
    throw ConfigError(std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

const char* to_string(PolicyKind policy) {
  for (const auto& p : kPolicyNames) {
    if (p.kind == policy) return p.name.data();
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (const auto& p : kPolicyNames) {
    if (p.name == name) return p.kind;
  }
  return std::nullopt;
}

bool is_dynamic(PolicyKind policy) {
  return policy == PolicyKind::kDynSubopt || policy == PolicyKind::kDynDp ||
         policy == PolicyKind::kDynEqual;
}

const char* to_string(SweepVariable variable) {
  return variable == SweepVariable::kDeadline ? "T" : "P_b";
}

cci::CciModel CciSpec::model() const {
  return kind == cci::CciKind::kGamma
             ? cci::CciModel::gamma(shape, scale, epsilon)
             : cci::CciModel::deterministic(scale, epsilon);
}

void ExperimentConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(name) + " must be a positive number");
    }
  };
  positive(data_bits, "data_bits");
  positive(deadline, "deadline");
  positive(bs_power, "bs_power");
  positive(bandwidth, "bandwidth");
  positive(noise_var, "noise_var");
  positive(gamma, "gamma");
  if (!(upsilon > 0.0 && upsilon <= 1.0)) {
    throw ConfigError("upsilon must lie in (0, 1]");
  }
  if (blocks < 1) throw ConfigError("blocks must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (sweep.grid.empty()) throw ConfigError("sweep.grid must not be empty");
  for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
    positive(sweep.grid[i], "sweep.grid values");
    if (i > 0 && !(sweep.grid[i] > sweep.grid[i - 1])) {
      throw ConfigError("sweep.grid must be strictly increasing");
    }
  }
  if (policies.empty()) throw ConfigError("policies must not be empty");
  if (dp.energy_levels < 2 || dp.data_levels < 2 ||
      dp.data_levels > 65535) {
    throw ConfigError("dp grid sizes must be >= 2 (data_levels <= 65535)");
  }
  try {
    (void)cci.model();
    channel.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig ExperimentConfig::at(double value) const {
  ExperimentConfig out = *this;
  if (sweep.variable == SweepVariable::kDeadline) {
    out.deadline = value;
  } else {
    out.bs_power = value;
  }
  return out;
}

local::LocalConfig ExperimentConfig::local_config(double window) const {
  return {gamma, upsilon, bs_power, window};
}

offload::OffloadConfig ExperimentConfig::offload_config(double window) const {
  return {bandwidth, noise_var, upsilon, bs_power, window};
}

ExperimentConfig parse_config(const json& doc) {
  RequireObject(doc, "config",
                {"data_bits", "deadline", "blocks", "bs_power", "bandwidth",
                 "noise_var", "upsilon", "gamma", "cci", "channel", "trials",
                 "seed", "sweep", "policies", "dp"});
  ExperimentConfig cfg;
  try {
    ReadNumber(doc, "data_bits", cfg.data_bits);
    ReadNumber(doc, "deadline", cfg.deadline);
    ReadInteger(doc, "blocks", cfg.blocks);
    ReadNumber(doc, "bs_power", cfg.bs_power);
    ReadNumber(doc, "bandwidth", cfg.bandwidth);
    ReadNumber(doc, "noise_var", cfg.noise_var);
    ReadNumber(doc, "upsilon", cfg.upsilon);
    ReadNumber(doc, "gamma", cfg.gamma);
    ReadInteger(doc, "trials", cfg.trials);
    ReadInteger(doc, "seed", cfg.seed);

    if (doc.contains("cci")) {
      const json& c = doc.at("cci");
      RequireObject(c, "cci", {"kind", "shape", "scale", "epsilon"});
      if (c.contains("kind")) {
        const std::string kind = ReadString(c, "kind");
        if (kind == "gamma") {
          cfg.cci.kind = cci::CciKind::kGamma;
        } else if (kind == "deterministic") {
          cfg.cci.kind = cci::CciKind::kDeterministic;
        } else {
          throw ConfigError("cci.kind must be 'gamma' or 'deterministic'");
        }
      }
      ReadNumber(c, "shape", cfg.cci.shape);
      ReadNumber(c, "scale", cfg.cci.scale);
      ReadNumber(c, "epsilon", cfg.cci.epsilon);
    }
    if (doc.contains("channel")) {
      const json& c = doc.at("channel");
      RequireObject(c, "channel", {"n_antennas", "rician_k", "avg_power"});
      ReadInteger(c, "n_antennas", cfg.channel.n_antennas);
      ReadNumber(c, "rician_k", cfg.channel.rician_k);
      ReadNumber(c, "avg_power", cfg.channel.avg_power);
    }
    if (doc.contains("sweep")) {
      const json& s = doc.at("sweep");
      RequireObject(s, "sweep", {"variable", "grid"});
      if (s.contains("variable")) {
        const std::string v = ReadString(s, "variable");
        if (v == "T") {
          cfg.sweep.variable = SweepVariable::kDeadline;
        } else if (v == "P_b") {
          cfg.sweep.variable = SweepVariable::kBsPower;
        } else {
          throw ConfigError("sweep.variable must be 'T' or 'P_b'");
        }
      }
      if (s.contains("grid")) {
        const json& g = s.at("grid");
        if (!g.is_array()) throw ConfigError("sweep.grid must be an array");
        cfg.sweep.grid.clear();
        for (const json& v : g) {
          if (!v.is_number()) {
            throw ConfigError("sweep.grid entries must be numbers");
          }
          cfg.sweep.grid.push_back(v.get<double>());
        }
      }
    }
    if (doc.contains("policies")) {
      const json& p = doc.at("policies");
      if (!p.is_array()) throw ConfigError("policies must be an array");
      cfg.policies.clear();
      for (const json& v : p) {
        if (!v.is_string()) throw ConfigError("policies must be strings");
        const auto kind = parse_policy(v.get<std::string>());
        if (!kind) {
          throw ConfigError("unknown policy '" + v.get<std::string>() + "'");
        }
        if (std::find(cfg.policies.begin(), cfg.policies.end(), *kind) !=
            cfg.policies.end()) {
          throw ConfigError("duplicate policy '" + v.get<std::string>() +
                            "'");
        }
        cfg.policies.push_back(*kind);
      }
    }
    if (doc.contains("dp")) {
      const json& d = doc.at("dp");
      RequireObject(d, "dp", {"energy_levels", "data_levels"});
      ReadInteger(d, "energy_levels", cfg.dp.energy_levels);
      ReadInteger(d, "data_levels", cfg.dp.data_levels);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.channel.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
  json policies = json::array();
  for (const PolicyKind p : cfg.policies) policies.push_back(to_string(p));
  return {
      {"data_bits", cfg.data_bits},
      {"deadline", cfg.deadline},
      {"blocks", cfg.blocks},
      {"bs_power", cfg.bs_power},
      {"bandwidth", cfg.bandwidth},
      {"noise_var", cfg.noise_var},
      {"upsilon", cfg.upsilon},
      {"gamma", cfg.gamma},
      {"cci",
       {{"kind", cfg.cci.kind == cci::CciKind::kGamma ? "gamma"
                                                       : "deterministic"},
        {"shape", cfg.cci.shape},
        {"scale", cfg.cci.scale},
        {"epsilon", cfg.cci.epsilon}}},
      {"channel",
       {{"n_antennas", cfg.channel.n_antennas},
        {"rician_k", cfg.channel.rician_k},
        {"avg_power", cfg.channel.avg_power}}},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"sweep",
       {{"variable", to_string(cfg.sweep.variable)}, {"grid", cfg.sweep.grid}}},
      {"policies", policies},
      {"dp",
       {{"energy_levels", cfg.dp.energy_levels},
        {"data_levels", cfg.dp.data_levels}}},
  };
}

}  // namespace wpmcc::sim
