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

#include "doctest.h"
#include "wpmcc/errors.hpp"
#include "wpmcc/experiment_config.hpp"

using namespace wpmcc;
using nlohmann::json;

TEST_CASE("defaults are the reference system") {
  const auto cfg = sim::parse_config(json::object());
  CHECK(cfg.data_bits == 1000.0);
  CHECK(cfg.deadline == 0.035);
  CHECK(cfg.blocks == 1);
  CHECK(cfg.bs_power == 0.5);
  CHECK(cfg.cci.shape == 4.0);
  CHECK(cfg.cci.scale == 200.0);
  CHECK(cfg.channel.avg_power == 5e-6);
  CHECK(cfg.channel.n_antennas == 2);
}

TEST_CASE("config parsing") {
  const json doc = {
      {"data_bits", 500},
      {"blocks", 4},
      {"seed", 99},
      {"cci", {{"kind", "deterministic"}, {"scale", 300}}},
      {"channel", {{"rician_k", 10}}},
      {"sweep", {{"variable", "P_b"}, {"grid", {0.5, 1.0, 2.0}}}},
      {"policies", {"dyn-dp", "dyn-equal"}},
      {"dp", {{"energy_levels", 50}, {"data_levels", 20}}},
  };
  const auto cfg = sim::parse_config(doc);
  CHECK(cfg.data_bits == 500.0);
  CHECK(cfg.blocks == 4);
  CHECK(cfg.seed == 99);
  CHECK(cfg.channel.seed == 99);
  CHECK(cfg.cci.kind == cci::CciKind::kDeterministic);
  CHECK(cfg.channel.rician_k == 10.0);
  CHECK(cfg.sweep.variable == sim::SweepVariable::kBsPower);
  CHECK(cfg.sweep.grid.size() == 3);
  CHECK(cfg.policies ==
        std::vector<sim::PolicyKind>{sim::PolicyKind::kDynDp, sim::PolicyKind::kDynEqual});
  CHECK(cfg.dp.energy_levels == 50);
  CHECK(cfg.block_duration() == doctest::Approx(0.035 / 4));
  CHECK(cfg.at(2.0).bs_power == 2.0);
  CHECK(cfg.at(2.0).deadline == 0.035);
}

TEST_CASE("round trip through JSON") {
  const json doc = {{"data_bits", 123.5}, {"trials", 77}, {"policies", {"mms"}},
                    {"sweep", {{"grid", {0.01, 0.02}}}}};
  const auto a = sim::parse_config(doc);
  const auto b = sim::parse_config(sim::to_json(a));
  CHECK(sim::to_json(a) == sim::to_json(b));
  CHECK(b.data_bits == 123.5);
  CHECK(b.trials == 77);
}

TEST_CASE("invalid configs are rejected") {
  auto bad = [](const json& j) {
    CHECK_THROWS_AS(sim::parse_config(j), ConfigError);
  };
  bad({{"data_bit", 10}});
  bad({{"cci", {{"shape", 2}, {"extra", 1}}}});
  bad({{"data_bits", -1}});
  bad({{"data_bits", "ten"}});
  bad({{"deadline", 0}});
  bad({{"upsilon", 1.5}});
  bad({{"blocks", 0}});
  bad({{"blocks", 2.5}});
  bad({{"trials", 0}});
  bad({{"seed", -3}});
  bad({{"cci", {{"kind", "uniform"}}}});
  bad({{"cci", {{"epsilon", 1.0}}}});
  bad({{"channel", {{"n_antennas", 0}}}});
  bad({{"sweep", {{"variable", "L"}}}});
  bad({{"sweep", {{"grid", json::array()}}}});
  bad({{"sweep", {{"grid", {0.02, 0.01}}}}});
  bad({{"policies", {"best"}}});
  bad({{"policies", {"mms", "mms"}}});
  bad({{"policies", json::array()}});
  bad({{"dp", {{"data_levels", 1}}}});
  bad(json::array());
  CHECK_THROWS_AS(sim::load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("policy names") {
  for (const char* name : {"local-opt", "local-equal-freq", "offload-opt",
                           "offload-equal-time", "mms", "dyn-subopt", "dyn-dp",
                           "dyn-equal"}) {
    const auto p = sim::parse_policy(name);
    REQUIRE(p.has_value());
    CHECK(std::string(sim::to_string(*p)) == name);
  }
  CHECK_FALSE(sim::parse_policy("local").has_value());
  CHECK(sim::is_dynamic(sim::PolicyKind::kDynDp));
  CHECK_FALSE(sim::is_dynamic(sim::PolicyKind::kMms));
}
