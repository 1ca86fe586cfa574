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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wpmcc/cli.hpp"
#include "wpmcc/offloading.hpp"
#include "wpmcc/simulation.hpp"

using namespace wpmcc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> Parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string key, value;
  while (in >> key >> value) kv[key] = value;
  return kv;
}

}  // namespace

TEST_CASE("format_value round-trips doubles") {
  for (const double v : {0.1, 1.0 / 3.0, 3.04e-11, -7.5, 1e300}) {
    CHECK(std::stod(cli::format_value(v)) == v);
  }
}

TEST_CASE("static-offload prints library values") {
  const Run r = Invoke({"static-offload", "--h", "1e-5"});
  CHECK(r.code == cli::kExitOk);
  const auto kv = Parse(r.out);
  const offload::OffloadConfig cfg;
  const auto p = offload::static_policy(cfg, 1e-5, 1000.0);
  CHECK(kv.at("mode") == "offload");
  CHECK(kv.at("feasible") == "1");
  CHECK(kv.at("duration_s") == cli::format_value(p.duration));
  CHECK(kv.at("savings_j") == cli::format_value(p.savings));
  CHECK(kv.at("threshold_a2") == cli::format_value(offload::threshold_a2(cfg, 1000.0)));
}

TEST_CASE("exit codes") {
  CHECK(Invoke({"static-offload", "--h", "1e-9"}).code == cli::kExitInfeasible);
  CHECK(Invoke({"static-local", "--h", "1e-13", "--data-bits", "10"}).code ==
        cli::kExitInfeasible);
  CHECK(Invoke({"static-local", "--h", "1e-3", "--data-bits", "10"}).code == cli::kExitOk);
  CHECK(Invoke({"mode-select", "--h", "1e-4", "--data-bits", "10"}).code == cli::kExitOk);
  CHECK(Invoke({}).code == cli::kExitConfig);
  CHECK(Invoke({"bogus"}).code == cli::kExitConfig);
  CHECK(Invoke({"static-offload"}).code == cli::kExitConfig);
  CHECK(Invoke({"static-offload", "--h", "-1"}).code == cli::kExitConfig);
  CHECK(Invoke({"static-offload", "--h", "1e-5", "--upsilon", "2"}).code ==
        cli::kExitConfig);
  CHECK(Invoke({"static-offload", "--h", "1e-5", "--config", "/nonexistent.json"})
            .code == cli::kExitConfig);
  CHECK(Invoke({"dynamic", "--gains", "1e-5,2e-5", "--policy", "best"}).code ==
        cli::kExitConfig);
  const Run help = Invoke({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("static-local") != std::string::npos);
}

TEST_CASE("dynamic subcommand") {
  const Run r = Invoke({"dynamic", "--gains", "1e-4,1e-4", "--data-bits", "200",
                        "--deadline", "0.02", "--policy", "subopt"});
  CHECK(r.code == cli::kExitOk);
  const auto kv = Parse(r.out);
  CHECK(kv.at("policy") == "subopt");
  CHECK(kv.at("block_duration_s") == cli::format_value(0.01));
  CHECK(kv.at("offload_feasible") == "1");
}

TEST_CASE("sweep writes CSV") {
  const auto path = std::filesystem::temp_directory_path() / "wpmcc_cli_sweep.csv";
  const auto cfg_path = std::filesystem::temp_directory_path() / "wpmcc_cli_cfg.json";
  {
    std::ofstream c(cfg_path);
    c << R"({"trials": 50, "policies": ["offload-opt"], "sweep": {"grid": [0.02, 0.03]}})";
  }
  const Run r = Invoke({"sweep", "--config", cfg_path.string(), "--out", path.string(),
                        "--threads", "2"});
  CHECK(r.code == cli::kExitOk);
  std::ifstream in(path);
  std::string header, a, b, extra;
  std::getline(in, header);
  std::getline(in, a);
  std::getline(in, b);
  CHECK(header == sim::kCsvHeader);
  CHECK(a.rfind("0.02,offload-opt,", 0) == 0);
  CHECK(b.rfind("0.03,offload-opt,", 0) == 0);
  CHECK_FALSE(std::getline(in, extra));

  const Run stdout_run = Invoke({"sweep", "--config", cfg_path.string()});
  CHECK(stdout_run.out.rfind(sim::kCsvHeader, 0) == 0);
  std::filesystem::remove(path);
  std::filesystem::remove(cfg_path);
}
