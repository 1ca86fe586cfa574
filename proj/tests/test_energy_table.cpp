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

#include <cmath>
#include <random>

#include "doctest.h"
#include "wpmcc/cci_model.hpp"
#include "wpmcc/errors.hpp"
#include "wpmcc/local_computing.hpp"

using namespace wpmcc;

TEST_CASE("energy table agrees with the exact solver") {
  const auto probs = cci::execution_probabilities(
      cci::CciModel::gamma(4.0, 200.0, 0.05), 100.0);
  const local::LocalEnergyTable table(probs);
  CHECK(table.cycles() == probs.cycles());
  CHECK(table.data_bits() == 100.0);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const double t : {0.005, 0.01, 0.035}) {
    local::LocalConfig cfg;
    cfg.deadline = t;
    const auto exact_th = local::thresholds(probs, cfg);
    const auto table_th = table.thresholds(cfg);
    CHECK(table_th.a == doctest::Approx(exact_th.a).epsilon(1e-12));
    CHECK(table_th.a_prime == doctest::Approx(exact_th.a_prime).epsilon(1e-10));
    for (int i = 0; i < 60; ++i) {
      // Received power from 0.5 a to 2 a', residual up to a block budget.
      const double pr = exact_th.a * 0.5 +
                        (2 * exact_th.a_prime - 0.5 * exact_th.a) * u(rng);
      const double h = pr / cfg.bs_power;
      const double residual =
          i % 3 == 0 ? 0.0 : u(rng) * cfg.upsilon * exact_th.a * t;
      const auto exact = local::solve_outcome(probs, cfg, h, residual);
      const auto approx = table.evaluate(cfg, h, residual);
      REQUIRE(exact.regime == approx.regime);
      if (!exact.feasible()) continue;
      CHECK(approx.avg_energy == doctest::Approx(exact.avg_energy).epsilon(1e-5));
      CHECK(approx.savings ==
            doctest::Approx(exact.savings).epsilon(1e-5).scale(exact.avg_energy));
    }
  }
}

TEST_CASE("energy table rejects bad grids") {
  const auto probs = cci::execution_probabilities(
      cci::CciModel::gamma(4.0, 200.0, 0.05), 5.0);
  CHECK_THROWS_AS(local::LocalEnergyTable(probs, 0), DomainError);
  CHECK_THROWS_AS(local::LocalEnergyTable(probs, 10, 1.0, 0.5), DomainError);
}
