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

#include "wpmcc/mode_selection.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "wpmcc/log.hpp"

namespace wpmcc::mode {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kLocal:
      return "local";
    case Mode::kOffload:
      return "offload";
    case Mode::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

Mode choose(bool local_feasible, double local_savings, bool offload_feasible,
            double offload_savings) {
  if (local_feasible && offload_feasible) {
    return offload_savings - local_savings >= 0.0 ? Mode::kOffload
                                                  : Mode::kLocal;
  }
  if (offload_feasible) return Mode::kOffload;
  if (local_feasible) return Mode::kLocal;
  return Mode::kInfeasible;
}

ModeDecision select(local::LocalPolicy local, offload::OffloadPolicy offload) {
  ModeDecision out;
  out.mode = choose(local.feasible, local.savings, offload.feasible,
                    offload.savings);
  out.delta_savings = local.feasible && offload.feasible
                          ? offload.savings - local.savings
                          : std::numeric_limits<double>::quiet_NaN();
  out.local = std::move(local);
  out.offload = offload;
  return out;
}

double deadline_threshold(double local_energy, double deadline, double y,
                          double bits) {
  // sqrt(gamma theta / (y L)) with gamma theta = E_loc T^2.
  return deadline * std::sqrt(local_energy / (y * bits));
}

double power_threshold(double local_energy, double deadline, double gamma,
                       double h, const offload::OffloadConfig& cfg,
                       double bits) {
  const double theta = local_energy * deadline * deadline / gamma;
  const double a3 = cfg.bandwidth * h * gamma * theta /
                    (std::numbers::e * deadline * deadline * cfg.noise_var *
                     bits * std::numbers::ln2);
  if (!(a3 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return cfg.noise_var / (cfg.upsilon * h * h) *
         (1.0 + std::numbers::e * a3 * std::log(a3));
}

std::size_t count_switch_reversals(std::span<const double> delta_savings) {
  std::size_t reversals = 0;
  bool switched = false;
  for (const double d : delta_savings) {
    if (std::isnan(d)) continue;
    if (d < 0.0) {
      switched = true;
    } else if (switched) {
      ++reversals;
      switched = false;
    }
  }
  if (reversals > 0) {
    log::logger().warn(
        "mode switch along the deadline grid is not monotone ({} reversals)",
        reversals);
  }
  return reversals;
}

}  // namespace wpmcc::mode
