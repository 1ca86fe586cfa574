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

#ifndef WPMCC_MODE_SELECTION_HPP_
#define WPMCC_MODE_SELECTION_HPP_

#include <cstddef>
#include <span>

#include "wpmcc/local_computing.hpp"
#include "wpmcc/offloading.hpp"

namespace wpmcc::mode {

enum class Mode { kLocal, kOffload, kInfeasible };

const char* to_string(Mode mode);

struct ModeDecision {
  Mode mode = Mode::kInfeasible;
  // Offload minus local savings; NaN unless both modes are feasible.
  double delta_savings = 0.0;
  local::LocalPolicy local;
  offload::OffloadPolicy offload;
};

// A lone feasible mode wins; otherwise offload iff its savings are at
// least the local savings.
Mode choose(bool local_feasible, double local_savings, bool offload_feasible,
            double offload_savings);

ModeDecision select(local::LocalPolicy local, offload::OffloadPolicy offload);

// Diagnostics only; decisions always come from the realized savings.
//
// theta = E_loc T^2 / gamma is read off the optimal local energy. Below
// the returned deadline offloading is preferred.
double deadline_threshold(double local_energy, double deadline, double y,
                          double bits);

// Offloading is preferred for P_b at or below the returned power. NaN when
// the threshold expression has no real value.
double power_threshold(double local_energy, double deadline, double gamma,
                       double h, const offload::OffloadConfig& cfg,
                       double bits);

// For savings differences sampled along an increasing deadline grid,
// counts sign changes from negative back to non-negative after the first
// change to negative. Zero means the switch to local computing is
// monotone. Logs a warning when non-zero.
std::size_t count_switch_reversals(std::span<const double> delta_savings);

}  // namespace wpmcc::mode

#endif  // WPMCC_MODE_SELECTION_HPP_
