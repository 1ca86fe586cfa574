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

#include "wpmcc/channel_model.hpp"

#include <cmath>
#include <random>

#include "wpmcc/errors.hpp"

namespace wpmcc::channel {

void RicianParams::validate() const {
  if (n_antennas < 1) throw DomainError("RicianParams: n_antennas must be >= 1");
  if (!(rician_k >= 0.0) || !std::isfinite(rician_k)) {
    throw DomainError("RicianParams: rician_k must be >= 0");
  }
  if (!(avg_power > 0.0) || !std::isfinite(avg_power)) {
    throw DomainError("RicianParams: avg_power must be > 0");
  }
}

double sample_gain(const RicianParams& params, RngStream& rng) {
  const double k = params.rician_k;
  const double los = std::sqrt(k / (1.0 + k));
  // Per real component of a unit-variance complex normal.
  const double scatter = std::sqrt(1.0 / (1.0 + k)) * std::sqrt(0.5);
  std::normal_distribution<double> normal(0.0, 1.0);
  double norm2 = 0.0;
  for (int i = 0; i < params.n_antennas; ++i) {
    const double re = los + scatter * normal(rng);
    const double im = scatter * normal(rng);
    norm2 += re * re + im * im;
  }
  // Scaling by Omega last keeps h exactly linear in avg_power.
  return params.avg_power * norm2;
}

BlockGains sample_block_gains(const RicianParams& params, int m,
                              double block_duration, RngStream& rng) {
  if (m < 1) throw DomainError("sample_block_gains: m must be >= 1");
  if (!(block_duration > 0.0)) {
    throw DomainError("sample_block_gains: block duration must be > 0");
  }
  BlockGains out;
  out.block_duration = block_duration;
  out.gains.reserve(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) out.gains.push_back(sample_gain(params, rng));
  return out;
}

}  // namespace wpmcc::channel
