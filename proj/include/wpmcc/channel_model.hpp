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

#ifndef WPMCC_CHANNEL_MODEL_HPP_
#define WPMCC_CHANNEL_MODEL_HPP_

#include <cstdint>
#include <vector>

#include "wpmcc/rng.hpp"

namespace wpmcc::channel {

// Rician vector channel seen through transmit/receive beamforming.
struct RicianParams {
  int n_antennas = 2;
  double rician_k = 0.0;
  double avg_power = 5e-6;  // Omega, per antenna
  std::uint64_t seed = 0;

  void validate() const;
  // The channel a trial owning `stream` should draw from.
  RngStream stream(std::uint64_t stream_id) const {
    return RngStream(seed, stream_id);
  }
};

// Gains of M consecutive i.i.d. fading blocks of duration T_c each.
struct BlockGains {
  std::vector<double> gains;
  double block_duration = 0.0;

  std::size_t blocks() const { return gains.size(); }
  double horizon() const {
    return block_duration * static_cast<double>(gains.size());
  }
};

// Effective power gain h = |h_vec|^2 of one channel realization. The
// line-of-sight component has all entries equal to one; the scattered
// part is i.i.d. CN(0, 1). E[h] = avg_power * n_antennas for any K.
double sample_gain(const RicianParams& params, RngStream& rng);

BlockGains sample_block_gains(const RicianParams& params, int m,
                              double block_duration, RngStream& rng);

}  // namespace wpmcc::channel

#endif  // WPMCC_CHANNEL_MODEL_HPP_
