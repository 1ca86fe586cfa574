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

#ifndef WPMCC_RNG_HPP_
#define WPMCC_RNG_HPP_

#include <cstdint>
#include <random>

namespace wpmcc {

/**
 * 64-bit Mersenne Twister whose state is derived from a (seed, stream)
 * pair through std::seed_seq.
 *
 * Every Monte-Carlo trial owns the stream keyed by its trial index, so the
 * numbers a trial sees do not depend on which worker runs it or in what
 * order.
 */
class RngStream : public std::mt19937_64 {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    this->seed(seq);
  }
};

}  // namespace wpmcc

#endif  // WPMCC_RNG_HPP_
