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

// CPU-cycle information (CCI): the random number of cycles X needed per
// input bit, and the quantities derived from its distribution that every
// local-computing policy consumes.

#ifndef WPMCC_CCI_MODEL_HPP_
#define WPMCC_CCI_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace wpmcc::cci {

enum class CciKind { kGamma, kDeterministic };

class CciModel {
 public:
  // Gamma(shape, scale) with mean shape * scale cycles per bit.
  static CciModel gamma(double shape, double scale, double epsilon);
  // X == cycles_per_bit with probability one. Test distribution.
  static CciModel deterministic(double cycles_per_bit, double epsilon);

  CciKind kind() const { return kind_; }
  double shape() const { return shape_; }
  double scale() const { return scale_; }
  double epsilon() const { return epsilon_; }
  double mean() const;

  // Pr(X > x).
  double survival(double x) const;
  // Pr(X >= x). Equal to survival() for the gamma model.
  double exceedance(double x) const;

  template <class Engine>
  double sample(Engine& engine) const {
    if (kind_ == CciKind::kDeterministic) return scale_;
    std::gamma_distribution<double> dist(shape_, scale_);
    return dist(engine);
  }

 private:
  CciModel(CciKind kind, double shape, double scale, double epsilon);

  CciKind kind_;
  double shape_;
  double scale_;  // Holds the constant value for kDeterministic.
  double epsilon_;
  int erlang_order_ = 0;  // > 0 when shape is a small integer.
};

// p_k = Pr(L X >= k) for k = 1..N, N = ceil(L * N0).
struct ExecutionProbabilities {
  double data_bits = 0.0;
  std::int64_t n0 = 0;
  std::vector<double> probs;

  std::size_t cycles() const { return probs.size(); }
  std::span<const double> view() const { return probs; }
};

// Cubic scaling factors of the per-block thresholds and energies.
struct ScalingFactors {
  double theta0 = 0.0;
  double theta1 = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;

  // 1 - phi1 / theta1, the guaranteed fraction of a block's energy budget
  // that carries over as residual energy.
  double phi_bar() const { return 1.0 - phi1 / theta1; }
};

inline constexpr std::size_t kDefaultMaxCycles = 10'000'000;

// Smallest positive integer n with Pr(X > n) <= epsilon.
std::int64_t compute_n0(const CciModel& model);

// Number of cycles budgeted for `data_bits` bits: ceil(data_bits * n0),
// ignoring floating-point fuzz of relative size 1e-9 above an integer.
std::int64_t cycle_budget(double data_bits, std::int64_t n0);

// probs[k - 1] = Pr(L X >= k) for k = 1..N, with N = cycle_budget; trailing
// cycles of zero probability are omitted. Throws DomainError for
// data_bits <= 0 and ResourceError when N would exceed max_cycles.
ExecutionProbabilities execution_probabilities(
    const CciModel& model, double data_bits,
    std::size_t max_cycles = kDefaultMaxCycles);

ScalingFactors scaling_factors(const ExecutionProbabilities& probs);
ScalingFactors scaling_factors(const CciModel& model, double ref_bits);

}  // namespace wpmcc::cci

#endif  // WPMCC_CCI_MODEL_HPP_
