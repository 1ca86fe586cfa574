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

// Time division between microwave power transfer (MPT) and computation
// offloading. The mobile harvests for deadline - t seconds and uploads L
// bits in the remaining t seconds at a fixed rate, spending
//
//   E_off(t) = (2^(L / (B t)) - 1) (sigma^2 / h) t.
//
// The savings objective upsilon P_b h (T - t) - E_off(t) is concave in t
// and is maximized at t = rho(h) L.

#ifndef WPMCC_OFFLOADING_HPP_
#define WPMCC_OFFLOADING_HPP_

namespace wpmcc::offload {

struct OffloadConfig {
  double bandwidth = 1e6;   // B, Hz
  double noise_var = 1e-9;  // sigma^2, W
  double upsilon = 0.8;
  double bs_power = 0.5;  // P_b, W
  double deadline = 0.035;

  void validate() const;
};

enum class OffloadRegime {
  kInfeasible,
  // t < deadline; savings linear in the data size.
  kInterior,
  // Whole block spent uploading; only possible with residual energy.
  kFullBlock,
};

const char* to_string(OffloadRegime regime);

struct OffloadPolicy {
  bool feasible = false;
  double duration = 0.0;  // offloading time; MPT takes deadline - duration
  double savings = 0.0;
  OffloadRegime regime = OffloadRegime::kInfeasible;
};

// Transmission energy for `bits` bits over `duration` seconds. Requires
// duration > 0 unless bits == 0.
double offload_energy(const OffloadConfig& cfg, double h, double bits,
                      double duration);

// upsilon P_b h (deadline - t) - E_off(t).
double savings_objective(const OffloadConfig& cfg, double h, double bits,
                         double duration);

// W0(upsilon P_b h^2 / (sigma^2 e) - 1/e), the quantity behind rho and y.
double lambert_term(const OffloadConfig& cfg, double h);

// Optimal offloading time per bit, s/bit.
double rho(const OffloadConfig& cfg, double h);

// Net energy cost per offloaded bit, J/bit.
double y_of_h(const OffloadConfig& cfg, double h);

// Feasibility threshold on P_b h^2 for offloading `bits` bits within the
// deadline.
double threshold_a2(const OffloadConfig& cfg, double bits);

OffloadPolicy static_policy(const OffloadConfig& cfg, double h, double bits);

// Constants governing one fading block with residual energy R.
struct SlaveConstants {
  double c = 0.0;        // largest interior data size, T_c / rho
  double c_prime = 0.0;  // largest size a full-block upload can afford
  // Residual energy above which the full-block case opens up.
  double residual_bound = 0.0;
  // (upsilon P_b h T_c + R) / y, interior limit for small residuals.
  double interior_cap = 0.0;
};

SlaveConstants slave_constants(const OffloadConfig& cfg, double h,
                               double residual);

// cfg.deadline is the block duration. residual == 0 reproduces
// static_policy.
OffloadPolicy slave_policy(const OffloadConfig& cfg, double h, double bits,
                           double residual);

// Slave policy for one block with the gain-dependent constants computed
// once. Calls agree exactly with slave_policy.
class SlaveEvaluator {
 public:
  SlaveEvaluator(const OffloadConfig& cfg, double h);

  OffloadPolicy operator()(double bits, double residual) const;

  double y() const { return y_; }
  double rho() const { return rho_; }
  double harvested() const { return harvested_; }
  // Largest data size with non-negative savings and no residual energy.
  double cap() const { return cap_; }

 private:
  OffloadConfig cfg_;
  double h_ = 0.0;
  double y_ = 0.0;
  double rho_ = 0.0;
  double harvested_ = 0.0;
  double cap_ = 0.0;
  double noise_t_ = 0.0;
  double residual_bound_ = 0.0;
  double c_ = 0.0;
};

// Baseline splitting the deadline evenly between MPT and offloading;
// feasible iff its savings are non-negative.
OffloadPolicy equal_time_policy(const OffloadConfig& cfg, double h,
                                double bits);

}  // namespace wpmcc::offload

#endif  // WPMCC_OFFLOADING_HPP_
