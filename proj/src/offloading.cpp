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

#include "wpmcc/offloading.hpp"

#include <cmath>
#include <numbers>

#include "wpmcc/errors.hpp"
#include "wpmcc/numerics.hpp"

namespace wpmcc::offload {
namespace {

constexpr double kLn2 = std::numbers::ln2;
// Relative slack on P_b h^2 >= a'' so that a gain reconstructed from the
// threshold itself lands on the feasible side.
constexpr double kThresholdSlack = 1e-12;

void CheckGain(double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) {
    throw DomainError("offloading: gain must be finite and >= 0");
  }
}

double Harvested(const OffloadConfig& cfg, double h) {
  return cfg.upsilon * cfg.bs_power * h * cfg.deadline;
}

}  // namespace

void OffloadConfig::validate() const {
  if (!(bandwidth > 0.0) || !(noise_var > 0.0) || !(bs_power > 0.0) ||
      !(deadline > 0.0)) {
    throw DomainError("OffloadConfig: parameters must be > 0");
  }
  if (!(upsilon > 0.0 && upsilon <= 1.0)) {
    throw DomainError("OffloadConfig: upsilon must lie in (0, 1]");
  }
}

const char* to_string(OffloadRegime regime) {
  switch (regime) {
    case OffloadRegime::kInfeasible:
      return "infeasible";
    case OffloadRegime::kInterior:
      return "interior";
    case OffloadRegime::kFullBlock:
      return "full-block";
  }
  return "unknown";
}

double offload_energy(const OffloadConfig& cfg, double h, double bits,
                      double duration) {
  if (!(bits >= 0.0)) throw DomainError("offload_energy: bits must be >= 0");
  if (bits == 0.0) return 0.0;
  if (!(duration > 0.0)) {
    throw DomainError("offload_energy: duration must be > 0");
  }
  const double rate_exp = bits * kLn2 / (cfg.bandwidth * duration);
  return std::expm1(rate_exp) * cfg.noise_var / h * duration;
}

double savings_objective(const OffloadConfig& cfg, double h, double bits,
                         double duration) {
  return cfg.upsilon * cfg.bs_power * h * (cfg.deadline - duration) -
         offload_energy(cfg, h, bits, duration);
}

double lambert_term(const OffloadConfig& cfg, double h) {
  cfg.validate();
  CheckGain(h);
  const double q =
      cfg.upsilon * cfg.bs_power * h * h / cfg.noise_var * numerics::kInvE;
  return numerics::lambert_w0_shifted(q);
}

double rho(const OffloadConfig& cfg, double h) {
  return kLn2 / (cfg.bandwidth * (1.0 + lambert_term(cfg, h)));
}

double y_of_h(const OffloadConfig& cfg, double h) {
  const double w = lambert_term(cfg, h);
  return cfg.noise_var * kLn2 / (cfg.bandwidth * h) * std::exp(w + 1.0);
}

double threshold_a2(const OffloadConfig& cfg, double bits) {
  cfg.validate();
  if (!(bits >= 0.0)) throw DomainError("threshold_a2: bits must be >= 0");
  const double d = bits * kLn2 / (cfg.bandwidth * cfg.deadline);
  // v = u + 1 with u = d + W(-e^(-1-d)); 1 + u e^(u+1) rewritten to avoid
  // cancellation as v + (v - 1) expm1(v).
  const double v = d + (1.0 + numerics::lambert_w0_neg_exp(d));
  return cfg.noise_var / cfg.upsilon * (v + (v - 1.0) * std::expm1(v));
}

OffloadPolicy static_policy(const OffloadConfig& cfg, double h, double bits) {
  cfg.validate();
  CheckGain(h);
  if (!(bits >= 0.0)) throw DomainError("static_policy: bits must be >= 0");
  OffloadPolicy out;
  if (bits == 0.0) {
    out.feasible = true;
    out.regime = OffloadRegime::kInterior;
    out.savings = Harvested(cfg, h);
    return out;
  }
  if (h == 0.0) return out;
  const double a2 = threshold_a2(cfg, bits);
  if (cfg.bs_power * h * h < a2 * (1.0 - kThresholdSlack)) return out;
  out.feasible = true;
  out.regime = OffloadRegime::kInterior;
  out.duration = rho(cfg, h) * bits;
  out.savings = Harvested(cfg, h) - y_of_h(cfg, h) * bits;
  return out;
}

SlaveConstants slave_constants(const OffloadConfig& cfg, double h,
                               double residual) {
  cfg.validate();
  CheckGain(h);
  if (!(h > 0.0)) throw DomainError("slave_constants: gain must be > 0");
  if (!(residual >= 0.0)) {
    throw DomainError("slave_constants: residual must be >= 0");
  }
  const double w = lambert_term(cfg, h);
  const double t_c = cfg.deadline;
  const double b = cfg.bandwidth;
  const double noise_t = cfg.noise_var * t_c / h;
  SlaveConstants k;
  k.c = t_c * b * (1.0 + w) / kLn2;
  k.c_prime = b * t_c * std::log1p(residual / noise_t) / kLn2;
  k.residual_bound = noise_t * std::expm1(1.0 + w);
  k.interior_cap = (Harvested(cfg, h) + residual) / y_of_h(cfg, h);
  return k;
}

SlaveEvaluator::SlaveEvaluator(const OffloadConfig& cfg, double h)
    : cfg_(cfg), h_(h) {
  cfg.validate();
  CheckGain(h);
  harvested_ = Harvested(cfg, h);
  if (h == 0.0) return;
  const double w = lambert_term(cfg, h);
  const double t_c = cfg.deadline;
  y_ = cfg.noise_var * kLn2 / (cfg.bandwidth * h) * std::exp(w + 1.0);
  rho_ = kLn2 / (cfg.bandwidth * (1.0 + w));
  cap_ = harvested_ / y_;
  noise_t_ = cfg.noise_var * t_c / h;
  residual_bound_ = noise_t_ * std::expm1(1.0 + w);
  c_ = t_c * cfg.bandwidth * (1.0 + w) / kLn2;
}

OffloadPolicy SlaveEvaluator::operator()(double bits, double residual) const {
  if (!(residual >= 0.0)) {
    throw DomainError("slave_policy: residual must be >= 0");
  }
  if (residual == 0.0 || bits == 0.0) return static_policy(cfg_, h_, bits);
  if (!(bits > 0.0)) throw DomainError("slave_policy: bits must be >= 0");
  OffloadPolicy out;
  if (h_ == 0.0) return out;
  const bool small_residual = residual <= residual_bound_;
  if (small_residual ? bits <= (harvested_ + residual) / y_ : bits < c_) {
    out.feasible = true;
    out.regime = OffloadRegime::kInterior;
    out.duration = rho_ * bits;
    out.savings = harvested_ - y_ * bits;
    return out;
  }
  if (!small_residual &&
      bits <= cfg_.bandwidth * cfg_.deadline *
                  std::log1p(residual / noise_t_) / kLn2) {
    out.feasible = true;
    out.regime = OffloadRegime::kFullBlock;
    out.duration = cfg_.deadline;
    out.savings = -offload_energy(cfg_, h_, bits, cfg_.deadline);
  }
  return out;
}

OffloadPolicy slave_policy(const OffloadConfig& cfg, double h, double bits,
                           double residual) {
  return SlaveEvaluator(cfg, h)(bits, residual);
}

OffloadPolicy equal_time_policy(const OffloadConfig& cfg, double h,
                                double bits) {
  cfg.validate();
  CheckGain(h);
  OffloadPolicy out;
  if (bits > 0.0 && h == 0.0) return out;
  const double t = 0.5 * cfg.deadline;
  const double savings = savings_objective(cfg, h, bits, t);
  if (savings >= 0.0) {
    out.feasible = true;
    out.regime = OffloadRegime::kInterior;
    out.duration = t;
    out.savings = savings;
  }
  return out;
}

}  // namespace wpmcc::offload
