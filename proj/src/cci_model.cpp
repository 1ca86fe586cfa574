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

#include "wpmcc/cci_model.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "wpmcc/compensated_sum.hpp"
#include "wpmcc/errors.hpp"

namespace wpmcc::cci {
namespace {

constexpr int kMaxErlangOrder = 64;

// Pr(Gamma(k, 1) > z) for integer k: e^-z sum_{j<k} z^j / j!.
double ErlangSurvival(int order, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < order; ++j) {
    term *= z / j;
    sum += term;
  }
  return std::exp(-z) * sum;
}

}  // namespace

CciModel::CciModel(CciKind kind, double shape, double scale, double epsilon)
    : kind_(kind), shape_(shape), scale_(scale), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw DomainError("CciModel: epsilon must lie in (0, 0.5]");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("CciModel: scale must be positive");
  }
  if (kind == CciKind::kGamma) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
      throw DomainError("CciModel: shape must be positive");
    }
    if (shape == std::floor(shape) && shape <= kMaxErlangOrder) {
      erlang_order_ = static_cast<int>(shape);
    }
  }
}

CciModel CciModel::gamma(double shape, double scale, double epsilon) {
  return CciModel(CciKind::kGamma, shape, scale, epsilon);
}

CciModel CciModel::deterministic(double cycles_per_bit, double epsilon) {
  return CciModel(CciKind::kDeterministic, 1.0, cycles_per_bit, epsilon);
}

double CciModel::mean() const {
  return kind_ == CciKind::kGamma ? shape_ * scale_ : scale_;
}

double CciModel::survival(double x) const {
  if (kind_ == CciKind::kDeterministic) return scale_ > x ? 1.0 : 0.0;
  if (x <= 0.0) return 1.0;
  const double z = x / scale_;
  if (erlang_order_ > 0) return ErlangSurvival(erlang_order_, z);
  return boost::math::gamma_q(shape_, z);
}

double CciModel::exceedance(double x) const {
  if (kind_ == CciKind::kDeterministic) return scale_ >= x ? 1.0 : 0.0;
  return survival(x);
}

std::int64_t compute_n0(const CciModel& model) {
  if (model.kind() == CciKind::kDeterministic) {
    return std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(model.scale())));
  }
  const double quantile =
      model.scale() * boost::math::gamma_q_inv(model.shape(), model.epsilon());
  auto n = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(quantile)));
  const double eps = model.epsilon();
  while (model.survival(static_cast<double>(n)) > eps) ++n;
  while (n > 1 && model.survival(static_cast<double>(n - 1)) <= eps) --n;
  return n;
}

std::int64_t cycle_budget(double data_bits, std::int64_t n0) {
  const double raw = data_bits * static_cast<double>(n0);
  const double fuzz = 1e-9 * std::max(1.0, raw);
  return static_cast<std::int64_t>(std::ceil(raw - fuzz));
}

ExecutionProbabilities execution_probabilities(const CciModel& model,
                                               double data_bits,
                                               std::size_t max_cycles) {
  if (!(data_bits > 0.0) || !std::isfinite(data_bits)) {
    throw DomainError("execution_probabilities: data_bits must be > 0");
  }
  ExecutionProbabilities out;
  out.data_bits = data_bits;
  out.n0 = compute_n0(model);
  const std::int64_t n = cycle_budget(data_bits, out.n0);
  if (n < 1 || static_cast<std::uint64_t>(n) > max_cycles) {
    throw ResourceError("execution_probabilities: " + std::to_string(n) +
                        " cycles exceeds cap of " +
                        std::to_string(max_cycles));
  }
  out.probs.resize(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    out.probs[static_cast<std::size_t>(k - 1)] =
        model.exceedance(static_cast<double>(k) / data_bits);
  }
  // Cycles that never run (a deterministic CCI with a fractional total)
  // carry no energy and need no time; drop them.
  while (out.probs.size() > 1 && out.probs.back() == 0.0) out.probs.pop_back();
  return out;
}

ScalingFactors scaling_factors(const ExecutionProbabilities& probs) {
  CompensatedSum s_cbrt;
  CompensatedSum s_inv;
  CompensatedSum s_p;
  for (const double p : probs.probs) {
    const double c = std::cbrt(p);
    s_cbrt += c;
    s_inv += 1.0 / (c * c);
    s_p += p;
  }
  const double n = static_cast<double>(probs.cycles());
  const double l3 = probs.data_bits * probs.data_bits * probs.data_bits;
  const double sc = s_cbrt.value();
  ScalingFactors f;
  f.theta0 = sc * sc * s_inv.value() / l3;
  f.theta1 = n * n * n / l3;
  f.phi0 = sc * sc * sc / l3;
  f.phi1 = n * n * s_p.value() / l3;
  return f;
}

ScalingFactors scaling_factors(const CciModel& model, double ref_bits) {
  return scaling_factors(execution_probabilities(model, ref_bits));
}

}  // namespace wpmcc::cci
