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

#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wpmcc::oracle {
namespace {

struct Program {
  std::span<const double> p;
  double c;
  double r;
  std::size_t n() const { return p.size(); }

  double objective(const Eigen::VectorXd& z) const {
    double f = 0.0;
    for (std::size_t k = 0; k < n(); ++k) f += p[k] / (z[k] * z[k]);
    return f;
  }

  // Slack of every constraint (negative means satisfied): prefixes, then
  // the deadline. Empty if some z_k <= 0.
  bool slacks(const Eigen::VectorXd& z, Eigen::VectorXd& g) const {
    const std::size_t m = n();
    g.resize(static_cast<Eigen::Index>(m + 1));
    double energy = 0.0;
    double time = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!(z[k] > 0.0)) return false;
      energy += 1.0 / (z[k] * z[k]);
      time += z[k];
      g[k] = energy - c * time - r;
      if (!(g[k] < 0.0)) return false;
    }
    g[m] = time - static_cast<double>(m);
    return g[m] < 0.0;
  }

  double barrier(const Eigen::VectorXd& z, double t) const {
    Eigen::VectorXd g;
    if (!slacks(z, g)) return std::numeric_limits<double>::infinity();
    double phi = t * objective(z);
    for (Eigen::Index i = 0; i < g.size(); ++i) phi -= std::log(-g[i]);
    return phi;
  }

  void gradient_hessian(const Eigen::VectorXd& z, double t,
                        Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const auto m = static_cast<Eigen::Index>(n());
    Eigen::VectorXd g;
    slacks(z, g);
    // Tail sums over prefix constraints m' >= k.
    Eigen::VectorXd inv_tail(m);
    Eigen::VectorXd inv2_tail(m);
    double s1 = 0.0;
    double s2 = 0.0;
    for (Eigen::Index k = m - 1; k >= 0; --k) {
      s1 += 1.0 / (-g[k]);
      s2 += 1.0 / (g[k] * g[k]);
      inv_tail[k] = s1;
      inv2_tail[k] = s2;
    }
    Eigen::VectorXd a(m);  // d g_m / d z_k for k <= m
    for (Eigen::Index k = 0; k < m; ++k) {
      a[k] = -2.0 / (z[k] * z[k] * z[k]) - c;
    }
    const double gd = -g[m];
    grad.resize(m);
    hess.setZero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const double z3 = z[k] * z[k] * z[k];
      const double z4 = z3 * z[k];
      const double pk = p[static_cast<std::size_t>(k)];
      grad[k] = t * (-2.0 * pk / z3) + a[k] * inv_tail[k] + 1.0 / gd;
      hess(k, k) += t * 6.0 * pk / z4 + 6.0 / z4 * inv_tail[k];
      for (Eigen::Index j = 0; j < m; ++j) {
        hess(k, j) += a[k] * a[j] * inv2_tail[std::max(k, j)] + 1.0 / (gd * gd);
      }
    }
  }
};

}  // namespace

BarrierResult solve_local_barrier(std::span<const double> p, double c,
                                  double r) {
  const Program prog{p, c, r};
  const auto m = static_cast<Eigen::Index>(p.size());
  if (m == 0) throw std::invalid_argument("empty program");

  // Uniform start strictly inside both constraint families.
  Eigen::VectorXd z(m);
  double s = c > 1.0 ? 0.5 * (1.0 + std::cbrt(1.0 / c)) : 0.999;
  z.setConstant(s);
  Eigen::VectorXd g;
  while (!prog.slacks(z, g)) {
    s = 0.5 * (s + 1.0);
    if (1.0 - s < 1e-15) throw std::invalid_argument("no interior point");
    z.setConstant(s);
  }

  BarrierResult out;
  const double n_constraints = static_cast<double>(m + 1);
  double t = n_constraints / std::max(prog.objective(z), 1e-300);
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (int outer = 0; outer < 200; ++outer) {
    for (int inner = 0; inner < 200; ++inner) {
      prog.gradient_hessian(z, t, grad, hess);
      const Eigen::VectorXd dz = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(dz);
      ++out.newton_steps;
      if (!(decrement > 1e-20)) break;
      const double phi = prog.barrier(z, t);
      double step = 1.0;
      for (int ls = 0; ls < 80; ++ls) {
        const Eigen::VectorXd trial = z + step * dz;
        const double v = prog.barrier(trial, t);
        if (v <= phi - 0.25 * step * decrement) {
          z = trial;
          break;
        }
        step *= 0.5;
      }
      if (decrement < 1e-18 * std::max(1.0, std::abs(phi))) break;
    }
    const double f = prog.objective(z);
    out.duality_gap = n_constraints / t;
    if (out.duality_gap <= 1e-12 * f) break;
    t *= 8.0;
  }
  out.z.assign(z.data(), z.data() + m);
  out.objective = prog.objective(z);
  return out;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

GridArgmax grid_argmax(const std::function<double(double)>& f, double lo,
                       double hi, int n) {
  GridArgmax best;
  best.step = (hi - lo) / (n + 1);
  best.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double x = lo + (i + 1) * best.step;
    const double v = f(x);
    if (v > best.value) {
      best.value = v;
      best.arg = x;
    }
  }
  return best;
}

long double offload_savings_ld(double upsilon, double bs_power, double h,
                               double noise_var, double bandwidth,
                               double deadline, double bits, double t) {
  const long double rate_exp =
      static_cast<long double>(bits) / (static_cast<long double>(bandwidth) * t);
  const long double energy =
      (std::pow(2.0L, rate_exp) - 1.0L) * noise_var / h * t;
  return static_cast<long double>(upsilon) * bs_power * h * (deadline - t) -
         energy;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_one_sample(std::vector<double> a,
                     const std::function<double(double)>& cdf) {
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace wpmcc::oracle
