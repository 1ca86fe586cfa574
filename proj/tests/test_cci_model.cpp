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

#include <algorithm>
#include <boost/math/distributions/gamma.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "wpmcc/cci_model.hpp"
#include "wpmcc/errors.hpp"

using namespace wpmcc;

TEST_CASE("compute_n0 against the Gamma quantile and a sample quantile") {
  const cci::CciModel m = cci::CciModel::gamma(4.0, 200.0, 0.05);
  const std::int64_t n0 = cci::compute_n0(m);
  const boost::math::gamma_distribution<double> dist(4.0, 200.0);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.05));
  CHECK(n0 == static_cast<std::int64_t>(std::ceil(q)));
  // Defining property: S(n0) <= eps < S(n0 - 1).
  CHECK(boost::math::cdf(boost::math::complement(dist, double(n0))) <= 0.05);
  CHECK(boost::math::cdf(boost::math::complement(dist, double(n0 - 1))) > 0.05);

  std::mt19937_64 rng(12345);
  std::gamma_distribution<double> g(4.0, 200.0);
  std::vector<double> xs(1'000'000);
  for (double& x : xs) x = g(rng);
  std::nth_element(xs.begin(), xs.begin() + 950'000, xs.end());
  CHECK(std::abs(xs[950'000] - static_cast<double>(n0)) < 5.0);
}

TEST_CASE("compute_n0 edge cases") {
  // Near-degenerate gamma approaches the deterministic cap.
  const cci::CciModel sharp = cci::CciModel::gamma(1e6, 7.3 / 1e6, 0.05);
  CHECK(cci::compute_n0(sharp) == 8);
  CHECK(cci::compute_n0(cci::CciModel::deterministic(2.0, 0.05)) == 2);
  CHECK(cci::compute_n0(cci::CciModel::gamma(4.0, 200.0, 0.5)) <
        cci::compute_n0(cci::CciModel::gamma(4.0, 200.0, 0.05)));
  CHECK_THROWS_AS(cci::CciModel::gamma(4.0, 200.0, 0.0), DomainError);
  CHECK_THROWS_AS(cci::CciModel::gamma(4.0, 200.0, 0.6), DomainError);
  CHECK_THROWS_AS(cci::CciModel::gamma(-1.0, 200.0, 0.05), DomainError);
  CHECK_THROWS_AS(cci::CciModel::gamma(4.0, 0.0, 0.05), DomainError);
}

TEST_CASE("survival matches Boost for integer and fractional shapes") {
  for (const double shape : {1.0, 4.0, 2.5, 7.25}) {
    const cci::CciModel m = cci::CciModel::gamma(shape, 3.0, 0.05);
    const boost::math::gamma_distribution<double> dist(shape, 3.0);
    for (const double x : {0.0, 0.5, 3.0, 10.0, 40.0}) {
      const double ref = boost::math::cdf(boost::math::complement(dist, x));
      CHECK(m.survival(x) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("deterministic execution probabilities") {
  const auto e = cci::execution_probabilities(
      cci::CciModel::deterministic(2.0, 0.05), 3.0);
  REQUIRE(e.cycles() == 6);
  for (const double p : e.probs) CHECK(p == 1.0);

  // 7.5 cycles of work: the eighth and ninth budgeted cycles never run.
  const auto frac = cci::execution_probabilities(
      cci::CciModel::deterministic(2.5, 0.05), 3.0);
  CHECK(cci::cycle_budget(3.0, 3) == 9);
  REQUIRE(frac.cycles() == 7);
  for (const double p : frac.probs) CHECK(p == 1.0);
}

TEST_CASE("execution probabilities match sampled frequencies") {
  const cci::CciModel m = cci::CciModel::gamma(4.0, 200.0, 0.05);
  const double bits = 10.0;
  const auto e = cci::execution_probabilities(m, bits);
  CHECK(e.cycles() == static_cast<std::size_t>(10 * e.n0));
  CHECK(e.probs.front() == doctest::Approx(1.0).epsilon(1e-6));

  // Empirical Pr(L X >= k) from 1e6 draws, accumulated by histogram.
  std::mt19937_64 rng(99);
  std::gamma_distribution<double> g(4.0, 200.0);
  const std::size_t n = e.cycles();
  std::vector<double> count(n + 2, 0.0);
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) {
    const double cycles = bits * g(rng);
    const auto top = static_cast<std::size_t>(
        std::min<double>(std::floor(cycles), static_cast<double>(n + 1)));
    count[top] += 1.0;  // cycles >= k for every k <= top
  }
  double tail = 0.0;
  std::vector<double> emp(n + 2, 0.0);
  for (std::size_t k = n + 1; k >= 1; --k) {
    tail += count[k];
    emp[k] = tail / draws;
  }
  double worst = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    worst = std::max(worst, std::abs(emp[k] - e.probs[k - 1]));
  }
  CHECK(worst <= 0.005);
}

TEST_CASE("execution probabilities are monotone and scale with L") {
  const cci::CciModel m = cci::CciModel::gamma(2.5, 40.0, 0.1);
  const auto a = cci::execution_probabilities(m, 7.0);
  const auto b = cci::execution_probabilities(m, 21.0);
  for (std::size_t k = 1; k < a.cycles(); ++k) {
    CHECK(a.probs[k] <= a.probs[k - 1]);
  }
  REQUIRE(b.cycles() == 3 * a.cycles());
  for (std::size_t k = 1; k <= a.cycles(); ++k) {
    CHECK(b.probs[3 * k - 1] == doctest::Approx(a.probs[k - 1]).epsilon(1e-14));
  }
}

TEST_CASE("cycle budget tolerates floating-point fuzz and enforces the cap") {
  CHECK(cci::cycle_budget(0.1 * 3.0, 10) == 3);  // 0.30000000000000004 * 10
  CHECK(cci::cycle_budget(2.5, 3) == 8);
  const cci::CciModel m = cci::CciModel::gamma(4.0, 200.0, 0.05);
  CHECK_THROWS_AS(cci::execution_probabilities(m, 1000.0, 1000), ResourceError);
  CHECK_THROWS_AS(cci::execution_probabilities(m, 0.0), DomainError);
}

TEST_CASE("scaling factors") {
  const auto det = cci::scaling_factors(cci::CciModel::deterministic(3.0, 0.05), 4.0);
  CHECK(det.theta0 == doctest::Approx(27.0).epsilon(1e-12));
  CHECK(det.theta1 == doctest::Approx(27.0).epsilon(1e-12));
  CHECK(det.phi0 == doctest::Approx(27.0).epsilon(1e-12));
  CHECK(det.phi1 == doctest::Approx(27.0).epsilon(1e-12));

  const cci::CciModel m = cci::CciModel::gamma(4.0, 200.0, 0.05);
  const auto f = cci::scaling_factors(m, 1000.0);
  const double n0 = static_cast<double>(cci::compute_n0(m));
  CHECK(f.theta1 == doctest::Approx(n0 * n0 * n0).epsilon(1e-12));
  CHECK(f.theta0 > f.theta1);
  CHECK(f.phi0 < f.phi1);
  CHECK(f.phi1 <= f.theta1);
  CHECK(f.phi_bar() >= 0.0);

  // Direct evaluation of the defining sums.
  const auto e = cci::execution_probabilities(m, 1000.0);
  long double s1 = 0, s2 = 0, sp = 0;
  for (const double p : e.probs) {
    s1 += std::cbrt(static_cast<long double>(p));
    s2 += 1.0L / std::cbrt(static_cast<long double>(p) * p);
    sp += p;
  }
  const long double l3 = 1e9L;
  CHECK(f.theta0 == doctest::Approx(static_cast<double>(s1 * s1 * s2 / l3)).epsilon(1e-12));
  CHECK(f.phi0 == doctest::Approx(static_cast<double>(s1 * s1 * s1 / l3)).epsilon(1e-12));
  const long double n = static_cast<long double>(e.cycles());
  CHECK(f.phi1 == doctest::Approx(static_cast<double>(n * n * sp / l3)).epsilon(1e-12));

  const auto half = cci::scaling_factors(m, 500.0);
  CHECK(half.theta0 == doctest::Approx(f.theta0).epsilon(0.01));
  CHECK(half.phi0 == doctest::Approx(f.phi0).epsilon(0.01));
  CHECK(half.phi1 == doctest::Approx(f.phi1).epsilon(0.01));
}
