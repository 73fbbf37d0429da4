// Copyright 2026 The kpzlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "kpzlab/oracles.hpp"
#include "kpzlab/stats.hpp"

namespace kpzlab::stats {
namespace {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  Draws d(seed);
  std::vector<double> v(n);
  for (double& x : v) x = d.normal();
  return v;
}

TEST(KolmogorovSmirnov, HandCases) {
  const std::vector<double> a{0.3, 1.2, -4.0, 7.0};
  EXPECT_EQ(ks_statistic(a, a), 0.0);
  EXPECT_EQ(ks_statistic({0.0}, {1.0}), 1.0);
  EXPECT_THROW(ks_statistic({}, {1.0}), ArgumentError);
}

TEST(KolmogorovSmirnov, GaussianNullRate) {
  int below = 0;
  for (int k = 0; k < 100; ++k)
    below += ks_two_sample(gaussian(4000, derive_seed(1, k)), gaussian(4000, derive_seed(2, k))).pass ? 1 : 0;
  EXPECT_GE(below, 95);
}

TEST(KolmogorovSmirnov, PermutationInvariant) {
  auto a = gaussian(500, 3), b = gaussian(700, 4);
  const double d = ks_statistic(a, b);
  std::reverse(a.begin(), a.end());
  std::shuffle(b.begin(), b.end(), std::mt19937_64(5));
  EXPECT_EQ(ks_statistic(a, b), d);
}

TEST(KolmogorovSmirnov, ReferenceCdf) {
  const auto x = gaussian(4000, 8);
  const double d = ks_statistic_cdf(x, [](double v) { return 0.5 * std::erfc(-v / std::sqrt(2.0)); });
  EXPECT_LT(d, 0.03);
}

TEST(KolmogorovSmirnov, SimulatedNullQuantile) {
  const double q = ks_null_quantile(4000, 4000, 0.95, 200, 11);
  // Asymptotic 95% point is 1.358 * sqrt(2 / 4000) = 0.0304.
  EXPECT_GT(q, 0.025);
  EXPECT_LT(q, 0.036);
}

struct Planted {
  double c, b;
};

class UpperTailRoundTrip : public ::testing::TestWithParam<Planted> {};

TEST_P(UpperTailRoundTrip, RecoversPlantedParameters) {
  const auto [c, b] = GetParam();
  const auto x = oracles::synth_tail_sampler(c, b, 100000, 17);
  const TailFit f = fit_upper_tail(x);
  EXPECT_NEAR(f.exponent_hat, b, 0.1);
  EXPECT_NEAR(f.coefficient_hat, c, 0.15);
  EXPECT_TRUE(f.reportable());
}

INSTANTIATE_TEST_SUITE_P(Exponents, UpperTailRoundTrip,
                         ::testing::Values(Planted{1.0, 1.0}, Planted{4.0 / 3.0, 1.5}, Planted{2.0 / 3.0, 1.5},
                                           Planted{1.0, 3.0}));

TEST(LowerTail, RecoversPlantedExponents) {
  for (const auto& [b, tol] : {std::pair{3.0, 0.3}, std::pair{1.0, 0.05}}) {
    auto x = oracles::synth_tail_sampler(1.0, b, 100000, 23);
    for (double& v : x) v = -v;
    EXPECT_NEAR(fit_lower_tail(x).exponent_hat, b, tol) << "planted exponent " << b;
  }
}

TEST(TailFit, RangeErrors) {
  const auto x = oracles::synth_tail_sampler(1.0, 1.0, 500, 1);
  EXPECT_THROW(fit_upper_tail(x), ArgumentError);
  const auto y = oracles::synth_tail_sampler(1.0, 1.0, 100000, 1);
  EXPECT_THROW(fit_upper_tail(y, Interval{0.1, 100.0}), ArgumentError);
}

TEST(Lil, LongTimeDeterministicInputIsExact) {
  const auto t = geometric_times(2.0, 2, 40);
  for (double c : {0.5, 1.0, 2.0}) {
    std::vector<double> h;
    for (double ti : t) h.push_back(c * std::cbrt(ti) * std::pow(std::log(std::log(ti)), 2.0 / 3.0));
    const auto e = lil_longtime(h, t, kLilNarrowWedge);
    EXPECT_EQ(e.statistic, c);
    EXPECT_EQ(e.target, kLilNarrowWedge);
  }
  EXPECT_NEAR(kLilNarrowWedge, 0.8255, 1e-4);
  EXPECT_NEAR(kLilBrownian, 1.3104, 1e-4);
  EXPECT_THROW(lil_longtime({1.0}, {2.0}, 1.0), DomainError);
}

TEST(Lil, ShortTimeDeterministicInputIsExact) {
  std::vector<double> eps;
  for (int k = 0; k <= 8; ++k) eps.push_back(0.3 * std::pow(10.0, -0.5 * k));
  for (double c : {0.25, 1.0, 4.0}) {
    std::vector<double> inc;
    for (double e : eps) inc.push_back(c * std::cbrt(e) * std::pow(std::log(std::log(1.0 / e)), 2.0 / 3.0));
    const auto r = lil_shorttime(inc, eps);
    EXPECT_EQ(r.statistic, c);
    EXPECT_EQ(r.target, kLilBrownian);
    EXPECT_GT(r.statistic, 0.0);
  }
  EXPECT_THROW(lil_shorttime({1.0}, {0.5}), DomainError);
}

TEST(Lil, DoublyExponentialBlocks) {
  const Interval b = doubly_exponential_block(1);
  EXPECT_DOUBLE_EQ(b.lo, std::exp(std::exp(1.0)));
  EXPECT_DOUBLE_EQ(b.hi, std::exp(std::exp(2.0)));
}

FixedPointProfile profile_on(const std::vector<double>& x, const std::vector<double>& v) {
  FixedPointProfile p;
  p.x_grid = x;
  p.values = v;
  return p;
}

TEST(Modulus, SpatialConstantAndSpike) {
  std::vector<double> x;
  for (int i = -16; i <= 16; ++i) x.push_back(i / 16.0);
  EXPECT_EQ(spatial_modulus(profile_on(x, std::vector<double>(x.size(), 3.0))).sup_ratio, 0.0);
  std::vector<double> v(x.size(), 0.0);
  v[16] = std::sqrt(1.0 / 16.0);  // spike of height sqrt(d) at x = 0
  const double d = 1.0 / 16.0, lg = std::log(4.0 / d);
  const auto r = spatial_modulus(profile_on(x, v));
  // With log^2 in the denominator the widest pair, d = 1, gives the sup.
  EXPECT_DOUBLE_EQ(r.sup_ratio, std::sqrt(d) / std::pow(std::log(4.0), 2));
  EXPECT_DOUBLE_EQ(r.secondary_ratio, std::sqrt(d) / std::sqrt(d * lg));
  EXPECT_THROW(spatial_modulus(profile_on({-1.0, 0.0, 1.0}, {0, 0, 0})), ArgumentError);
}

TEST(Modulus, TemporalConstantAndBlock) {
  std::vector<double> t, flat, cube;
  for (int i = 0; i <= 8; ++i) {
    t.push_back(1.0 + i / 8.0 * 0.999);
    flat.push_back(1.0);
    cube.push_back(0.7 * std::cbrt(t.back() - 1.0));
  }
  EXPECT_EQ(temporal_modulus(t, flat).sup_ratio, 0.0);
  EXPECT_NEAR(temporal_modulus(t, cube).secondary_ratio, 0.7, 1e-12);
  t[3] = t[2];
  EXPECT_THROW(temporal_modulus(t, flat), ArgumentError);
}

TEST(Growth, CaseTable) {
  std::vector<double> x;
  for (int i = -4; i <= 4; ++i) x.push_back(i / 4.0);
  InitialDataSpec nw;
  EXPECT_FALSE(growth_statistic(profile_on(x, std::vector<double>(x.size(), -0.5)), nw, 1.0, 1.0).exceeded);
  InitialDataSpec st;
  st.kind = DataKind::kFunctionalST;
  st.dt = 2.0;
  st.A = 0.0;
  EXPECT_TRUE(growth_statistic(profile_on(x, std::vector<double>(x.size(), 3.0)), st, 1.0, 1.0).exceeded);
  st.dt = 0.5;
  EXPECT_DOUBLE_EQ(growth_f(st, 2.0, 1.0), 0.0 + 0.5 / 0.25 * 4.0 + 1.0);
  InitialDataSpec lt;
  lt.kind = DataKind::kFunctionalLT;
  EXPECT_THROW(growth_f(lt, 1.0, 1.0), ArgumentError);
}

TEST(Exceedance, NonIncreasingByConstruction) {
  const auto x = gaussian(5000, 31);
  const auto p = exceedance_frequencies(x, {-1.0, 0.0, 0.5, 1.0, 2.0});
  EXPECT_TRUE(non_increasing(p));
  EXPECT_EQ(exceedance_frequencies({1.0, 2.0}, {-5.0, 5.0}), (std::vector<double>{1.0, 0.0}));
}

TEST(Replacement, HandCases) {
  std::vector<DeviationPair> same(1000, DeviationPair{1.0, 1.0, 1.0});
  EXPECT_EQ(replacement_deviation({1.0}, {same}, 0.5).probabilities[0], 0.0);
  EXPECT_EQ(replacement_deviation({1.0}, {same}, 0.0).probabilities[0], 1.0);
  EXPECT_THROW(replacement_deviation({1.0, 2.0}, {same}, 0.5), ArgumentError);
  std::vector<DeviationPair> few(10);
  EXPECT_THROW(replacement_deviation({1.0}, {few}, 0.5), ArgumentError);
}

TEST(Envelope, ProbabilityEdges) {
  const auto x = gaussian(2000, 41);
  const auto r = parabolic_envelope(x, {-100.0, 100.0});
  EXPECT_EQ(r.probabilities, (std::vector<double>{1.0, 0.0}));
  EXPECT_THROW(parabolic_envelope(x, {1.0, 1.0}), ArgumentError);
}

}  // namespace
}  // namespace kpzlab::stats
