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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "kpzlab/fixed_point.hpp"
#include "kpzlab/oracles.hpp"

namespace kpzlab {
namespace {

InitialDataSpec flat(DataKind k) {
  InitialDataSpec s;
  s.kind = k;
  s.A = 1.0;
  s.dt = 1.0;
  s.bet = 1.0;
  s.f = [](double) { return 0.0; };
  return s;
}

// Three-point slice with hand-chosen values.
LandscapeSlice toy_slice() {
  LandscapeSlice s;
  s.slab = Slab{0.0, 1.0};
  s.x_grid = {-1.0, 0.0, 1.0};
  s.y_grid = {-1.0, 0.0, 1.0};
  s.values = Matrix(3, 3);
  const double v[9] = {1, 0, -2, 0.5, 3, 0.5, -1, 2, 4};
  for (std::size_t i = 0; i < 9; ++i) s.values.data()[i] = v[i];
  return s;
}

TEST(InitialData, FlatFunctionalIsValid) {
  EXPECT_NO_THROW(make_initial_data(flat(DataKind::kFunctionalST), {-1.0, 0.0, 1.0}, 1));
}

TEST(InitialData, QuadraticViolatesShortTimeClass) {
  auto s = flat(DataKind::kFunctionalST);
  s.dt = 0.5;
  s.f = [](double z) { return z * z; };
  try {
    make_initial_data(s, symmetric_grid(4.0, 0.5), 1);
    FAIL() << "expected a class violation";
  } catch (const ClassViolationError& e) {
    EXPECT_NE(std::string(e.what()).find("z = "), std::string::npos);
  }
}

TEST(InitialData, BrownianVarianceAtOne) {
  InitialDataSpec s;
  s.kind = DataKind::kBrownian;
  const std::vector<double> grid = symmetric_grid(1.0, 0.25);
  double sum = 0, sq = 0;
  const int count = 100000;
  for (int r = 0; r < count; ++r) {
    const double v = evaluate_initial(make_initial_data(s, grid, derive_seed(5, r)), 1.0);
    sum += v;
    sq += v * v;
  }
  const double var = sq / count - (sum / count) * (sum / count);
  EXPECT_GE(var, 1.9);
  EXPECT_LE(var, 2.1);
}

TEST(EvaluateInitial, NarrowWedgeAndDrift) {
  const auto nw = make_initial_data(InitialDataSpec{}, {-1.0, 0.0, 1.0}, 1);
  EXPECT_EQ(evaluate_initial(nw, 0.0), 0.0);
  EXPECT_EQ(evaluate_initial(nw, 0.3), kNegInf);
  InitialDataSpec s;
  s.kind = DataKind::kBrownianDrift;
  s.mu = 2.0;
  const auto d = make_initial_data(s, {-1.0, 0.0, 0.5, 1.0}, 4);
  EXPECT_EQ(evaluate_initial(d, 0.5), d.path[2] + 2.0 * 0.5);
  EXPECT_THROW(evaluate_initial(d, 1.5), WindowError);
}

TEST(SolveFixedPoint, NarrowWedgeEqualsSliceRow) {
  const auto sl = toy_slice();
  const auto p = solve_fixed_point(make_initial_data(InitialDataSpec{}, sl.x_grid, 1), sl, 1.0);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(p.values[j], sl.values(1, j));
    EXPECT_EQ(p.argmax[j].z_star, 0.0);
  }
}

TEST(SolveFixedPoint, FlatDataIsColumnMax) {
  const auto sl = toy_slice();
  const auto p = solve_fixed_point(make_initial_data(flat(DataKind::kFunctionalST), sl.x_grid, 1), sl, 1.0);
  EXPECT_EQ(p.values, (std::vector<double>{1.0, 3.0, 4.0}));
}

TEST(SolveFixedPoint, RightmostTieBreak) {
  LandscapeSlice sl = toy_slice();
  sl.values(0, 1) = 3.0;
  sl.values(2, 1) = 3.0;  // three-way tie at y = 0
  const auto p = solve_fixed_point(make_initial_data(flat(DataKind::kFunctionalST), sl.x_grid, 1), sl, 1.0);
  const auto a = argmax_location(p, 0.0);
  EXPECT_EQ(a.z_star, 1.0);
  EXPECT_EQ(a.tie_count, 3);
  EXPECT_TRUE(a.at_boundary);
  EXPECT_THROW(argmax_location(p, 0.25), WindowError);
}

TEST(SolveFixedPoint, EqualsLinearScan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sample = sample_landscape(120, {0.0, 1.0}, symmetric_grid(1.5, 0.125), seed);
    const auto& sl = sample.slabs[0];
    InitialDataSpec s;
    s.kind = DataKind::kBrownian;
    const auto d = make_initial_data(s, sl.x_grid, seed);
    const auto p = solve_fixed_point(d, sl, 1.5);
    for (std::size_t j = 0; j < sl.y_grid.size(); ++j) {
      std::vector<std::pair<double, double>> c;
      for (std::size_t i = 0; i < sl.x_grid.size(); ++i)
        c.emplace_back(sl.x_grid[i], evaluate_initial(d, sl.x_grid[i]) + sl.values(i, j));
      const auto b = oracles::brute_sup(c);
      EXPECT_EQ(p.values[j], b.value);
      EXPECT_EQ(p.argmax[j].z_star, b.z_star);
    }
  }
}

TEST(SolveFixedPoint, Errors) {
  const auto sl = toy_slice();
  EXPECT_THROW(solve_fixed_point(make_initial_data(InitialDataSpec{}, sl.x_grid, 1), sl, 2.0), WindowError);
  LandscapeSlice bad = sl;
  for (double& v : bad.values.data()) v = kNegInf;
  EXPECT_THROW(solve_fixed_point(make_initial_data(flat(DataKind::kFunctionalST), sl.x_grid, 1), bad, 1.0),
               DegenerateError);
  // Every argmax on the window edge trips strict mode.
  LandscapeSlice edge = sl;
  for (std::size_t j = 0; j < 3; ++j) edge.values(2, j) = 10.0;
  EXPECT_THROW(solve_fixed_point(make_initial_data(flat(DataKind::kFunctionalST), sl.x_grid, 1), edge, 1.0, true),
               WindowError);
}

TEST(SolveOnLattice, AgreesWithMatrixPath) {
  const auto sc = ScalingConstants::for_n(120);
  const SlabLattice lat(sc, Slab{0.0, 1.0}, half_width_for(sc, 1.0, 1.5), 21);
  std::vector<double> grid;
  for (int m = -lat.embed(1.5); m <= lat.embed(1.5); ++m) grid.push_back(lat.site(m));
  const auto sl = slice_from_lattice(lat, grid, grid);
  InitialDataSpec s;
  s.kind = DataKind::kBrownian;
  const auto d = make_initial_data(s, grid, 3);
  const auto a = solve_fixed_point(d, sl, grid.back());
  const auto b = solve_on_lattice(d, lat, grid.back(), grid.back());
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    EXPECT_NEAR(a.values[j], b.values[j], 1e-9);
    EXPECT_EQ(a.argmax[j].z_star, b.argmax[j].z_star);
  }
}

TEST(ComparisonEvent, HandCases) {
  EXPECT_TRUE(comparison_event(0.5, 1.0, -0.5, -1.0));
  EXPECT_FALSE(comparison_event(1.5, 1.0, -0.5, -1.0));
}

TEST(ScaledIncrement, NestedAndFullIntervals) {
  const double eps = 0.1;
  // The eps slab only reaches about eps^{2/3} as far as the unit slab.
  const auto grid = symmetric_grid(0.25, 1.0 / 64);
  const auto s1 = sample_landscape(60, {0.0, 1.0}, grid, 9);
  const auto h1 = solve_fixed_point(make_initial_data(InitialDataSpec{}, grid, 1), s1.slabs[0], 0.25);
  const auto s2 = sample_landscape(60, {1.0, 1.0 + eps}, grid, 10);
  const double e23 = std::cbrt(eps) * std::cbrt(eps);
  const Interval full{-0.25 / e23, 0.25 / e23};
  const auto inc = scaled_increment(h1, s2.slabs[0], eps, {full, {-0.5, 0.5}, {-1.0, 1.0}});
  EXPECT_EQ(inc.restricted[0].second, inc.value);
  EXPECT_LE(inc.restricted[1].second, inc.restricted[2].second);
  EXPECT_LE(inc.restricted[2].second, inc.value);
  EXPECT_THROW(scaled_increment(h1, s2.slabs[0], eps, {{-100.0, 100.0}}), WindowError);
}

TEST(Proxies, LongProxyAtZeroEqualsSolver) {
  const auto grid = symmetric_grid(1.0, 0.125);
  const auto s = sample_landscape(40, {0.0, 1.0}, grid, 2);
  InitialDataSpec spec;
  spec.kind = DataKind::kBrownian;
  const auto d = make_initial_data(spec, grid, 8);
  EXPECT_EQ(long_proxy(d, s.slabs[0], 1.0), solve_fixed_point(d, s.slabs[0], 1.0).at(0.0));
  const auto nw = make_initial_data(InitialDataSpec{}, grid, 8);
  EXPECT_EQ(long_proxy(nw, s.slabs[0], 1.0), s.slabs[0].values(8, 8));
}

TEST(Proxies, ShortProxyOfConstantProfile) {
  const auto grid = symmetric_grid(0.5, 0.125);
  const auto s = sample_landscape(40, {1.5, 2.0}, grid, 2);
  FixedPointProfile h;
  h.x_grid = grid;
  h.values.assign(grid.size(), 2.5);
  double best = kNegInf;
  for (std::size_t i = 0; i < grid.size(); ++i) best = std::max(best, s.slabs[0].values(i, 4));
  EXPECT_EQ(short_proxy(h, s.slabs[0], 0.5), 2.5 + best);
}

TEST(Proxies, ShortProxyFromOneIsComposition) {
  const auto grid = symmetric_grid(0.5, 0.125);
  const auto s = sample_landscape(40, {0.0, 1.0, 1.5}, grid, 6);
  const auto nw = make_initial_data(InitialDataSpec{}, grid, 1);
  const auto h1 = solve_fixed_point(nw, s.slabs[0], 0.5);
  const auto composed = compose_slabs(s, 1, grid);
  EXPECT_EQ(short_proxy(h1, s.slabs[1], 0.5), composed.values(4, 4));
}

TEST(Permissible, HandCases) {
  EXPECT_TRUE(check_permissible(1.0, 1.0, 5.0));
  EXPECT_FALSE(check_permissible(0.5, 1.0, 5.0));
  const double t = 1.2;
  EXPECT_TRUE(check_permissible(std::pow(t, 0.125), t, 5.0));
  EXPECT_THROW(check_permissible(1.0, 1.0, 0.0), ArgumentError);
}

}  // namespace
}  // namespace kpzlab
