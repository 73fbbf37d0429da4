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
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "kpzlab/lpp_landscape.hpp"
#include "kpzlab/oracles.hpp"

namespace kpzlab {
namespace {

std::vector<double> test_grid() { return {-1.0, -0.5, 0.0, 0.5, 1.0}; }

TEST(SampleWeights, DeterministicInSeed) {
  const auto a = sample_weights(1, 1, 7), b = sample_weights(1, 1, 7);
  EXPECT_GE(a(0, 0), 0.0);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(sample_weights(2, 2, 7).weights, sample_weights(2, 2, 7).weights);
}

TEST(SampleWeights, MeanNearOne) {
  const auto w = sample_weights(64, 64, 1);
  const double m = std::accumulate(w.weights.begin(), w.weights.end(), 0.0) / w.weights.size();
  EXPECT_GE(m, 0.8);
  EXPECT_LE(m, 1.2);
}

TEST(SampleWeights, RejectsBadSizes) {
  EXPECT_THROW(sample_weights(0, 3, 1), SizingError);
  EXPECT_THROW(sample_weights(100000, 100000, 1), SizingError);
}

TEST(PassageTime, SingleCell) {
  const auto lw = weights_from(1, 1, {2.5});
  EXPECT_EQ(passage_time_field(lw, {0, 0})(0, 0), 2.5);
}

TEST(PassageTime, TwoByTwoHandExample) {
  const auto lw = weights_from(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(passage_time_field(lw, {0, 0})(1, 1), 8.0);
  EXPECT_EQ(oracles::brute_passage_time(lw, {0, 0}, {1, 1}), 8.0);
}

TEST(PassageTime, MatchesEnumerationOnRandomGrid) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto lw = sample_weights(8, 8, seed);
    const auto g = passage_time_field(lw, {0, 0});
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(g(i, j), oracles::brute_passage_time(lw, {0, 0}, {i, j}));
  }
}

TEST(PassageTime, SourceOutsideIsBoundsError) {
  EXPECT_THROW(passage_time_field(sample_weights(2, 2, 1), {2, 0}), BoundsError);
}

TEST(Scaling, CenterAndUnit) {
  const auto sc = ScalingConstants::for_n(100);
  const SlabLattice lat(sc, Slab{0.0, 1.0}, 4, 1);
  EXPECT_DOUBLE_EQ(lat.to_landscape(4.0 * 100), 0.0);
  EXPECT_NEAR(lat.to_landscape(4.0 * 100 + std::cbrt(16.0) * std::cbrt(100.0)), 1.0, 1e-12);
  EXPECT_NEAR(sc.self_consistency(), 1.0, 1e-12);
}

TEST(Scaling, WindowErrorBeyondReach) {
  const auto sc = ScalingConstants::for_n(50);
  const SlabLattice lat(sc, Slab{0.0, 1.0}, 10, 1);
  EXPECT_THROW(lat.embed(lat.reach() + 1.0), WindowError);
  EXPECT_NO_THROW(lat.embed(lat.reach()));
}

TEST(Strip, SplitIsExactFactorisation) {
  const Strip s(30, 6, 11, 3);
  const auto [lo, hi] = s.split(13);
  const auto full = lattice_slice(s);
  const auto a = lattice_slice(lo), b = lattice_slice(hi);
  const Matrix c = max_plus(a.values, b.values);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) EXPECT_EQ(c(i, j), full.values(i, j));
}

TEST(SampleLandscape, SlabsAreIndependentlySeeded) {
  const auto one = sample_landscape(20, {0.0, 1.0}, {0.0}, 5);
  ASSERT_EQ(one.slabs.size(), 1u);
  EXPECT_EQ(one.slabs[0].values.rows(), 1u);
  const auto two = sample_landscape(20, {0.0, 1.0, 1.5}, {0.0}, 5);
  ASSERT_EQ(two.slabs.size(), 2u);
  EXPECT_NE(two.slab_seeds[0], two.slab_seeds[1]);
  EXPECT_THROW(sample_landscape(20, {0.0}, {0.0}, 5), ArgumentError);
}

TEST(SampleLandscape, AcrossSlabCorrelationIsSmall) {
  std::vector<double> a, b;
  for (std::uint64_t r = 0; r < 4000; ++r) {
    const auto s = sample_landscape(16, {0.0, 1.0, 1.5}, {0.0}, derive_seed(99, r));
    a.push_back(s.slabs[0].values(0, 0));
    b.push_back(s.slabs[1].values(0, 0));
  }
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / b.size();
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  EXPECT_LE(std::abs(sab / std::sqrt(saa * sbb)), 0.05);
}

TEST(ComposeSlabs, SingletonArgmaxGridEqualsFullComposition) {
  const auto s = sample_landscape(40, {0.0, 1.0, 2.0}, test_grid(), 3);
  const auto full = compose_slabs(s, 1, s.slabs[0].y_grid);
  // For (x, y) = (0, 0) recover the argmax and compose through it alone.
  const std::size_t i0 = s.slabs[0].x_grid.size() / 2;
  double best = kNegInf, zb = 0;
  for (std::size_t q = 0; q < s.slabs[0].y_grid.size(); ++q) {
    const double v = s.slabs[0].values(i0, q) + s.slabs[1].values(q, i0);
    if (v >= best) {
      best = v;
      zb = s.slabs[0].y_grid[q];
    }
  }
  const auto one = compose_slabs(s, 1, {zb});
  EXPECT_EQ(one.values(i0, i0), full.values(i0, i0));
}

TEST(ComposeSlabs, StrictModeFlagsBoundaryArgmax) {
  const auto s = sample_landscape(40, {0.0, 1.0, 2.0}, test_grid(), 3);
  EXPECT_THROW(compose_slabs(s, 1, {-0.5, 0.5}, true), WindowError);
  EXPECT_THROW(compose_slabs(s, 0, {0.0}), ArgumentError);
}

TEST(ComposeSlabs, LatticeCompositionMatchesEnumeration) {
  // A strip narrow enough that no path leaves it reproduces corner-to-corner
  // passage on the square, which brute force can enumerate.
  const int n = 5;
  const Strip strip(2 * n - 2, n, 17);
  const auto [lo, hi] = strip.split(n - 1);
  const Matrix c = max_plus(lattice_slice(lo).values, lattice_slice(hi).values);
  std::vector<double> w(n * n);
  // Lattice cell (i, j) sits on antidiagonal i + j at slot floor((i - j) / 2).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = i + j, diff = i - j;
      const int m = (diff - (d & 1)) / 2;
      w[static_cast<std::size_t>(i * n + j)] = d == 0 ? 0.0 : strip.weight(d, m);
    }
  const auto lw = weights_from(n, n, w);
  const double brute = oracles::brute_passage_time(lw, {0, 0}, {n - 1, n - 1});
  EXPECT_EQ(c(static_cast<std::size_t>(n), static_cast<std::size_t>(n)), brute);
}

TEST(Symmetry, IdentityTransformsLeaveSliceUnchanged) {
  const auto s = sample_landscape(40, {0.0, 1.0}, test_grid(), 8).slabs[0];
  using K = SymmetryTransform::Kind;
  for (auto tr : {SymmetryTransform{K::kTimeShift, 0.0}, SymmetryTransform{K::kSpaceShift, 0.0},
                  SymmetryTransform{K::kShear, 0.0}, SymmetryTransform{K::kRescale, 1.0}}) {
    const auto o = apply_symmetry(s, tr);
    EXPECT_EQ(o.values.data(), s.values.data());
    EXPECT_EQ(o.x_grid, s.x_grid);
  }
}

TEST(Symmetry, RescaleRoundTrip) {
  const auto s = sample_landscape(40, {0.0, 1.0}, test_grid(), 8).slabs[0];
  using K = SymmetryTransform::Kind;
  const auto back = apply_symmetry(apply_symmetry(s, {K::kRescale, 2.0}), {K::kRescale, 0.5});
  for (std::size_t k = 0; k < s.values.data().size(); ++k)
    EXPECT_NEAR(back.values.data()[k], s.values.data()[k], 1e-12);
  EXPECT_THROW(apply_symmetry(s, {K::kRescale, 0.0}), ArgumentError);
}

}  // namespace
}  // namespace kpzlab
