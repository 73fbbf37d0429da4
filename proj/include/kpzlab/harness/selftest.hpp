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

#ifndef KPZLAB_HARNESS_SELFTEST_HPP
#define KPZLAB_HARNESS_SELFTEST_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kpzlab/fixed_point.hpp"
#include "kpzlab/lpp_landscape.hpp"
#include "kpzlab/matrix.hpp"
#include "kpzlab/oracles.hpp"
#include "kpzlab/rng.hpp"

// Exact oracle checks: dynamic programming against path enumeration, slab
// composition against the unsplit strip, and the variational solver against
// a linear scan. All comparisons use exact floating-point equality.
namespace kpzlab::harness::selftest {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

namespace detail {

template <typename F>
CheckResult timed(int criterion, std::string name, double limit, F&& body) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  r.time_limit = limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.detail = body();
    r.pass = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.pass && r.seconds > limit) {
    r.pass = false;
    r.detail = "took " + std::to_string(r.seconds) + " s";
  }
  if (r.detail.empty()) r.detail = "exact";
  return r;
}

inline int uniform_int(Draws& d, int lo, int hi) {
  return lo + static_cast<int>(std::floor(d.uniform() * (hi - lo + 1)));
}

}  // namespace detail

// passage_time_field against path enumeration on `instances` grids up to 10 x 10.
inline CheckResult dp_exactness(int instances = 200, std::uint64_t seed = 1) {
  return detail::timed(1, "dynamic programming equals path enumeration", 1.0, [&]() -> std::string {
    for (int k = 0; k < instances; ++k) {
      Draws d(derive_seed(seed, static_cast<std::uint64_t>(k)));
      const std::size_t rows = static_cast<std::size_t>(detail::uniform_int(d, 1, 10));
      const std::size_t cols = static_cast<std::size_t>(detail::uniform_int(d, 1, 10));
      const auto lw = sample_weights(rows, cols, derive_seed(seed, static_cast<std::uint64_t>(k), 1));
      const LatticePoint src{static_cast<std::size_t>(detail::uniform_int(d, 0, static_cast<int>(rows) - 1)),
                             static_cast<std::size_t>(detail::uniform_int(d, 0, static_cast<int>(cols) - 1))};
      const Matrix g = passage_time_field(lw, src);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (g(i, j) != oracles::brute_passage_time(lw, src, LatticePoint{i, j}))
            return "instance " + std::to_string(k) + " differs at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return {};
  });
}

// Splitting a strip at an interior antidiagonal and composing the two halves
// over every slot of the separating line reproduces every passage time.
inline CheckResult composition_exactness(int instances = 100, std::uint64_t seed = 2) {
  return detail::timed(2, "slab composition equals direct passage times", 5.0, [&]() -> std::string {
    for (int k = 0; k < instances; ++k) {
      Draws d(derive_seed(seed, static_cast<std::uint64_t>(k)));
      const int depth = detail::uniform_int(d, 2, 40);
      const int M = detail::uniform_int(d, 0, 12);
      const std::int64_t d0 = detail::uniform_int(d, 0, 7);
      const Strip strip(depth, M, derive_seed(seed, static_cast<std::uint64_t>(k), 1), d0);
      const int cut = detail::uniform_int(d, 1, depth - 1);
      const auto [lo, hi] = strip.split(cut);
      LandscapeSample sample;
      sample.time_knots = {0.0, 0.5, 1.0};
      sample.slabs = {lattice_slice(lo, Slab{0.0, 0.5}), lattice_slice(hi, Slab{0.5, 1.0})};
      const LandscapeSlice full = lattice_slice(strip);
      const auto slots = all_slots(M);
      const LandscapeSlice comp = compose_slabs(sample, 1, std::vector<double>(slots.begin(), slots.end()));
      for (std::size_t i = 0; i < full.x_grid.size(); ++i)
        for (std::size_t j = 0; j < full.y_grid.size(); ++j)
          if (comp.values(i, j) != full.values(i, j))
            return "instance " + std::to_string(k) + " differs at slots (" + std::to_string(slots[i]) + "," +
                   std::to_string(slots[j]) + ")";
    }
    return {};
  });
}

namespace detail {

// Random slice on a small grid containing 0, with values on a coarse
// dyadic lattice so that ties occur often.
inline LandscapeSlice random_slice(Draws& d) {
  const int k = uniform_int(d, 2, 12);
  const double h = std::ldexp(1.0, -uniform_int(d, 0, 3));
  LandscapeSlice s;
  s.x_grid = symmetric_grid(k * h, h);
  s.y_grid = symmetric_grid(uniform_int(d, 0, 6) * h, h);
  s.values = Matrix(s.x_grid.size(), s.y_grid.size());
  for (double& v : s.values.data()) v = uniform_int(d, -8, 8) * 0.25;
  return s;
}

inline InitialData random_data(DataKind kind, const std::vector<double>& grid, Draws& d, std::uint64_t seed) {
  InitialDataSpec spec;
  spec.kind = kind;
  spec.A = 2.0;
  spec.dt = 0.5;
  spec.bet = 2.0;
  spec.C_sq = 2.0;
  spec.mu = 0.5;
  if (kind == DataKind::kFunctionalST || kind == DataKind::kFunctionalLT) {
    std::vector<double> v(grid.size());
    for (double& x : v) x = uniform_int(d, -8, 4) * 0.25;
    const auto zero = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), 0.0) - grid.begin());
    v[zero] = std::clamp(v[zero], -2.0, 2.0);
    spec.f = [grid, v](double z) {
      const auto it = std::lower_bound(grid.begin(), grid.end(), z);
      return it != grid.end() && *it == z ? v[static_cast<std::size_t>(it - grid.begin())] : 0.0;
    };
  }
  return make_initial_data(spec, grid, seed);
}

}  // namespace detail

// solve_fixed_point against a linear scan with the rightmost rule, for every
// data kind.
inline CheckResult solver_exactness(int instances = 100, std::uint64_t seed = 3) {
  return detail::timed(3, "variational solver equals linear scan", 5.0, [&]() -> std::string {
    for (DataKind kind : {DataKind::kNarrowWedge, DataKind::kFunctionalST, DataKind::kFunctionalLT,
                          DataKind::kBrownian, DataKind::kBrownianDrift}) {
      for (int k = 0; k < instances; ++k) {
        Draws d(derive_seed(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(kind)));
        const LandscapeSlice s = detail::random_slice(d);
        const InitialData data = detail::random_data(kind, s.x_grid, d, derive_seed(seed, static_cast<std::uint64_t>(k), 99));
        const double r = s.x_grid.back() * detail::uniform_int(d, 1, 4) / 4.0;
        const FixedPointProfile p = solve_fixed_point(data, s, r);
        for (std::size_t j = 0; j < s.y_grid.size(); ++j) {
          std::vector<std::pair<double, double>> cand;
          for (std::size_t i = 0; i < s.x_grid.size(); ++i)
            if (std::abs(s.x_grid[i]) <= r) cand.emplace_back(s.x_grid[i], evaluate_initial(data, s.x_grid[i]) + s.values(i, j));
          const auto b = oracles::brute_sup(cand);
          if (p.values[j] != b.value || p.argmax[j].z_star != b.z_star || p.argmax[j].tie_count != b.tie_count)
            return to_string(kind) + " instance " + std::to_string(k) + " differs at y = " + std::to_string(s.y_grid[j]);
        }
      }
    }
    return {};
  });
}

inline std::vector<CheckResult> run_all() {
  return {dp_exactness(), composition_exactness(), solver_exactness()};
}

}  // namespace kpzlab::harness::selftest

#endif  // KPZLAB_HARNESS_SELFTEST_HPP
