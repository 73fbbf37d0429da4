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

#ifndef KPZLAB_FIXED_POINT_HPP
#define KPZLAB_FIXED_POINT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kpzlab/error.hpp"
#include "kpzlab/lpp_landscape.hpp"
#include "kpzlab/oracles.hpp"

namespace kpzlab {

// ---------------------------------------------------------------------------
// Initial data

enum class DataKind { kNarrowWedge, kFunctionalST, kFunctionalLT, kBrownian, kBrownianDrift };

inline std::string to_string(DataKind k) {
  switch (k) {
    case DataKind::kNarrowWedge: return "narrow-wedge";
    case DataKind::kFunctionalST: return "functional-st";
    case DataKind::kFunctionalLT: return "functional-lt";
    case DataKind::kBrownian: return "brownian";
    case DataKind::kBrownianDrift: return "brownian-drift";
  }
  return "unknown";
}

inline DataKind data_kind_from(const std::string& s) {
  for (DataKind k : {DataKind::kNarrowWedge, DataKind::kFunctionalST, DataKind::kFunctionalLT,
                     DataKind::kBrownian, DataKind::kBrownianDrift})
    if (to_string(k) == s) return k;
  throw ArgumentError("unknown data kind '" + s + "'");
}

struct InitialDataSpec {
  DataKind kind = DataKind::kNarrowWedge;
  // ST class: f(z) <= A + (1 - dt) z^2, |f(0)| <= bet
  double A = 0.0;
  double dt = 1.0;
  double bet = 1.0;
  // LT class: f(z) <= C_sq sqrt(1 + |z|), |f(0)| <= bet
  double C_sq = 1.0;
  double mu = 0.0;
  double diffusion = 2.0;
  std::function<double(double)> f;
};

struct InitialData {
  InitialDataSpec spec;
  std::vector<double> z_grid;
  std::vector<double> path;  // Brownian kinds only, without drift
  std::uint64_t seed = 0;

  DataKind kind() const { return spec.kind; }
};

inline InitialData make_initial_data(const InitialDataSpec& spec, const std::vector<double>& z_grid,
                                     std::uint64_t seed) {
  if (z_grid.empty() || !std::is_sorted(z_grid.begin(), z_grid.end()))
    throw ArgumentError("z grid must be nonempty and sorted");
  if (std::find(z_grid.begin(), z_grid.end(), 0.0) == z_grid.end())
    throw ArgumentError("z grid must contain 0");
  InitialData d{spec, z_grid, {}, seed};
  switch (spec.kind) {
    case DataKind::kNarrowWedge:
      break;
    case DataKind::kFunctionalST:
    case DataKind::kFunctionalLT: {
      if (!spec.f) throw ArgumentError("functional data needs f");
      if (!(spec.bet > 0.0)) throw ArgumentError("bet must be positive");
      if (std::abs(spec.f(0.0)) > spec.bet)
        throw ClassViolationError("|f(0)| = " + std::to_string(std::abs(spec.f(0.0))) + " exceeds bet");
      for (double z : z_grid) {
        const double v = spec.f(z);
        const double bound = spec.kind == DataKind::kFunctionalST
                                 ? spec.A + (1.0 - spec.dt) * z * z
                                 : spec.C_sq * std::sqrt(1.0 + std::abs(z));
        if (!(v <= bound))
          throw ClassViolationError("growth bound violated at z = " + std::to_string(z) + ": f = " +
                                    std::to_string(v) + " > " + std::to_string(bound));
      }
      if (spec.kind == DataKind::kFunctionalST && !(spec.dt > 0.0)) throw ArgumentError("dt must be positive");
      if (spec.kind == DataKind::kFunctionalLT && !(spec.C_sq > 0.0)) throw ArgumentError("C_sq must be positive");
      break;
    }
    case DataKind::kBrownian:
    case DataKind::kBrownianDrift:
      d.path = oracles::brownian_sampler(z_grid, spec.diffusion, seed);
      break;
  }
  return d;
}

inline double evaluate_initial(const InitialData& d, double z) {
  switch (d.kind()) {
    case DataKind::kNarrowWedge:
      return z == 0.0 ? 0.0 : kNegInf;
    case DataKind::kFunctionalST:
    case DataKind::kFunctionalLT:
      return d.spec.f(z);
    case DataKind::kBrownian:
    case DataKind::kBrownianDrift: {
      const auto& g = d.z_grid;
      if (z < g.front() || z > g.back())
        throw WindowError("z = " + std::to_string(z) + " outside path grid span");
      auto it = std::lower_bound(g.begin(), g.end(), z);
      std::size_t k = static_cast<std::size_t>(it - g.begin());
      double v;
      if (g[k] == z) {
        v = d.path[k];
      } else {
        const double f = (z - g[k - 1]) / (g[k] - g[k - 1]);
        v = d.path[k - 1] + f * (d.path[k] - d.path[k - 1]);
      }
      return d.kind() == DataKind::kBrownianDrift ? v + d.spec.mu * z : v;
    }
  }
  return kNegInf;
}

// Uniform grid on [-r, r] with step h that contains 0 exactly.
inline std::vector<double> symmetric_grid(double r, double h) {
  const int k = static_cast<int>(std::floor(r / h + 1e-9));
  std::vector<double> g;
  for (int i = -k; i <= k; ++i) g.push_back(i * h);
  return g;
}

// ---------------------------------------------------------------------------
// Profiles

struct ArgmaxRecord {
  double x = 0.0;
  double z_star = 0.0;
  double value = kNegInf;
  int tie_count = 0;
  bool at_boundary = false;
};

struct FixedPointProfile {
  double t = 0.0;
  std::vector<double> x_grid;
  std::vector<double> values;
  std::vector<ArgmaxRecord> argmax;
  double window = 0.0;
  double boundary_hit_fraction = 0.0;

  double at(double x) const {
    const auto it = std::find(x_grid.begin(), x_grid.end(), x);
    if (it == x_grid.end()) throw WindowError("x = " + std::to_string(x) + " is not a profile grid point");
    return values[static_cast<std::size_t>(it - x_grid.begin())];
  }

  // Piecewise-linear interpolation; -inf outside the grid span.
  double interpolate(double x) const {
    if (x < x_grid.front() || x > x_grid.back()) return kNegInf;
    auto it = std::lower_bound(x_grid.begin(), x_grid.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - x_grid.begin());
    if (x_grid[k] == x) return values[k];
    const double f = (x - x_grid[k - 1]) / (x_grid[k] - x_grid[k - 1]);
    return values[k - 1] + f * (values[k] - values[k - 1]);
  }
};

namespace detail {
inline void finish_profile(FixedPointProfile& p, bool strict) {
  std::size_t hits = 0;
  for (const auto& a : p.argmax) hits += a.at_boundary ? 1 : 0;
  p.boundary_hit_fraction = p.argmax.empty() ? 0.0 : static_cast<double>(hits) / p.argmax.size();
  if (strict && p.boundary_hit_fraction > 0.01)
    throw WindowError("argmax on window boundary for " + std::to_string(100.0 * p.boundary_hit_fraction) +
                      "% of profile points");
}
}  // namespace detail

// Matrix path: h_t(x) = max_{z in window} [h0(z) + L(z, s; x, t)] over the
// slice grid, rightmost maximiser.
inline FixedPointProfile solve_fixed_point(const InitialData& data, const LandscapeSlice& slice, double r,
                                           bool strict = false) {
  if (!std::is_sorted(slice.x_grid.begin(), slice.x_grid.end())) throw ArgumentError("slice x-grid must be sorted");
  if (slice.x_grid.empty() || -r < slice.x_grid.front() - 1e-12 || r > slice.x_grid.back() + 1e-12)
    throw WindowError("window [-" + std::to_string(r) + ", " + std::to_string(r) +
                      "] exceeds slice grid span");
  std::vector<std::size_t> zi;
  std::vector<double> h0;
  for (std::size_t i = 0; i < slice.x_grid.size(); ++i) {
    const double z = slice.x_grid[i];
    if (z < -r || z > r) continue;
    zi.push_back(i);
    h0.push_back(evaluate_initial(data, z));
  }
  if (zi.empty()) throw DegenerateError("window holds no grid points");
  const double zlo = slice.x_grid[zi.front()], zhi = slice.x_grid[zi.back()];
  FixedPointProfile p;
  p.t = slice.slab.t;
  p.window = r;
  p.x_grid = slice.y_grid;
  for (std::size_t j = 0; j < slice.y_grid.size(); ++j) {
    double best = kNegInf, zs = 0.0;
    int ties = 0;
    for (std::size_t q = 0; q < zi.size(); ++q) {
      const double v = h0[q] + slice.values(zi[q], j);
      if (v == kNegInf) continue;
      if (v > best) {
        best = v;
        zs = slice.x_grid[zi[q]];
        ties = 1;
      } else if (v == best) {
        // grid is sorted, so a later tie is further right
        zs = slice.x_grid[zi[q]];
        ++ties;
      }
    }
    if (best == kNegInf) throw DegenerateError("all candidates are -inf at x = " + std::to_string(slice.y_grid[j]));
    p.values.push_back(best);
    p.argmax.push_back(ArgmaxRecord{slice.y_grid[j], zs, best, ties, zi.size() > 1 && (zs == zlo || zs == zhi)});
  }
  detail::finish_profile(p, strict);
  return p;
}

// Lattice path: one line-to-line pass through the slab lattice with boundary
// values h0 on the start-line sites inside [-r, r]. The profile lives on the
// end-line sites with |x| <= out_reach.
inline FixedPointProfile solve_on_lattice(const std::function<double(double)>& h0, const SlabLattice& lat,
                                          double r, double out_reach, bool strict = false) {
  const int M = lat.half_width();
  std::vector<double> b(lat.strip().width(), kNegInf);
  int mlo = M + 1, mhi = -M - 1;
  for (int m = -M; m <= M; ++m) {
    const double z = lat.site(m);
    if (z < -r - 1e-12 || z > r + 1e-12) continue;
    const double v = h0(z);
    b[static_cast<std::size_t>(m + M)] = v == kNegInf ? kNegInf : lat.to_lattice(v);
    if (v != kNegInf) {
      mlo = std::min(mlo, m);
      mhi = std::max(mhi, m);
    }
  }
  if (mlo > mhi) throw DegenerateError("all initial values are -inf on the window");
  const int reach_slots = static_cast<int>(std::min<double>(M, std::floor(out_reach / lat.spacing() + 1e-9) + 1));
  const LineResult res = propagate(lat.strip(), b, SlotRange{-reach_slots, reach_slots});
  FixedPointProfile p;
  p.t = lat.slab().t;
  p.window = r;
  for (int l = -M; l <= M; ++l) {
    const double x = lat.site(l);
    if (std::abs(x) > out_reach + 1e-12) continue;
    const std::size_t k = static_cast<std::size_t>(l + M);
    if (res.value[k] == kNegInf) continue;
    const double v = lat.to_landscape(res.value[k]);
    const int o = res.origin[k];
    p.x_grid.push_back(x);
    p.values.push_back(v);
    p.argmax.push_back(ArgmaxRecord{x, lat.site(o), v, 1, mlo < mhi && (o == mlo || o == mhi)});
  }
  if (p.x_grid.empty()) throw DegenerateError("profile empty; increase strip width or out_reach");
  detail::finish_profile(p, strict);
  return p;
}

inline FixedPointProfile solve_on_lattice(const InitialData& data, const SlabLattice& lat, double r,
                                          double out_reach, bool strict = false) {
  if (data.kind() == DataKind::kNarrowWedge) {
    auto nw = [](double z) { return std::abs(z) < 1e-12 ? 0.0 : kNegInf; };
    return solve_on_lattice(nw, lat, r, out_reach, strict);
  }
  return solve_on_lattice([&](double z) { return evaluate_initial(data, z); }, lat, r, out_reach, strict);
}

// Continues a profile through the next slab (metric composition on grids).
inline FixedPointProfile propagate_profile(const FixedPointProfile& prev, const SlabLattice& lat, double r,
                                           double out_reach, bool strict = false) {
  return solve_on_lattice([&](double z) { return prev.interpolate(z); }, lat, r, out_reach, strict);
}

inline ArgmaxRecord argmax_location(const FixedPointProfile& p, double x) {
  for (const auto& a : p.argmax)
    if (a.x == x) return a;
  throw WindowError("x = " + std::to_string(x) + " is not a profile grid point");
}

inline bool comparison_event(double z_a, double z_mu_minus_a, double z_minus_a, double z_negmu_a) {
  return z_a <= z_mu_minus_a && z_minus_a >= z_negmu_a;
}

// ---------------------------------------------------------------------------
// Scaled increments

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct IncrementSample {
  double epsilon = 0.0;
  double value = kNegInf;
  std::vector<std::pair<Interval, double>> restricted;
  ArgmaxRecord argmax;
};

// grad h_eps = sup_x [ (h1(eps^{2/3} x) - h1(0)) / eps^{1/3} + L(eps^{2/3} x, 1; 0, 1 + eps) / eps^{1/3} ]
// Candidates are the slice's x-grid; intervals are in the rescaled variable x.
inline IncrementSample scaled_increment(const FixedPointProfile& h1, const LandscapeSlice& slice, double epsilon,
                                        const std::vector<Interval>& intervals) {
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  if (std::abs(slice.slab.duration() - epsilon) > 1e-9 * std::max(1.0, epsilon))
    throw ArgumentError("slab duration must equal epsilon");
  const auto y0 = std::find(slice.y_grid.begin(), slice.y_grid.end(), 0.0);
  if (y0 == slice.y_grid.end()) throw WindowError("slice y-grid must contain 0");
  const std::size_t j0 = static_cast<std::size_t>(y0 - slice.y_grid.begin());
  const double e13 = std::cbrt(epsilon), e23 = e13 * e13;
  const double base = h1.interpolate(0.0);
  if (base == kNegInf) throw WindowError("profile does not cover 0");
  std::vector<std::pair<double, double>> cand;  // (x, value)
  for (std::size_t i = 0; i < slice.x_grid.size(); ++i) {
    const double z = slice.x_grid[i];
    const double hv = h1.interpolate(z);
    if (hv == kNegInf) continue;
    cand.emplace_back(z / e23, (hv - base) / e13 + slice.values(i, j0) / e13);
  }
  const double xlo = cand.empty() ? 0.0 : cand.front().first, xhi = cand.empty() ? 0.0 : cand.back().first;
  IncrementSample out;
  out.epsilon = epsilon;
  const auto s = oracles::brute_sup(cand);
  out.value = s.value;
  out.argmax = ArgmaxRecord{0.0, s.z_star, s.value, s.tie_count, s.z_star == xlo || s.z_star == xhi};
  for (const auto& I : intervals) {
    if (I.lo < xlo - 1e-9 || I.hi > xhi + 1e-9)
      throw WindowError("interval exceeds profile coverage [" + std::to_string(xlo) + ", " + std::to_string(xhi) + "]");
    std::vector<std::pair<double, double>> sub;
    for (const auto& c : cand)
      if (I.contains(c.first)) sub.push_back(c);
    out.restricted.emplace_back(I, sub.empty() ? kNegInf : oracles::brute_sup(sub).value);
  }
  return out;
}

// Lattice path for the same quantity: the sup over x of h1(x) - h1(0) plus
// L(x, 1; 0, 1 + eps) is one line-to-point pass through the slab lattice with
// boundary h1 - h1(0). `window` bounds |x| in the original variable and
// intervals are in the rescaled variable x / eps^{2/3}.
inline IncrementSample scaled_increment_on_lattice(const FixedPointProfile& h1, const SlabLattice& lat,
                                                   double epsilon, double window,
                                                   const std::vector<Interval>& intervals, bool strict = false) {
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  if (std::abs(lat.slab().duration() - epsilon) > 1e-9 * std::max(1.0, epsilon))
    throw ArgumentError("slab duration must equal epsilon");
  const double base = h1.interpolate(0.0);
  if (base == kNegInf) throw WindowError("profile does not cover 0");
  const double e13 = std::cbrt(epsilon), e23 = e13 * e13;
  auto pass = [&](double lo, double hi) {
    auto h0 = [&](double z) { return z < lo || z > hi ? kNegInf : h1.interpolate(z) - base; };
    return solve_on_lattice(h0, lat, window, 0.0, strict);
  };
  const FixedPointProfile full = pass(-window, window);
  const ArgmaxRecord a = argmax_location(full, 0.0);
  IncrementSample out;
  out.epsilon = epsilon;
  out.value = full.at(0.0) / e13;
  out.argmax = ArgmaxRecord{0.0, a.z_star / e23, out.value, a.tie_count, a.at_boundary};
  for (const auto& I : intervals) {
    if (I.lo * e23 < -window - 1e-12 || I.hi * e23 > window + 1e-12)
      throw WindowError("interval exceeds the increment window");
    out.restricted.emplace_back(I, pass(I.lo * e23, I.hi * e23).at(0.0) / e13);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Landscape replacement proxies

// H^{t2 -> t1} = max_z [h0(z) + L(z, t1; 0, t2)] over slice grid points in [-r, r].
inline double long_proxy(const InitialData& data, const LandscapeSlice& slice, double r) {
  const auto y0 = std::find(slice.y_grid.begin(), slice.y_grid.end(), 0.0);
  if (y0 == slice.y_grid.end()) throw WindowError("slice y-grid must contain 0");
  const std::size_t j0 = static_cast<std::size_t>(y0 - slice.y_grid.begin());
  std::vector<std::pair<double, double>> cand;
  for (std::size_t i = 0; i < slice.x_grid.size(); ++i) {
    const double z = slice.x_grid[i];
    if (z < -r || z > r) continue;
    cand.emplace_back(z, evaluate_initial(data, z) + slice.values(i, j0));
  }
  if (cand.empty()) throw DegenerateError("window holds no grid points");
  return oracles::brute_sup(cand).value;
}

// H_1^{t2 -> t1} = max_z [h1(z) + L(z, 1 + t1; 0, 1 + t2)].
inline double short_proxy(const FixedPointProfile& h1, const LandscapeSlice& slice, double r) {
  const auto y0 = std::find(slice.y_grid.begin(), slice.y_grid.end(), 0.0);
  if (y0 == slice.y_grid.end()) throw WindowError("slice y-grid must contain 0");
  const std::size_t j0 = static_cast<std::size_t>(y0 - slice.y_grid.begin());
  std::vector<std::pair<double, double>> cand;
  for (std::size_t i = 0; i < slice.x_grid.size(); ++i) {
    const double z = slice.x_grid[i];
    if (z < -r || z > r) continue;
    cand.emplace_back(z, h1.interpolate(z) + slice.values(i, j0));
  }
  if (cand.empty()) throw DegenerateError("window holds no grid points");
  return oracles::brute_sup(cand).value;
}

struct PermissiblePair {
  double a = 1.0;
  double t = 1.0;
  double delta2 = 1.0;
};

// Boundary cases count as permissible.
inline bool check_permissible(double a, double t, double delta2) {
  if (!(delta2 > 0.0)) throw ArgumentError("delta2 must be positive");
  if (!(t >= 1.0)) return false;
  if (!(a >= std::pow(t, 0.125))) return false;
  const double l = std::log(a * std::pow(t, 0.875));
  const double lhs = l <= 0.0 ? 0.0 : std::pow(l, 8.0 / 3.0);
  return lhs <= std::pow(t, 1.0 / 6.0) / (2.0 * std::sqrt(2.0) * delta2);
}

}  // namespace kpzlab

#endif  // KPZLAB_FIXED_POINT_HPP
