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

#ifndef KPZLAB_LPP_LANDSCAPE_HPP
#define KPZLAB_LPP_LANDSCAPE_HPP

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kpzlab/error.hpp"
#include "kpzlab/matrix.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

// Largest lattice (in cells) any single sampler call may allocate.
inline constexpr std::size_t kMaxLatticeCells = std::size_t{120} * 1000 * 1000;

// Weights are rounded down to multiples of 2^-32. Every passage time is then an
// exact binary sum, so path decompositions agree bit for bit regardless of the
// order in which partial sums are formed.
// Weights are far below 2^31, so truncation through int64 is exact flooring.
inline double quantize_weight(double w) {
  return static_cast<double>(static_cast<std::int64_t>(w * 0x1p32)) * 0x1p-32;
}

// ---------------------------------------------------------------------------
// Rectangular lattice

struct LatticeWeights {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> weights;
  std::uint64_t seed = 0;

  double operator()(std::size_t i, std::size_t j) const { return weights[i * n_cols + j]; }
};

struct LatticePoint {
  std::size_t row = 0;
  std::size_t col = 0;
};

inline LatticeWeights sample_weights(std::size_t n_rows, std::size_t n_cols, std::uint64_t seed) {
  if (n_rows == 0 || n_cols == 0) throw SizingError("lattice dimensions must be positive");
  if (n_rows > kMaxLatticeCells / n_cols)
    throw SizingError("lattice " + std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                      " exceeds the memory budget");
  LatticeWeights lw{n_rows, n_cols, std::vector<double>(n_rows * n_cols), seed};
  Draws draws(seed);
  for (double& w : lw.weights) w = quantize_weight(draws.exponential());
  return lw;
}

// Builds weights from explicit values; used by tests and small hand examples.
inline LatticeWeights weights_from(std::size_t n_rows, std::size_t n_cols, std::vector<double> values) {
  if (n_rows == 0 || n_cols == 0 || values.size() != n_rows * n_cols)
    throw SizingError("weight matrix shape mismatch");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("weights must be finite and nonnegative");
  return LatticeWeights{n_rows, n_cols, std::move(values), 0};
}

// G(p) over up-right paths from source to p, source weight included. Cells not
// reachable from the source are -inf.
inline Matrix passage_time_field(const LatticeWeights& lw, LatticePoint source) {
  if (source.row >= lw.n_rows || source.col >= lw.n_cols)
    throw BoundsError("source (" + std::to_string(source.row) + "," + std::to_string(source.col) +
                      ") outside lattice");
  Matrix g(lw.n_rows, lw.n_cols, kNegInf);
  for (std::size_t i = source.row; i < lw.n_rows; ++i) {
    for (std::size_t j = source.col; j < lw.n_cols; ++j) {
      double best;
      if (i == source.row && j == source.col) {
        best = 0.0;
      } else {
        const double up = i > source.row ? g(i - 1, j) : kNegInf;
        const double left = j > source.col ? g(i, j - 1) : kNegInf;
        best = std::max(up, left);
      }
      g(i, j) = lw(i, j) + best;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Scaling

struct ScalingConstants {
  int n = 0;
  double height_center = 0.0;
  double height_scale = 0.0;
  double space_scale = 0.0;

  static ScalingConstants for_n(int n) {
    if (n < 1) throw ArgumentError("lattice scale n must be positive");
    const double nd = n;
    return ScalingConstants{n, 4.0 * nd, std::cbrt(16.0) * std::cbrt(nd),
                            std::cbrt(4.0) * std::cbrt(nd * nd)};
  }

  // (space_scale^2 / n) / height_scale; equals 1 when the recentred profile
  // has parabola coefficient exactly one.
  double self_consistency() const { return space_scale * space_scale / n / height_scale; }
};

// ---------------------------------------------------------------------------
// Strip lattice in antidiagonal coordinates.
//
// Antidiagonal d holds the sites with i + j = d0 + d. On an antidiagonal of even
// absolute index, slot m is the site with i - j = 2m; on an odd one it is
// i - j = 2m + 1. So an even site m is fed by slots m-1 and m below it and an
// odd site m by slots m and m+1. Slots are confined to [-M, M]; paths leaving
// the strip are dropped. The start line d = 0 carries no weight, which makes
// splitting at an antidiagonal an exact max-plus factorisation.
//
// Weights are counter based: the weight at absolute antidiagonal D and slot m
// is a pure function of (seed, D, m). Nothing is stored, the DP draws only the
// cells it visits, and both halves of a split see the same weights.

namespace detail {

// SplitMix64 stream used as a URNG for boost's ziggurat.
struct CounterEngine {
  using result_type = std::uint64_t;
  std::uint64_t state;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    state += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state);
  }
};

inline double counter_weight(std::uint64_t seed_key, std::int64_t antidiagonal, int slot) {
  const std::uint64_t cell =
      (static_cast<std::uint64_t>(antidiagonal) << 32) | static_cast<std::uint32_t>(slot);
  CounterEngine e{splitmix64(seed_key ^ splitmix64(cell))};
  boost::random::exponential_distribution<double> ex(1.0);
  return quantize_weight(ex(e));
}

}  // namespace detail

class Strip {
 public:
  Strip() = default;

  Strip(int depth, int half_width, std::uint64_t seed, std::int64_t first_antidiagonal = 0)
      : depth_(depth), half_width_(half_width), d0_(first_antidiagonal), seed_(seed),
        key_(splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {
    if (depth < 1 || half_width < 0) throw SizingError("strip needs depth >= 1 and half width >= 0");
    if (static_cast<std::size_t>(depth) > kMaxLatticeCells / width())
      throw SizingError("strip " + std::to_string(depth) + "x" + std::to_string(width()) +
                        " exceeds the cell budget");
  }

  // Explicit weights, row d-1 holding antidiagonal d; used by tests.
  static Strip from_weights(int depth, int half_width, std::vector<double> weights,
                            std::int64_t first_antidiagonal = 0) {
    Strip s(depth, half_width, 0, first_antidiagonal);
    if (weights.size() != static_cast<std::size_t>(depth) * s.width())
      throw SizingError("strip weight count mismatch");
    s.stored_ = std::make_shared<const std::vector<double>>(std::move(weights));
    return s;
  }

  int depth() const { return depth_; }
  int half_width() const { return half_width_; }
  std::size_t width() const { return 2 * static_cast<std::size_t>(half_width_) + 1; }
  std::int64_t first_antidiagonal() const { return d0_; }
  int start_parity() const { return static_cast<int>(d0_ & 1); }
  std::uint64_t seed() const { return seed_; }

  // d in [1, depth], m in [-M, M]
  double weight(int d, int m) const {
    if (stored_)
      return (*stored_)[static_cast<std::size_t>(d - 1 + off_) * width() + static_cast<std::size_t>(m + half_width_)];
    return detail::counter_weight(key_, d0_ + d, m);
  }

  // Lower part keeps antidiagonals 1..d, upper part d+1..depth.
  std::pair<Strip, Strip> split(int d) const {
    if (d < 1 || d >= depth_) throw ArgumentError("split antidiagonal must be interior");
    Strip a = *this, b = *this;
    a.depth_ = d;
    b.depth_ = depth_ - d;
    b.d0_ = d0_ + d;
    b.off_ = off_ + d;
    return {std::move(a), std::move(b)};
  }

 private:
  int depth_ = 0;
  int half_width_ = 0;
  std::int64_t d0_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t key_ = 0;
  int off_ = 0;  // row offset into stored weights after a split
  std::shared_ptr<const std::vector<double>> stored_;
};

inline constexpr int kNoOrigin = INT_MIN;

// Values on the end line of a strip together with the start slot of the
// maximising path. Among equal maximisers the largest start slot wins.
struct LineResult {
  std::vector<double> value;
  std::vector<int> origin;
};

// Slots of the end line that must be computed; everything else is pruned.
struct SlotRange {
  int lo = INT_MIN;
  int hi = INT_MAX;
};

namespace detail {

template <bool kTrack>
LineResult propagate_impl(const Strip& strip, const std::vector<double>& boundary, SlotRange want) {
  const int M = strip.half_width();
  const int W = static_cast<int>(strip.width());
  const int D = strip.depth();
  if (boundary.size() != strip.width()) throw ArgumentError("boundary length must equal strip width");
  want.lo = std::max(want.lo, -M);
  want.hi = std::min(want.hi, M);

  // Padded rows: index m + M + 1, with -inf sentinels at both ends.
  std::vector<double> cur(W + 2, kNegInf), nxt(W + 2, kNegInf);
  std::vector<int> ocur, onxt;
  if constexpr (kTrack) {
    ocur.assign(W + 2, kNoOrigin);
    onxt.assign(W + 2, kNoOrigin);
  }
  int lo = INT_MAX, hi = INT_MIN;
  for (int k = 0; k < W; ++k) {
    if (boundary[k] != kNegInf) {
      cur[k + 1] = boundary[k];
      if constexpr (kTrack) ocur[k + 1] = k - M;
      lo = std::min(lo, k + 1);
      hi = std::max(hi, k + 1);
    }
  }
  LineResult out;
  out.value.assign(W, kNegInf);
  if constexpr (kTrack) out.origin.assign(W, kNoOrigin);
  if (lo == INT_MAX || want.lo > want.hi) return out;

  int plo = 1, phi = 0;  // range last written into nxt
  for (int d = 1; d <= D; ++d) {
    const bool even = ((strip.start_parity() + d) & 1) == 0;
    const int shift = even ? -1 : 1;
    int nlo = even ? lo : lo - 1;
    int nhi = even ? hi + 1 : hi;
    // Backward cone of the wanted end slots; each step moves a path by at
    // most one slot, and two steps by at most one net.
    const int slack = (D - d + 1) / 2 + 1;
    nlo = std::max({nlo, 1, want.lo + M + 1 - slack});
    nhi = std::min({nhi, W, want.hi + M + 1 + slack});
    for (int i = plo; i <= phi; ++i) {
      nxt[i] = kNegInf;
      if constexpr (kTrack) onxt[i] = kNoOrigin;
    }
    for (int i = nlo; i <= nhi; ++i) {
      const double a = cur[i];
      const double b = cur[i + shift];
      double v;
      if constexpr (kTrack) {
        int o;
        if (a > b) {
          v = a;
          o = ocur[i];
        } else if (b > a) {
          v = b;
          o = ocur[i + shift];
        } else {
          v = a;
          o = std::max(ocur[i], ocur[i + shift]);
        }
        onxt[i] = v == kNegInf ? kNoOrigin : o;
      } else {
        v = std::max(a, b);
      }
      nxt[i] = v == kNegInf ? kNegInf : v + strip.weight(d, i - M - 1);
    }
    std::swap(cur, nxt);
    if constexpr (kTrack) std::swap(ocur, onxt);
    plo = lo;
    phi = hi;
    lo = nlo;
    hi = nhi;
    if (lo > hi) return out;
  }
  for (int m = want.lo; m <= want.hi; ++m) {
    out.value[m + M] = cur[m + M + 1];
    if constexpr (kTrack) out.origin[m + M] = ocur[m + M + 1];
  }
  return out;
}

}  // namespace detail

// Line-to-line passage: value(l) = max_k [boundary(k) + G(k -> l)].
inline LineResult propagate(const Strip& strip, const std::vector<double>& boundary, SlotRange want = {}) {
  return detail::propagate_impl<true>(strip, boundary, want);
}

inline std::vector<double> propagate_values(const Strip& strip, const std::vector<double>& boundary,
                                            SlotRange want = {}) {
  return detail::propagate_impl<false>(strip, boundary, want).value;
}

inline std::vector<double> point_to_line(const Strip& strip, int slot, SlotRange want = {}) {
  const int M = strip.half_width();
  if (slot < -M || slot > M) throw BoundsError("start slot " + std::to_string(slot) + " outside strip");
  std::vector<double> b(strip.width(), kNegInf);
  b[static_cast<std::size_t>(slot + M)] = 0.0;
  return propagate_values(strip, b, want);
}

// G(source -> end) for every source slot in `sources` (rows) and every end
// slot of the strip (columns, slot -M first).
struct PassageField {
  int half_width = 0;
  std::vector<int> sources;
  Matrix g;

  double at(int source, int end) const {
    const auto it = std::find(sources.begin(), sources.end(), source);
    if (it == sources.end()) throw BoundsError("source slot " + std::to_string(source) + " not computed");
    if (end < -half_width || end > half_width) throw BoundsError("end slot outside strip");
    return g(static_cast<std::size_t>(it - sources.begin()), static_cast<std::size_t>(end + half_width));
  }
};

inline PassageField passage_field(const Strip& strip, std::vector<int> sources) {
  PassageField f{strip.half_width(), std::move(sources), Matrix()};
  f.g = Matrix(f.sources.size(), strip.width(), kNegInf);
  for (std::size_t r = 0; r < f.sources.size(); ++r) {
    const auto v = point_to_line(strip, f.sources[r]);
    std::copy(v.begin(), v.end(), f.g.row(r));
  }
  return f;
}

inline std::vector<int> all_slots(int half_width) {
  std::vector<int> s;
  for (int m = -half_width; m <= half_width; ++m) s.push_back(m);
  return s;
}

// (A (max,+) B)(i, j) = max_k A(i, k) + B(k, j).
inline Matrix max_plus(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("max-plus shape mismatch");
  Matrix c(a.rows(), b.cols(), kNegInf);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == kNegInf) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] = std::max(ci[j], aik + bk[j]);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Landscape slabs

struct Slab {
  double s = 0.0;
  double t = 1.0;
  double duration() const { return t - s; }
};

// One independent lattice for a time slab: the n x n square between (0, 0) and
// (n-1, n-1), i.e. 2n - 2 weighted antidiagonals. The duration enters only
// through KPZ scaling, so that
//   L(x, s; y, t) = tau^{1/3} (G(k(x) -> k(y)) - 4n) / height_scale,
//   k(x) = floor(space_scale * x / tau^{2/3}).
class SlabLattice {
 public:
  SlabLattice() = default;
  SlabLattice(const ScalingConstants& sc, Slab slab, int half_width, std::uint64_t seed)
      : sc_(sc), slab_(slab), strip_(2 * sc.n - 2, half_width, seed) {
    if (!(slab.t > slab.s)) throw ArgumentError("slab needs s < t");
    init_scales();
  }
  SlabLattice(const ScalingConstants& sc, Slab slab, Strip strip)
      : sc_(sc), slab_(slab), strip_(std::move(strip)) {
    if (!(slab.t > slab.s)) throw ArgumentError("slab needs s < t");
    init_scales();
  }

  const ScalingConstants& scaling() const { return sc_; }
  const Slab& slab() const { return slab_; }
  const Strip& strip() const { return strip_; }
  int half_width() const { return strip_.half_width(); }

  double spacing() const { return spacing_; }
  double site(int m) const { return m * spacing_; }
  double reach() const { return half_width() * spacing_; }

  int embed(double x) const {
    const double k = std::floor(x / spacing_ + 1e-9);
    if (std::abs(k) > half_width())
      throw WindowError("x = " + std::to_string(x) + " beyond lattice reach; max representable |x| is " +
                        std::to_string(reach()));
    return static_cast<int>(k);
  }

  double to_landscape(double g) const { return (g - sc_.height_center) * value_unit_; }
  double to_lattice(double h) const { return h / value_unit_; }

 private:
  void init_scales() {
    const double tau = slab_.duration();
    spacing_ = std::cbrt(tau * tau) / sc_.space_scale;
    value_unit_ = std::cbrt(tau) / sc_.height_scale;
  }

  ScalingConstants sc_;
  Slab slab_;
  Strip strip_;
  double spacing_ = 1.0;
  double value_unit_ = 1.0;
};

// Slots needed so that every |x| <= reach is representable, plus a margin of
// two transversal-fluctuation widths for paths that wander.
inline int half_width_for(const ScalingConstants& sc, double tau, double reach, double margin = 2.0) {
  const double spacing = std::cbrt(tau * tau) / sc.space_scale;
  return static_cast<int>(std::ceil(reach / spacing + margin * sc.space_scale)) + 1;
}

struct LandscapeSlice {
  Slab slab;
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  Matrix values;  // L(x_i, s; y_j, t)
  int n = 0;
  std::uint64_t seed = 0;
  double boundary_hit_fraction = 0.0;

  // Stationary form K = L + (x - y)^2 / (t - s).
  double stationary(std::size_t i, std::size_t j) const {
    const double d = x_grid[i] - y_grid[j];
    return values(i, j) + d * d / slab.duration();
  }
};

inline LandscapeSlice rescale_to_landscape(const PassageField& field, const SlabLattice& lat,
                                           const std::vector<double>& x_points,
                                           const std::vector<double>& y_points) {
  LandscapeSlice out;
  out.slab = lat.slab();
  out.x_grid = x_points;
  out.y_grid = y_points;
  out.n = lat.scaling().n;
  out.seed = lat.strip().seed();
  out.values = Matrix(x_points.size(), y_points.size());
  for (std::size_t i = 0; i < x_points.size(); ++i) {
    const int k = lat.embed(x_points[i]);
    for (std::size_t j = 0; j < y_points.size(); ++j) {
      const int l = lat.embed(y_points[j]);
      const double g = field.at(k, l);
      if (!std::isfinite(g)) throw WindowError("endpoint pair unreachable inside strip");
      out.values(i, j) = lat.to_landscape(g);
    }
  }
  return out;
}

inline LandscapeSlice slice_from_lattice(const SlabLattice& lat, const std::vector<double>& x_grid,
                                         const std::vector<double>& y_grid) {
  std::vector<int> src;
  for (double x : x_grid) src.push_back(lat.embed(x));
  std::sort(src.begin(), src.end());
  src.erase(std::unique(src.begin(), src.end()), src.end());
  return rescale_to_landscape(passage_field(lat.strip(), src), lat, x_grid, y_grid);
}

// Raw passage times between every pair of strip slots, in lattice units and
// indexed by slot number. Used for exact composition checks, where rescaling
// would introduce rounding.
inline LandscapeSlice lattice_slice(const Strip& strip, Slab slab = Slab{0.0, 1.0}) {
  const auto slots = all_slots(strip.half_width());
  LandscapeSlice out;
  out.slab = slab;
  out.x_grid.assign(slots.begin(), slots.end());
  out.y_grid = out.x_grid;
  out.seed = strip.seed();
  out.values = passage_field(strip, slots).g;
  return out;
}

struct LandscapeSample {
  std::vector<double> time_knots;
  std::vector<LandscapeSlice> slabs;
  std::vector<std::uint64_t> slab_seeds;
};

inline LandscapeSample sample_landscape(int n, const std::vector<double>& time_knots,
                                        const std::vector<double>& x_grid, std::uint64_t seed) {
  if (time_knots.size() < 2) throw ArgumentError("need at least two time knots");
  for (std::size_t i = 1; i < time_knots.size(); ++i)
    if (!(time_knots[i] > time_knots[i - 1])) throw ArgumentError("time knots must be strictly increasing");
  if (x_grid.empty()) throw ArgumentError("empty spatial grid");
  const auto sc = ScalingConstants::for_n(n);
  double reach = 0.0;
  for (double x : x_grid) reach = std::max(reach, std::abs(x));
  LandscapeSample out;
  out.time_knots = time_knots;
  for (std::size_t i = 0; i + 1 < time_knots.size(); ++i) {
    const Slab slab{time_knots[i], time_knots[i + 1]};
    const std::uint64_t s = derive_seed(seed, i);
    const SlabLattice lat(sc, slab, half_width_for(sc, slab.duration(), reach), s);
    out.slabs.push_back(slice_from_lattice(lat, x_grid, x_grid));
    out.slab_seeds.push_back(s);
  }
  return out;
}

// Metric composition across interior knot `mid_index`:
//   L(x, t_{i-1}; y, t_{i+1}) = max_{z in z_grid} L(x, t_{i-1}; z, t_i) + L(z, t_i; y, t_{i+1}).
// z_grid entries must be grid points of both slices. The fraction of (x, y)
// pairs whose maximiser sits at an end of z_grid is recorded; above 1% this is
// an error under strict mode.
inline LandscapeSlice compose_slabs(const LandscapeSample& sample, std::size_t mid_index,
                                    const std::vector<double>& z_grid, bool strict = false) {
  if (mid_index == 0 || mid_index + 1 >= sample.time_knots.size())
    throw ArgumentError("mid_index must name an interior knot");
  if (z_grid.empty()) throw ArgumentError("empty z grid");
  const LandscapeSlice& a = sample.slabs[mid_index - 1];
  const LandscapeSlice& b = sample.slabs[mid_index];
  auto locate = [](const std::vector<double>& g, double z) {
    const auto it = std::find(g.begin(), g.end(), z);
    if (it == g.end()) throw WindowError("z = " + std::to_string(z) + " is not a grid point of the slab");
    return static_cast<std::size_t>(it - g.begin());
  };
  std::vector<std::size_t> ia, ib;
  for (double z : z_grid) {
    ia.push_back(locate(a.y_grid, z));
    ib.push_back(locate(b.x_grid, z));
  }
  LandscapeSlice out;
  out.slab = Slab{a.slab.s, b.slab.t};
  out.x_grid = a.x_grid;
  out.y_grid = b.y_grid;
  out.n = a.n;
  out.seed = a.seed;
  out.values = Matrix(a.x_grid.size(), b.y_grid.size(), kNegInf);
  std::size_t edge = 0;
  for (std::size_t i = 0; i < out.x_grid.size(); ++i) {
    for (std::size_t j = 0; j < out.y_grid.size(); ++j) {
      double best = kNegInf;
      std::size_t arg = 0;
      for (std::size_t q = 0; q < z_grid.size(); ++q) {
        const double v = a.values(i, ia[q]) + b.values(ib[q], j);
        if (v >= best) {
          best = v;
          arg = q;
        }
      }
      out.values(i, j) = best;
      if (z_grid.size() > 1 && (arg == 0 || arg + 1 == z_grid.size())) ++edge;
    }
  }
  out.boundary_hit_fraction = static_cast<double>(edge) / static_cast<double>(out.values.data().size());
  if (strict && out.boundary_hit_fraction > 0.01)
    throw WindowError("composition argmax on z-grid boundary for " +
                      std::to_string(100.0 * out.boundary_hit_fraction) + "% of pairs");
  return out;
}

// ---------------------------------------------------------------------------
// Symmetries of the stationary form K

struct SymmetryTransform {
  enum class Kind { kTimeShift, kSpaceShift, kShear, kRescale };
  Kind kind = Kind::kTimeShift;
  double param = 0.0;
};

inline LandscapeSlice apply_symmetry(const LandscapeSlice& in, const SymmetryTransform& tr) {
  using K = SymmetryTransform::Kind;
  if (tr.kind == K::kRescale && !(tr.param > 0.0)) throw ArgumentError("rescale needs q > 0");
  LandscapeSlice out = in;
  Matrix kmat(in.values.rows(), in.values.cols());
  for (std::size_t i = 0; i < kmat.rows(); ++i)
    for (std::size_t j = 0; j < kmat.cols(); ++j) kmat(i, j) = in.stationary(i, j);

  switch (tr.kind) {
    case K::kTimeShift:
      out.slab = Slab{in.slab.s + tr.param, in.slab.t + tr.param};
      return out;
    case K::kSpaceShift:
      for (double& x : out.x_grid) x += tr.param;
      for (double& y : out.y_grid) y += tr.param;
      return out;
    case K::kShear:
      // K'(x, s; y, t) = K(x + cs, s; y + ct, t): K' is known at x - cs, y - ct.
      if (tr.param == 0.0) return out;
      for (double& x : out.x_grid) x -= tr.param * in.slab.s;
      for (double& y : out.y_grid) y -= tr.param * in.slab.t;
      break;
    case K::kRescale: {
      // K'(x, s; y, t) = q K(x/q^2, s/q^3; y/q^2, t/q^3).
      const double q = tr.param;
      if (q == 1.0) return out;
      const double q2 = q * q, q3 = q2 * q;
      for (double& x : out.x_grid) x *= q2;
      for (double& y : out.y_grid) y *= q2;
      out.slab = Slab{in.slab.s * q3, in.slab.t * q3};
      for (double& v : kmat.data()) v *= q;
      break;
    }
  }
  const double ntau = out.slab.duration();
  for (std::size_t i = 0; i < kmat.rows(); ++i)
    for (std::size_t j = 0; j < kmat.cols(); ++j) {
      const double d = out.x_grid[i] - out.y_grid[j];
      out.values(i, j) = kmat(i, j) - d * d / ntau;
    }
  return out;
}

}  // namespace kpzlab

#endif  // KPZLAB_LPP_LANDSCAPE_HPP
