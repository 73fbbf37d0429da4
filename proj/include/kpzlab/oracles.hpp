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

#ifndef KPZLAB_ORACLES_HPP
#define KPZLAB_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "kpzlab/error.hpp"
#include "kpzlab/lpp_landscape.hpp"
#include "kpzlab/rng.hpp"

#ifndef KPZLAB_DEFAULT_DATA_DIR
#define KPZLAB_DEFAULT_DATA_DIR "data"
#endif

namespace kpzlab::oracles {

// ---------------------------------------------------------------------------
// Exhaustive path enumeration

namespace detail {
inline double enumerate_paths(const LatticeWeights& lw, LatticePoint from, std::size_t i, std::size_t j) {
  const double w = lw(i, j);
  if (i == from.row && j == from.col) return w;
  double best = kNegInf;
  if (i > from.row) best = std::max(best, enumerate_paths(lw, from, i - 1, j));
  if (j > from.col) best = std::max(best, enumerate_paths(lw, from, i, j - 1));
  return w + best;
}
}  // namespace detail

inline double brute_passage_time(const LatticeWeights& lw, LatticePoint from, LatticePoint to) {
  if (lw.n_rows * lw.n_cols > 144) throw SizingError("brute force limited to 144 cells");
  if (from.row >= lw.n_rows || from.col >= lw.n_cols || to.row >= lw.n_rows || to.col >= lw.n_cols)
    throw BoundsError("endpoint outside lattice");
  if (to.row < from.row || to.col < from.col) return kNegInf;
  return detail::enumerate_paths(lw, from, to.row, to.col);
}

// ---------------------------------------------------------------------------
// Linear-scan supremum with the rightmost rule

struct SupResult {
  double z_star = 0.0;
  double value = kNegInf;
  int tie_count = 0;
};

inline SupResult brute_sup(const std::vector<std::pair<double, double>>& candidates) {
  if (candidates.empty()) throw ArgumentError("brute_sup needs at least one candidate");
  SupResult r;
  bool any = false;
  for (const auto& [z, v] : candidates) {
    if (v == kNegInf) continue;
    if (!any || v > r.value) {
      r = SupResult{z, v, 1};
      any = true;
    } else if (v == r.value) {
      ++r.tie_count;
      r.z_star = std::max(r.z_star, z);
    }
  }
  if (!any) throw DegenerateError("all candidates are -inf");
  return r;
}

// ---------------------------------------------------------------------------
// Planted tails: P(X >= s) = exp(-c s^b) for s >= 0.

inline double synth_tail_quantile(double c, double b, double u) { return std::pow(-std::log(u) / c, 1.0 / b); }

inline std::vector<double> synth_tail_sampler(double c, double b, std::size_t count, std::uint64_t seed) {
  if (!(c > 0.0) || !(b > 0.0)) throw ArgumentError("tail sampler needs c > 0 and b > 0");
  Draws draws(seed);
  std::vector<double> out(count);
  for (double& x : out) {
    double u;
    do {
      u = draws.uniform();
    } while (u <= 0.0);
    x = synth_tail_quantile(c, b, u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference quantile tables

enum class TableName { kTwGue, kBaikRains };

inline std::string table_file(TableName name) {
  return name == TableName::kTwGue ? "tw_gue.txt" : "baik_rains.txt";
}

inline std::string data_dir() {
  if (const char* env = std::getenv("KPZLAB_DATA_DIR")) return env;
  return KPZLAB_DEFAULT_DATA_DIR;
}

struct QuantileTable {
  TableName name = TableName::kTwGue;
  std::vector<double> probability;
  std::vector<double> quantile;
  std::string provenance;

  void validate() const {
    if (probability.size() < 2 || probability.size() != quantile.size())
      throw DataError("quantile table needs at least two rows");
    for (std::size_t i = 0; i < probability.size(); ++i) {
      if (!(probability[i] > 0.0 && probability[i] < 1.0)) throw DataError("probability outside (0,1)");
      if (i > 0 && !(probability[i] > probability[i - 1])) throw DataError("probabilities not increasing");
      if (i > 0 && !(quantile[i] > quantile[i - 1])) throw DataError("quantiles not strictly increasing");
    }
    if (probability.front() > 0.001 + 1e-12 || probability.back() < 0.999 - 1e-12)
      throw DataError("table must cover [0.001, 0.999]");
  }

  // Piecewise-linear CDF through the table; 0 below and 1 above its range, so
  // the error outside the table is at most 0.001.
  double cdf(double x) const {
    if (x < quantile.front()) return 0.0;
    if (x >= quantile.back()) return 1.0;
    const auto it = std::upper_bound(quantile.begin(), quantile.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - quantile.begin());
    const double f = (x - quantile[k - 1]) / (quantile[k] - quantile[k - 1]);
    return probability[k - 1] + f * (probability[k] - probability[k - 1]);
  }

  double quantile_at(double p) const {
    if (p <= probability.front()) return quantile.front();
    if (p >= probability.back()) return quantile.back();
    const auto it = std::upper_bound(probability.begin(), probability.end(), p);
    const std::size_t k = static_cast<std::size_t>(it - probability.begin());
    const double f = (p - probability[k - 1]) / (probability[k] - probability[k - 1]);
    return quantile[k - 1] + f * (quantile[k] - quantile[k - 1]);
  }
};

inline QuantileTable parse_quantile_table(std::istream& in, TableName name) {
  QuantileTable t;
  t.name = name;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.provenance += line.substr(std::min<std::size_t>(2, line.size())) + "\n";
      continue;
    }
    std::istringstream ls(line);
    double p, q;
    if (!(ls >> p >> q)) throw DataError("malformed table row: " + line);
    t.probability.push_back(p);
    t.quantile.push_back(q);
  }
  t.validate();
  return t;
}

inline QuantileTable load_quantile_table(const std::string& path, TableName name) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open quantile table " + path);
  return parse_quantile_table(in, name);
}

inline QuantileTable reference_quantiles(TableName name, const std::string& dir = data_dir()) {
  return load_quantile_table(dir + "/" + table_file(name), name);
}

// ---------------------------------------------------------------------------
// sup_{x in [0,1]} [x^{1/2} log^alpha(1/x) - gamma x^2]

struct LogParabolaBound {
  double sup_value = 0.0;
  double argmax = 0.0;
  double normalized = 0.0;  // sup * gamma^{1/3} / log^{4 alpha / 3} gamma
};

inline LogParabolaBound log_parabola_bound(double alpha, double gamma) {
  if (!(alpha > 1.0)) throw DomainError("log_parabola_bound needs alpha > 1");
  if (!(gamma >= 2.0)) throw DomainError("log_parabola_bound needs gamma >= 2");
  auto f = [&](double x) { return std::sqrt(x) * std::pow(std::log(1.0 / x), alpha) - gamma * x * x; };
  constexpr int kPoints = 1000000;
  const double lmin = std::log(1e-300);
  double best = f(1.0), arg = 1.0;
  int best_i = kPoints - 1;
  for (int i = 0; i < kPoints; ++i) {
    const double x = std::exp(lmin * (1.0 - static_cast<double>(i) / (kPoints - 1)));
    const double v = f(x);
    if (v > best) {
      best = v;
      arg = x;
      best_i = i;
    }
  }
  // Refine on the bracketing log-grid cell.
  const auto at = [&](int i) { return std::exp(lmin * (1.0 - static_cast<double>(i) / (kPoints - 1))); };
  const double lo = at(std::max(0, best_i - 1)), hi = at(std::min(kPoints - 1, best_i + 1));
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, 52);
  if (-r.second > best) {
    best = -r.second;
    arg = r.first;
  }
  const double lg = std::log(gamma);
  return LogParabolaBound{best, arg, best * std::cbrt(gamma) / std::pow(lg, 4.0 * alpha / 3.0)};
}

inline const std::vector<double>& delta_gamma_grid() {
  static const std::vector<double> g{2.0, 10.0, 100.0, 1000.0, 10000.0};
  return g;
}

// Largest normalized bound over the gamma grid, before any safety margin.
inline double delta_alpha_raw(double alpha) {
  double d = 0.0;
  for (double g : delta_gamma_grid()) d = std::max(d, log_parabola_bound(alpha, g).normalized);
  return d;
}

inline constexpr double kDeltaMargin = 1.10;

// Delta_2 used to gate permissible pairs, with the 10% safety margin applied.
inline double delta2() {
  static const double d = kDeltaMargin * delta_alpha_raw(2.0);
  return d;
}

// ---------------------------------------------------------------------------
// Two-sided Brownian motion

inline std::vector<double> brownian_sampler(const std::vector<double>& z_grid, double diffusion,
                                            std::uint64_t seed) {
  if (z_grid.empty()) throw ArgumentError("empty grid");
  if (!std::is_sorted(z_grid.begin(), z_grid.end()) ||
      std::adjacent_find(z_grid.begin(), z_grid.end()) != z_grid.end())
    throw ArgumentError("grid must be strictly increasing");
  const auto zero = std::find(z_grid.begin(), z_grid.end(), 0.0);
  if (zero == z_grid.end()) throw ArgumentError("grid must contain 0");
  const std::size_t i0 = static_cast<std::size_t>(zero - z_grid.begin());
  std::vector<double> path(z_grid.size(), 0.0);
  Draws right(derive_seed(seed, 1)), left(derive_seed(seed, 2));
  for (std::size_t i = i0 + 1; i < z_grid.size(); ++i)
    path[i] = path[i - 1] + std::sqrt(diffusion * (z_grid[i] - z_grid[i - 1])) * right.normal();
  for (std::size_t i = i0; i-- > 0;)
    path[i] = path[i + 1] + std::sqrt(diffusion * (z_grid[i + 1] - z_grid[i])) * left.normal();
  return path;
}

}  // namespace kpzlab::oracles

#endif  // KPZLAB_ORACLES_HPP
