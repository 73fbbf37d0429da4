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

#ifndef KPZLAB_HARNESS_EXPERIMENTS_HPP
#define KPZLAB_HARNESS_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kpzlab/error.hpp"
#include "kpzlab/fixed_point.hpp"
#include "kpzlab/harness/config.hpp"
#include "kpzlab/harness/criteria.hpp"
#include "kpzlab/harness/table.hpp"
#include "kpzlab/lpp_landscape.hpp"
#include "kpzlab/oracles.hpp"
#include "kpzlab/rng.hpp"
#include "kpzlab/stats.hpp"

namespace kpzlab::harness {

struct Metric {
  std::string name;
  double value = 0.0;
  std::string note;
};

struct Verdict {
  std::string property;
  bool pass = false;
  std::string detail;
};

struct Summary {
  std::string experiment;
  std::size_t rows = 0;
  std::vector<Metric> metrics;
  std::vector<Metric> targets;
  std::vector<Verdict> verdicts;

  bool pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
  }

  double metric(const std::string& name) const {
    for (const auto& m : metrics)
      if (m.name == name) return m.value;
    throw DataError("summary of " + experiment + " has no metric '" + name + "'");
  }

  const Verdict& verdict(const std::string& property) const {
    for (const auto& v : verdicts)
      if (v.property == property) return v;
    throw DataError("summary of " + experiment + " has no verdict '" + property + "'");
  }
};

using Rows = std::vector<std::vector<double>>;

// A registered experiment. `replica` maps (config, replica seed) to rows in
// the fixed column schema; `summarize` maps the full table to metrics and
// pass/fail verdicts.
struct Experiment {
  std::string name;
  std::string claim;
  std::vector<std::string> columns;
  std::function<void(ExperimentConfig&)> defaults;
  std::function<void(const ExperimentConfig&)> validate;
  std::function<Rows(const ExperimentConfig&, std::uint64_t)> replica;
  std::function<Summary(const ExperimentConfig&, const ResultTable&)> summarize;
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

inline std::string nums(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

// Records a verdict; estimator errors (too few samples, empty ranges) become
// a failed verdict that carries the reason.
template <typename F>
void gate(Summary& s, const std::string& property, F&& f) {
  try {
    const std::pair<bool, std::string> r = f();
    s.verdicts.push_back(Verdict{property, r.first, r.second});
  } catch (const Error& e) {
    s.verdicts.push_back(Verdict{property, false, std::string("not evaluable: ") + e.what()});
  }
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

inline double median(const std::vector<double>& v) { return stats::empirical_quantile(v, 0.5); }

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return v.size() < 2 ? 0.0 : s / static_cast<double>(v.size() - 1);
}

inline const oracles::QuantileTable& table(oracles::TableName name) {
  static const oracles::QuantileTable tw = oracles::reference_quantiles(oracles::TableName::kTwGue);
  static const oracles::QuantileTable br = oracles::reference_quantiles(oracles::TableName::kBaikRains);
  return name == oracles::TableName::kTwGue ? tw : br;
}

inline stats::KSReport ks_table(const std::vector<double>& x, oracles::TableName name, double threshold,
                                std::string label) {
  const auto& t = table(name);
  return stats::ks_reference(x, [&](double v) { return t.cdf(v); }, threshold, std::move(label));
}

// Largest |x| whose lattice site can still reach the end-line origin.
inline double geometric_reach(const ScalingConstants& sc, double tau) {
  return sc.n / sc.space_scale * std::cbrt(tau * tau);
}

inline SlabLattice make_lattice(const ScalingConstants& sc, Slab slab, double reach, std::uint64_t seed) {
  return SlabLattice(sc, slab, half_width_for(sc, slab.duration(), reach), seed);
}

inline double snap(const SlabLattice& lat, double x) { return lat.site(lat.embed(x)); }

// Functional kinds use the flat profile f = 0, which lies in both classes for
// every admissible parameter choice.
inline InitialDataSpec data_spec(const ExperimentConfig& c, DataKind kind) {
  InitialDataSpec s;
  s.kind = kind;
  s.A = c.A;
  s.dt = c.dt;
  s.bet = c.bet;
  s.C_sq = c.C_sq;
  s.mu = c.mu;
  if (kind == DataKind::kFunctionalST || kind == DataKind::kFunctionalLT) s.f = [](double) { return 0.0; };
  return s;
}

// Initial data sampled on the start-line sites of `lat` inside [-r, r].
inline InitialData initial_on(const ExperimentConfig& c, DataKind kind, const SlabLattice& lat, double r,
                              std::uint64_t seed) {
  std::vector<double> z;
  for (int m = -lat.half_width(); m <= lat.half_width(); ++m)
    if (std::abs(lat.site(m)) <= r + 1e-12) z.push_back(lat.site(m));
  return make_initial_data(data_spec(c, kind), z, seed);
}

// Profiles at knots[1..] of data pushed through independent slabs between
// consecutive knots. reach[k] is the profile half-width kept at knots[k + 1];
// the first slab starts from data on [-data_window, data_window].
inline std::vector<FixedPointProfile> run_chain(const ExperimentConfig& c, DataKind kind,
                                                const std::vector<double>& knots, const std::vector<double>& reach,
                                                double data_window, std::uint64_t seed) {
  if (knots.size() < 2 || reach.size() + 1 != knots.size()) throw ArgumentError("chain needs one reach per slab");
  const auto sc = ScalingConstants::for_n(c.n);
  std::vector<FixedPointProfile> out;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const Slab slab{knots[k], knots[k + 1]};
    const double start = k == 0 ? data_window : reach[k - 1];
    const SlabLattice lat = make_lattice(sc, slab, std::max(start, reach[k]), derive_seed(seed, k));
    if (k == 0)
      out.push_back(solve_on_lattice(initial_on(c, kind, lat, start, derive_seed(seed, 1u << 20)), lat, start,
                                     reach[k], c.strict_window));
    else
      out.push_back(propagate_profile(out.back(), lat, start, reach[k], c.strict_window));
  }
  return out;
}

// Windows that keep every start site able to reach the final origin: walking
// back from the last knot, each slab adds its own transversal reach.
inline std::vector<double> backward_reaches(const ScalingConstants& sc, const std::vector<double>& knots,
                                            double scale) {
  std::vector<double> reach(knots.size() - 1, 0.0);
  double r = 0.0;
  for (std::size_t k = knots.size() - 1; k-- > 1;) {
    r += std::min(scale * std::cbrt(std::pow(knots[k + 1] - knots[k], 2.0)),
                  geometric_reach(sc, knots[k + 1] - knots[k]));
    reach[k - 1] = r;
  }
  return reach;
}

inline void require_kind(const ExperimentConfig& c, std::initializer_list<DataKind> kinds) {
  std::string names;
  for (DataKind k : kinds) {
    if (c.data == k) return;
    names += (names.empty() ? "" : ", ") + to_string(k);
  }
  throw ConfigError(c.experiment + " supports data " + names + "; got " + to_string(c.data));
}

inline void require_increasing(const std::vector<double>& v, const std::string& key) {
  require(!v.empty(), key + " must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) require(v[i] > v[i - 1], key + " must be strictly increasing");
}

}  // namespace detail

namespace experiments {

using detail::gate;
using detail::num;
using detail::nums;
using detail::require;
using oracles::TableName;

// ---------------------------------------------------------------------------
// one-point-tw: narrow-wedge profile at time 1 on one lattice per replica.

inline Experiment one_point_tw() {
  Experiment e;
  e.name = "one-point-tw";
  e.claim = "narrow-wedge height at time 1 is GUE Tracy-Widom and its parabola-recentred profile is stationary";
  e.columns = {"x", "x_site", "h", "k"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 800;
    c.replicas = 4000;
    c.x_points = {0.0, 0.5, 1.0};
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kNarrowWedge});
    require(!c.x_points.empty(), "x_points must not be empty");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    double R = 0.0;
    for (double x : c.x_points) R = std::max(R, std::abs(x));
    const SlabLattice lat = detail::make_lattice(sc, Slab{0.0, 1.0}, R, seed);
    const auto data = detail::initial_on(c, DataKind::kNarrowWedge, lat, 0.0, seed);
    const auto p = solve_on_lattice(data, lat, 0.0, R + lat.spacing(), c.strict_window);
    Rows rows;
    for (double x : c.x_points) {
      const double xs = detail::snap(lat, x);
      const double h = p.at(xs);
      rows.push_back({x, xs, h, h + xs * xs});
    }
    return rows;
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    const auto xs = t.distinct("x");
    for (double x : xs) {
      const auto k = t.values_where("k", "x", x);
      s.metrics.push_back({"mean_k(x=" + num(x) + ")", detail::mean(k), ""});
      s.metrics.push_back({"var_k(x=" + num(x) + ")", detail::variance(k), ""});
      s.metrics.push_back({"ks_tw(x=" + num(x) + ")", detail::ks_table(k, TableName::kTwGue, 1.0, "").statistic,
                           "KS distance of the recentred height to the Tracy-Widom table"});
    }
    s.targets.push_back({"tracy_widom_mean", criteria::kTracyWidomMean, ""});
    s.targets.push_back({"tracy_widom_variance", criteria::kTracyWidomVariance, ""});
    gate(s, "one-point law at x = 0", [&] {
      const auto r = detail::ks_table(t.values_where("k", "x", 0.0), TableName::kTwGue, criteria::kOnePointKs, "");
      return std::make_pair(r.pass, "KS = " + num(r.statistic) + " <= " + num(criteria::kOnePointKs));
    });
    gate(s, "stationarity of recentred marginals", [&] {
      if (xs.size() < 2) throw ArgumentError("needs at least two x points");
      double worst = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
          worst = std::max(worst, stats::ks_statistic(t.values_where("k", "x", xs[i]), t.values_where("k", "x", xs[j])));
      s.metrics.push_back({"max_pairwise_ks", worst, ""});
      return std::make_pair(worst <= criteria::kStationarityKs,
                            "max pairwise KS = " + num(worst) + " <= " + num(criteria::kStationarityKs));
    });
    (void)c;
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// baik-rains: sup_x [B(x) + narrow-wedge profile] against the Brownian-data
// fixed point on an independent lattice.

inline Experiment baik_rains() {
  Experiment e;
  e.name = "baik-rains";
  e.claim = "the Brownian-data height at the origin equals in law sup_x [B(x) + Airy2(x) - x^2], the Baik-Rains law";
  e.columns = {"direct", "fixed_point"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 4000;
    c.data = DataKind::kBrownian;
    c.x_window = 3.5;
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kBrownian});
    require(c.x_window > 0.0, "x_window must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const double W = c.x_window;
    const SlabLattice a = detail::make_lattice(sc, Slab{0.0, 1.0}, W, derive_seed(seed, 1));
    const auto nw = detail::initial_on(c, DataKind::kNarrowWedge, a, 0.0, 0);
    const auto p = solve_on_lattice(nw, a, 0.0, W, c.strict_window);
    const auto path = oracles::brownian_sampler(p.x_grid, 2.0, derive_seed(seed, 2));
    double direct = kNegInf;
    for (std::size_t i = 0; i < path.size(); ++i) direct = std::max(direct, path[i] + p.values[i]);
    const SlabLattice b = detail::make_lattice(sc, Slab{0.0, 1.0}, W, derive_seed(seed, 3));
    const auto data = detail::initial_on(c, DataKind::kBrownian, b, W, derive_seed(seed, 4));
    const double fp = solve_on_lattice(data, b, W, 0.0, c.strict_window).at(0.0);
    return Rows{{direct, fp}};
  };
  e.summarize = [](const ExperimentConfig&, const ResultTable& t) {
    Summary s;
    const auto d = t.values("direct"), f = t.values("fixed_point");
    s.metrics.push_back({"mean_direct", detail::mean(d), ""});
    s.metrics.push_back({"mean_fixed_point", detail::mean(f), ""});
    s.metrics.push_back({"var_direct", detail::variance(d), ""});
    s.metrics.push_back({"var_fixed_point", detail::variance(f), ""});
    s.metrics.push_back({"ks_direct_vs_table", detail::ks_table(d, TableName::kBaikRains, 1.0, "").statistic,
                         "diagnostic; finite-n bias expected"});
    s.metrics.push_back({"ks_fixed_point_vs_table", detail::ks_table(f, TableName::kBaikRains, 1.0, "").statistic,
                         "diagnostic; finite-n bias expected"});
    s.targets.push_back({"baik_rains_mean", 0.0, ""});
    gate(s, "direct and fixed-point samples agree", [&] {
      const auto r = stats::ks_two_sample(d, f, criteria::kBaikRainsKs);
      s.metrics.push_back({"ks_direct_vs_fixed_point", r.statistic, ""});
      return std::make_pair(r.pass, "KS = " + num(r.statistic) + " <= " + num(criteria::kBaikRainsKs));
    });
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// symmetries: eight distributional identities, one (lhs, rhs) row each.

inline const std::vector<std::string>& symmetry_names() {
  static const std::vector<std::string> n{"time-shift",           "space-shift",         "shear",
                                          "rescale",              "airy-stationarity",   "brownian-stationarity",
                                          "argmax-time-scaling",  "argmax-drift-shift"};
  return n;
}

inline Experiment symmetries() {
  Experiment e;
  e.name = "symmetries";
  e.claim = "the stationary landscape form is invariant under time shift, space shift, shear and 1:2:3 rescaling; "
            "Brownian data is stationary; argmax locations scale and shift as predicted";
  e.columns = {"identity", "lhs", "rhs"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 4000;
    c.data = DataKind::kBrownian;
    c.x_window = 3.5;
    c.mu = 0.5;
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kBrownian});
    require(c.x_window > 1.0, "x_window must exceed 1");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    using K = SymmetryTransform::Kind;
    const auto sc = ScalingConstants::for_n(c.n);
    const double W = c.x_window;
    // One slab, sources {0, x1}, targets {0, x1, x2} on lattice sites.
    const SlabLattice l1 = detail::make_lattice(sc, Slab{0.0, 1.0}, 1.0, derive_seed(seed, 1));
    const double x1 = detail::snap(l1, 0.5), x2 = detail::snap(l1, 1.0);
    const LandscapeSlice s1 = slice_from_lattice(l1, {0.0, x1}, {0.0, x1, x2});
    const double k00 = s1.stationary(0, 0);
    Rows rows;
    auto add = [&](double lhs, double rhs) { rows.push_back({static_cast<double>(rows.size()), lhs, rhs}); };

    const SlabLattice l2 = detail::make_lattice(sc, Slab{1.0, 2.0}, 0.0, derive_seed(seed, 2));
    add(k00, slice_from_lattice(l2, {0.0}, {0.0}).stationary(0, 0));
    add(k00, s1.stationary(1, 1));
    add(k00, apply_symmetry(s1, SymmetryTransform{K::kShear, x1}).stationary(0, 1));

    // q K(0, 0; 0, 1/q^3) against K(0, 0; 0, 1), both built from two composed
    // half slabs so the two sides share the same lattice construction.
    const double q = 2.0, tq = 1.0 / (q * q * q);
    auto composed = [&](double tau, std::uint64_t s) {
      const auto chain = detail::run_chain(c, DataKind::kNarrowWedge, {0.0, tau / 2, tau},
                                           {detail::geometric_reach(sc, tau / 2), 0.0}, 0.0, s);
      LandscapeSlice out;
      out.slab = Slab{0.0, tau};
      out.x_grid = {0.0};
      out.y_grid = {0.0};
      out.values = Matrix(1, 1, chain.back().at(0.0));
      return out;
    };
    add(composed(1.0, derive_seed(seed, 11)).stationary(0, 0),
        apply_symmetry(composed(tq, derive_seed(seed, 3)), SymmetryTransform{K::kRescale, q}).stationary(0, 0));
    add(k00, s1.stationary(0, 2));

    // Brownian data: increments over [0, x] and argmax records.
    const SlabLattice b1 = detail::make_lattice(sc, Slab{0.0, 1.0}, W, derive_seed(seed, 4));
    const double xb = detail::snap(b1, 1.0);
    const auto p1 = solve_on_lattice(detail::initial_on(c, DataKind::kBrownian, b1, W, derive_seed(seed, 5)), b1, W,
                                     xb, c.strict_window);
    Draws draws(derive_seed(seed, 6));
    add(p1.at(xb) - p1.at(0.0), std::sqrt(2.0 * xb) * draws.normal());
    const double z1 = argmax_location(p1, 0.0).z_star;

    const SlabLattice b3 = detail::make_lattice(sc, Slab{0.0, 0.5}, W * std::cbrt(0.25), derive_seed(seed, 7));
    const double Wh = W * std::cbrt(0.25);
    const auto ph = solve_on_lattice(detail::initial_on(c, DataKind::kBrownian, b3, Wh, derive_seed(seed, 8)), b3,
                                     Wh, 0.0, c.strict_window);
    add(z1, std::cbrt(4.0) * argmax_location(ph, 0.0).z_star);

    const SlabLattice b2 = detail::make_lattice(sc, Slab{0.0, 1.0}, W, derive_seed(seed, 9));
    const auto pm = solve_on_lattice(detail::initial_on(c, DataKind::kBrownianDrift, b2, W, derive_seed(seed, 10)),
                                     b2, W, 0.0, c.strict_window);
    add(argmax_location(pm, 0.0).z_star, z1 + 0.5 * c.mu);
    return rows;
  };
  e.summarize = [](const ExperimentConfig&, const ResultTable& t) {
    Summary s;
    const auto& names = symmetry_names();
    for (std::size_t k = 0; k < names.size(); ++k) {
      gate(s, names[k], [&] {
        const auto r = stats::ks_two_sample(t.values_where("lhs", "identity", static_cast<double>(k)),
                                            t.values_where("rhs", "identity", static_cast<double>(k)),
                                            criteria::kSymmetryKs, names[k]);
        s.metrics.push_back({"ks_" + names[k], r.statistic, ""});
        return std::make_pair(r.pass, "KS = " + num(r.statistic) + " <= " + num(criteria::kSymmetryKs));
      });
    }
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// exit-bounds: location of the maximiser for the height at the origin.

inline Experiment exit_bounds() {
  Experiment e;
  e.name = "exit-bounds";
  e.claim = "the maximiser Z of the variational problem has tails P(|Z| >= r) <= C exp(-r^3 / C)";
  e.columns = {"z_star", "h", "boundary"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 10000;
    c.data = DataKind::kBrownian;
    c.x_window = 3.5;
    c.thresholds = {0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kBrownian, DataKind::kFunctionalST});
    detail::require_increasing(c.thresholds, "thresholds");
    require(c.thresholds.front() > 0.0, "thresholds must be positive");
    require(c.x_window > c.thresholds.back(), "x_window must exceed the largest threshold");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const SlabLattice lat = detail::make_lattice(sc, Slab{0.0, 1.0}, c.x_window, derive_seed(seed, 1));
    const auto p = solve_on_lattice(detail::initial_on(c, c.data, lat, c.x_window, derive_seed(seed, 2)), lat,
                                    c.x_window, 0.0, c.strict_window);
    const auto a = argmax_location(p, 0.0);
    return Rows{{a.z_star, a.value, a.at_boundary ? 1.0 : 0.0}};
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    std::vector<double> absz;
    for (double z : t.values("z_star")) absz.push_back(std::abs(z));
    const auto p = stats::exceedance_frequencies(absz, c.thresholds);
    for (std::size_t i = 0; i < p.size(); ++i)
      s.metrics.push_back({"p_exceed(r=" + num(c.thresholds[i]) + ")", p[i], ""});
    s.metrics.push_back({"boundary_fraction", detail::mean(t.values("boundary")), ""});
    s.targets.push_back({"tail_exponent", criteria::kArgmaxTailExponent, ""});
    gate(s, "exceedance strictly decreasing", [&] {
      return std::make_pair(stats::strictly_decreasing(p), nums(p));
    });
    gate(s, "log-log slope", [&] {
      std::vector<double> rs, ps;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (criteria::kArgmaxFitRange.contains(c.thresholds[i])) {
          rs.push_back(c.thresholds[i]);
          ps.push_back(p[i]);
        }
      const double b = stats::loglog_slope(rs, ps);
      s.metrics.push_back({"loglog_slope", b, "radii in [0.75, 2]"});
      return std::make_pair(criteria::kArgmaxSlope.contains(b), "slope = " + num(b) + " in [" +
                                                                     num(criteria::kArgmaxSlope.lo) + ", " +
                                                                     num(criteria::kArgmaxSlope.hi) + "]");
    });
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// modulus-spatial: Hoelder-1/2-with-logs ratio of the profile on [-1, 1].

inline Summary modulus_summary(const ExperimentConfig& c, const ResultTable& t) {
  Summary s;
  const auto r = t.values("sup_ratio");
  const auto p = stats::exceedance_frequencies(r, c.thresholds);
  s.metrics.push_back({"median_sup_ratio", detail::median(r), ""});
  s.metrics.push_back({"median_secondary_ratio", detail::median(t.values("secondary_ratio")), ""});
  for (std::size_t i = 0; i < p.size(); ++i)
    s.metrics.push_back({"p_exceed(r=" + num(c.thresholds[i]) + ")", p[i], ""});
  gate(s, "exceedance non-increasing", [&] { return std::make_pair(stats::non_increasing(p), nums(p)); });
  return s;
}

inline Experiment modulus_spatial() {
  Experiment e;
  e.name = "modulus-spatial";
  e.claim = "the height profile has spatial modulus sqrt(d) log^2(4/d) with stretched-exponential tails";
  e.columns = {"sup_ratio", "secondary_ratio"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 4000;
    c.x_window = 4.0;
    c.thresholds = {0.25, 0.5, 1.0};
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kNarrowWedge, DataKind::kBrownian, DataKind::kFunctionalST});
    detail::require_increasing(c.thresholds, "thresholds");
    require(c.x_window >= 1.0, "x_window must be at least 1");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const double W = c.data == DataKind::kNarrowWedge ? 0.0 : c.x_window;
    const SlabLattice lat = detail::make_lattice(sc, Slab{0.0, 1.0}, std::max(W, 1.0), derive_seed(seed, 1));
    const auto p = solve_on_lattice(detail::initial_on(c, c.data, lat, W, derive_seed(seed, 2)), lat, W,
                                    1.0 + lat.spacing(), c.strict_window);
    const auto m = stats::spatial_modulus(p);
    return Rows{{m.sup_ratio, m.secondary_ratio}};
  };
  e.summarize = modulus_summary;
  return e;
}

// ---------------------------------------------------------------------------
// modulus-temporal: h_t(0) on a time grid inside [1, 2).

inline Experiment modulus_temporal() {
  Experiment e;
  e.name = "modulus-temporal";
  e.claim = "t -> h_t(0) has temporal modulus d^{1/3} log^{2/3}(2/d) with stretched-exponential tails";
  e.columns = {"sup_ratio", "secondary_ratio"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 100;
    c.replicas = 1000;
    c.x_window = 2.0;
    c.time_knots = {1.0, 1.125, 1.25, 1.375, 1.5, 1.625, 1.75, 1.875};
    c.thresholds = {0.5, 1.0, 2.0};
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kNarrowWedge, DataKind::kBrownian, DataKind::kFunctionalST});
    detail::require_increasing(c.time_knots, "time_knots");
    detail::require_increasing(c.thresholds, "thresholds");
    require(c.time_knots.size() >= 8, "time_knots needs at least 8 points");
    require(c.time_knots.front() > 0.0, "time_knots must be positive");
    require(c.time_knots.back() - c.time_knots.front() < 2.0, "time_knots must span less than 2");
    require(c.x_window > 0.0, "x_window must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    std::vector<double> knots{0.0};
    knots.insert(knots.end(), c.time_knots.begin(), c.time_knots.end());
    const std::vector<double> reach(knots.size() - 1, c.x_window);
    const double W = c.data == DataKind::kNarrowWedge ? 0.0 : c.x_window + 3.0;
    const auto prof = detail::run_chain(c, c.data, knots, reach, W, seed);
    std::vector<double> h;
    for (const auto& p : prof) h.push_back(p.interpolate(0.0));
    const auto m = stats::temporal_modulus(c.time_knots, h);
    return Rows{{m.sup_ratio, m.secondary_ratio}};
  };
  e.summarize = modulus_summary;
  return e;
}

// ---------------------------------------------------------------------------
// growth: sup of the time-1 profile over [-M, M] against f(s, h0, M) + s.

inline Experiment growth() {
  Experiment e;
  e.name = "growth";
  e.claim = "P(sup_{|x|<=M} h_t(x) >= f(s, h0, M) + s) <= M exp(-s^{3/2} / C)";
  e.columns = {"s", "sup", "threshold", "exceeded"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 4000;
    c.data = DataKind::kBrownian;
    c.x_window = 1.0;
    c.thresholds = {2.0, 4.0, 8.0};
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kNarrowWedge, DataKind::kBrownian, DataKind::kFunctionalST});
    detail::require_increasing(c.thresholds, "thresholds");
    require(c.thresholds.front() > 0.0, "thresholds must be positive");
    require(c.x_window >= 1.0, "x_window (M) must be at least 1");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const double M = c.x_window;
    const double W = c.data == DataKind::kNarrowWedge ? 0.0 : M + detail::geometric_reach(sc, 1.0);
    const SlabLattice lat = detail::make_lattice(sc, Slab{0.0, 1.0}, std::max(W, M), derive_seed(seed, 1));
    const auto p = solve_on_lattice(detail::initial_on(c, c.data, lat, W, derive_seed(seed, 2)), lat, W,
                                    M + lat.spacing(), c.strict_window);
    const auto spec = detail::data_spec(c, c.data);
    Rows rows;
    for (double s : c.thresholds) {
      const auto g = stats::growth_statistic(p, spec, M, s);
      rows.push_back({s, g.sup_value, g.threshold, g.exceeded ? 1.0 : 0.0});
    }
    return rows;
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    std::vector<double> freq;
    for (double x : c.thresholds) {
      freq.push_back(detail::mean(t.values_where("exceeded", "s", x)));
      s.metrics.push_back({"p_exceed(s=" + num(x) + ")", freq.back(), ""});
    }
    gate(s, "exceedance non-increasing in s", [&] { return std::make_pair(stats::non_increasing(freq), nums(freq)); });
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// tails: one-point samples for tail fits.

inline Experiment tails() {
  Experiment e;
  e.name = "tails";
  e.claim = "one-point upper tail exp(-c s^{3/2}) with c = 4/3 (narrow wedge) or 2/3 (Brownian), lower tail exp(-s^3 / 12)";
  e.columns = {"h", "z_star"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 100000;
    c.x_window = 3.5;
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kNarrowWedge, DataKind::kBrownian});
    require(c.x_window > 0.0, "x_window must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const double W = c.data == DataKind::kNarrowWedge ? 0.0 : c.x_window;
    const SlabLattice lat = detail::make_lattice(sc, Slab{0.0, 1.0}, W, derive_seed(seed, 1));
    const auto p = solve_on_lattice(detail::initial_on(c, c.data, lat, W, derive_seed(seed, 2)), lat, W, 0.0,
                                    c.strict_window);
    const auto a = argmax_location(p, 0.0);
    return Rows{{a.value, a.z_star}};
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    const auto h = t.values("h");
    s.metrics.push_back({"mean", detail::mean(h), ""});
    s.metrics.push_back({"variance", detail::variance(h), ""});
    s.targets.push_back({"upper_exponent", criteria::kUpperTailExponent, ""});
    s.targets.push_back({"upper_coefficient",
                         c.data == DataKind::kNarrowWedge ? criteria::kNarrowWedgeUpperCoefficient
                                                          : criteria::kStationaryUpperCoefficient,
                         ""});
    s.targets.push_back({"lower_exponent", criteria::kLowerTailExponent, ""});
    gate(s, "upper-tail exponent", [&] {
      const auto f = stats::fit_upper_tail(h);
      s.metrics.push_back({"upper_exponent_hat", f.exponent_hat, "log(-log P) vs log s over quantiles [0.90, 0.999]"});
      s.metrics.push_back({"upper_coefficient_hat", f.coefficient_hat, ""});
      s.metrics.push_back({"upper_r_squared", f.r_squared, ""});
      s.metrics.push_back({"upper_profile_exponent", f.profile_exponent, "diagnostic, free prefactor"});
      s.metrics.push_back({"upper_profile_coefficient", f.profile_coefficient, "diagnostic, free prefactor"});
      return std::make_pair(criteria::kUpperExponent.contains(f.exponent_hat),
                            "exponent_hat = " + num(f.exponent_hat) + " in [" + num(criteria::kUpperExponent.lo) +
                                ", " + num(criteria::kUpperExponent.hi) + "]");
    });
    gate(s, "lower-tail exponent", [&] {
      const auto f = stats::fit_lower_tail(h);
      s.metrics.push_back({"lower_exponent_hat", f.exponent_hat, "quantiles [0.001, 0.1]"});
      s.metrics.push_back({"lower_coefficient_hat", f.coefficient_hat, ""});
      s.metrics.push_back({"lower_r_squared", f.r_squared, ""});
      s.metrics.push_back({"lower_profile_exponent", f.profile_exponent, "diagnostic, free prefactor"});
      return std::make_pair(criteria::kLowerExponent.contains(f.exponent_hat),
                            "exponent_hat = " + num(f.exponent_hat) + " in [" + num(criteria::kLowerExponent.lo) +
                                ", " + num(criteria::kLowerExponent.hi) + "]");
    });
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// increment-tail: scaled increments between times 1 and 1 + eps.

inline Experiment increment_tail() {
  Experiment e;
  e.name = "increment-tail";
  e.claim = "the scaled increment (h_{1+eps}(0) - h_1(0)) / eps^{1/3} approaches the Baik-Rains law and has upper tail exp(-c s^{3/2})";
  e.columns = {"eps", "value", "r1", "r2", "argmax", "boundary"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 200;
    c.replicas = 4000;
    c.eps = {0.1, 0.01};
    c.x_window = 4.0;
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kNarrowWedge, DataKind::kBrownian, DataKind::kFunctionalST});
    require(!c.eps.empty(), "eps must not be empty");
    for (double x : c.eps) require(x > 0.0 && x < 0.2, "eps values must lie in (0, 0.2)");
    require(c.x_window >= 2.0, "x_window must be at least 2 (intervals reach |x| = 2)");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const std::vector<Interval> intervals{{-1.0, 1.0}, {-2.0, 2.0}};
    Rows rows;
    for (std::size_t k = 0; k < c.eps.size(); ++k) {
      const double eps = c.eps[k];
      const std::uint64_t s = derive_seed(seed, k);
      const double delta = std::min(0.5, 5.0 * eps);
      const double W = c.x_window * std::cbrt(eps * eps);
      const double R1 = W + detail::geometric_reach(sc, delta);
      const double W0 = c.data == DataKind::kNarrowWedge ? 0.0 : R1 + detail::geometric_reach(sc, 1.0 - delta);
      const auto prof = detail::run_chain(c, c.data, {0.0, 1.0 - delta, 1.0}, {R1, W}, W0, derive_seed(s, 1));
      const SlabLattice lat = detail::make_lattice(sc, Slab{1.0, 1.0 + eps}, W, derive_seed(s, 2));
      const auto inc = scaled_increment_on_lattice(prof.back(), lat, eps, W, intervals, c.strict_window);
      rows.push_back({eps, inc.value, inc.restricted[0].second, inc.restricted[1].second, inc.argmax.z_star,
                      inc.argmax.at_boundary ? 1.0 : 0.0});
    }
    return rows;
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    std::vector<double> eps = t.distinct("eps");
    std::vector<double> ks;
    for (double x : eps) {
      const auto v = t.values_where("value", "eps", x);
      ks.push_back(detail::ks_table(v, TableName::kBaikRains, 1.0, "").statistic);
      s.metrics.push_back({"ks_baik_rains(eps=" + num(x) + ")", ks.back(), ""});
      s.metrics.push_back({"mean(eps=" + num(x) + ")", detail::mean(v), ""});
      s.metrics.push_back({"boundary_fraction(eps=" + num(x) + ")", detail::mean(t.values_where("boundary", "eps", x)), ""});
    }
    s.targets.push_back({"upper_exponent", criteria::kUpperTailExponent, ""});
    gate(s, "KS to Baik-Rains does not grow as eps shrinks", [&] {
      if (eps.size() < 2) throw ArgumentError("needs at least two eps values");
      // eps ascending: ks.front() is the smallest eps
      const bool ok = ks.front() <= ks.back() + criteria::kIncrementKsSlack;
      return std::make_pair(ok, "KS(eps=" + num(eps.front()) + ") = " + num(ks.front()) + " <= KS(eps=" +
                                    num(eps.back()) + ") = " + num(ks.back()) + " + " +
                                    num(criteria::kIncrementKsSlack));
    });
    gate(s, "nested restricted sups", [&] {
      const auto v = t.values("value"), r1 = t.values("r1"), r2 = t.values("r2");
      std::size_t bad = 0;
      for (std::size_t i = 0; i < v.size(); ++i) bad += (r1[i] <= r2[i] && r2[i] <= v[i]) ? 0 : 1;
      return std::make_pair(bad == 0, std::to_string(bad) + " rows violate r1 <= r2 <= value");
    });
    gate(s, "increment upper-tail exponent", [&] {
      if (eps.empty()) throw ArgumentError("no rows");
      const auto v = t.values_where("value", "eps", eps.front());
      const auto f = stats::fit_upper_tail(v, stats::upper_band(v, 0.75, 0.985));
      s.metrics.push_back({"upper_exponent_hat", f.exponent_hat, "smallest eps, quantiles [0.75, 0.985]"});
      s.metrics.push_back({"upper_coefficient_hat", f.coefficient_hat, ""});
      s.metrics.push_back({"upper_profile_exponent", f.profile_exponent, "diagnostic, free prefactor"});
      return std::make_pair(criteria::kUpperExponent.contains(f.exponent_hat),
                            "exponent_hat = " + num(f.exponent_hat) + " in [" + num(criteria::kUpperExponent.lo) +
                                ", " + num(criteria::kUpperExponent.hi) + "]");
    });
    (void)c;
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// Landscape replacement. Value and proxy share the later slab; the value also
// passes through the earlier one.

inline Summary replacement_summary(const ExperimentConfig& c, const ResultTable& t, const std::string& key) {
  Summary s;
  const auto params = t.distinct(key);
  std::vector<std::vector<stats::DeviationPair>> pairs;
  for (double p : params) {
    const auto v = t.values_where("value", key, p), q = t.values_where("proxy", key, p),
               w = t.values_where("normalization", key, p);
    std::vector<stats::DeviationPair> g;
    for (std::size_t i = 0; i < v.size(); ++i) g.push_back({v[i], q[i], w[i]});
    pairs.push_back(std::move(g));
  }
  gate(s, "deviation probability non-increasing", [&] {
    const auto r = stats::replacement_deviation(params, pairs, criteria::kDeviationThreshold);
    for (std::size_t i = 0; i < params.size(); ++i)
      s.metrics.push_back({"p_deviation(" + key + "=" + num(params[i]) + ")", r.probabilities[i], "threshold 1"});
    const bool ends = r.probabilities.back() <= r.probabilities.front();
    return std::make_pair(r.monotone && ends, nums(r.probabilities) + " over " + key + " " + nums(params));
  });
  try {
    const auto r = stats::replacement_deviation(params, pairs, 0.25);
    for (std::size_t i = 0; i < params.size(); ++i)
      s.metrics.push_back({"p_deviation_0.25(" + key + "=" + num(params[i]) + ")", r.probabilities[i], "diagnostic"});
  } catch (const Error&) {
  }
  (void)c;
  return s;
}

inline Experiment replace_long() {
  Experiment e;
  e.name = "replace-long";
  e.claim = "h_{a+at}(0) is close to the proxy built from the slab (a, a+at) alone, with deviation probability "
            "decaying like exp(-t^{1/3} / C)";
  e.columns = {"ratio", "value", "proxy", "normalization", "boundary"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 100;
    c.replicas = 2000;
    c.data = DataKind::kFunctionalLT;
    c.a = 1.0;
    c.ratios = {2.0, 8.0, 32.0};
    c.x_window = 3.0;
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kFunctionalLT, DataKind::kNarrowWedge});
    detail::require_increasing(c.ratios, "ratios");
    require(c.ratios.front() >= 1.0, "ratios must be at least 1");
    require(c.a >= 1.0, "a must be at least 1");
    require(c.x_window > 0.0, "x_window must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    const double a = c.a;
    auto window = [&](double t) { return c.x_window * std::cbrt((a * t) * (a * t)); };
    const double R = window(c.ratios.back());
    const double W0 = c.data == DataKind::kNarrowWedge ? 0.0 : R + detail::geometric_reach(sc, a);
    const SlabLattice la = detail::make_lattice(sc, Slab{0.0, a}, std::max(R, W0), derive_seed(seed, 1));
    const auto h0 = detail::initial_on(c, c.data, la, W0, derive_seed(seed, 2));
    const auto ha = solve_on_lattice(h0, la, W0, R + la.spacing(), c.strict_window);
    Rows rows;
    for (double t : c.ratios) {
      const double W = window(t);
      // One weight field for every ratio: common random numbers across t.
      const SlabLattice lb = detail::make_lattice(sc, Slab{a, a + a * t}, W, derive_seed(seed, 3));
      const auto v = solve_on_lattice([&](double z) { return ha.interpolate(z); }, lb, W, 0.0, c.strict_window);
      const auto hb = detail::initial_on(c, c.data, lb, W, derive_seed(seed, 2));
      const auto p = solve_on_lattice(hb, lb, W, 0.0, c.strict_window);
      const bool edge = argmax_location(v, 0.0).at_boundary || argmax_location(p, 0.0).at_boundary;
      rows.push_back({t, v.at(0.0), p.at(0.0), 1.0 / std::cbrt(a * t), edge ? 1.0 : 0.0});
    }
    return rows;
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) { return replacement_summary(c, t, "ratio"); };
  return e;
}

inline double short_a(const ExperimentConfig& c, double t) { return c.a > 0.0 ? c.a : std::pow(t, 0.125); }

inline Experiment replace_short() {
  Experiment e;
  e.name = "replace-short";
  e.claim = "h_{1+1/a+1/(at)}(0) is close to the proxy that skips the slab (1, 1+1/(at)) for permissible (a, t)";
  e.columns = {"t", "a", "value", "proxy", "normalization"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 100;
    c.replicas = 2000;
    c.data = DataKind::kFunctionalST;
    c.ratios = {1.0, 1.18, 1.36};
    c.a = 0.0;
    c.x_window = 3.0;
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kFunctionalST, DataKind::kNarrowWedge, DataKind::kBrownian});
    detail::require_increasing(c.ratios, "ratios");
    require(c.x_window > 0.0, "x_window must be positive");
    const double d2 = oracles::delta2();
    for (double t : c.ratios)
      require(check_permissible(short_a(c, t), t, d2),
              "pair (a, t) = (" + num(short_a(c, t)) + ", " + num(t) + ") is not permissible at Delta_2 = " + num(d2));
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    struct Times {
      double t, a, t1, t2, wa, wb;
    };
    std::vector<Times> plan;
    double R1 = 0.0;
    for (double t : c.ratios) {
      const double a = short_a(c, t), t1 = 1.0 / (a * t), t2 = 1.0 / a + t1;
      const double wb = std::min(c.x_window * std::cbrt((t2 - t1) * (t2 - t1)), detail::geometric_reach(sc, t2 - t1));
      const double wa = wb + std::min(c.x_window * std::cbrt(t1 * t1), detail::geometric_reach(sc, t1));
      plan.push_back({t, a, t1, t2, wa, wb});
      R1 = std::max(R1, wa);
    }
    const double W0 = c.data == DataKind::kNarrowWedge ? 0.0 : R1 + detail::geometric_reach(sc, 1.0);
    const auto h1 = detail::run_chain(c, c.data, {0.0, 1.0}, {R1}, W0, derive_seed(seed, 1)).back();
    auto through = [&](const FixedPointProfile& p, const SlabLattice& lat, double r, double out) {
      return solve_on_lattice([&](double z) { return p.interpolate(z); }, lat, r, out, c.strict_window);
    };
    Rows rows;
    for (const auto& q : plan) {
      const SlabLattice la = detail::make_lattice(sc, Slab{1.0, 1.0 + q.t1}, q.wa, derive_seed(seed, 2));
      const SlabLattice lb = detail::make_lattice(sc, Slab{1.0 + q.t1, 1.0 + q.t2}, q.wb, derive_seed(seed, 3));
      const double value = through(through(h1, la, q.wa, q.wb), lb, q.wb, 0.0).at(0.0);
      const double proxy = through(h1, lb, q.wb, 0.0).at(0.0);
      rows.push_back({q.t, q.a, value, proxy, std::cbrt(q.a)});
    }
    return rows;
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s = replacement_summary(c, t, "t");
    s.metrics.push_back({"delta2", oracles::delta2(), "gate for permissible pairs"});
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// Laws of the iterated logarithm. Each replica is one trajectory on a fixed
// grid; the report takes the median over replicas of the grid statistic.

inline Summary lil_summary(const ResultTable& t, const std::string& key, const std::string& value, double target,
                           bool long_time) {
  Summary s;
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by;
  const std::size_t kc = t.column(key), vc = t.column(value);
  for (const auto& r : t.rows) {
    by[r.replica].first.push_back(r.values[kc]);
    by[r.replica].second.push_back(r.values[vc]);
  }
  std::vector<double> stat;
  std::vector<double> grid;
  for (auto& [rep, kv] : by) {
    grid = kv.first;
    const auto est = long_time ? stats::lil_longtime(kv.second, kv.first, target)
                               : stats::lil_shorttime(kv.second, kv.first);
    stat.push_back(est.statistic);
  }
  s.targets.push_back({"lil_constant", target, long_time ? "(3/4)^{2/3} narrow wedge" : "(3/2)^{2/3}"});
  if (!grid.empty()) {
    const double lo = *std::min_element(grid.begin(), grid.end()), hi = *std::max_element(grid.begin(), grid.end());
    s.metrics.push_back({"grid_decades", std::log10(hi / lo), ""});
  }
  gate(s, "median statistic inside the sanity band", [&] {
    if (stat.empty()) throw DataError("no trajectories");
    const double m = detail::median(stat);
    s.metrics.push_back({"median_statistic", m, "sanity band only, not a constant estimate"});
    s.metrics.push_back({"mean_statistic", detail::mean(stat), ""});
    const double lo = criteria::kLilBand.lo * target, hi = criteria::kLilBand.hi * target;
    return std::make_pair(m >= lo && m <= hi, "median = " + num(m) + " in [" + num(lo) + ", " + num(hi) + "]");
  });
  return s;
}

inline Experiment lil_long() {
  Experiment e;
  e.name = "lil-long";
  e.claim = "limsup h_t(0) / (t^{1/3} (log log t)^{2/3}) = (3/4)^{2/3} for narrow-wedge data";
  e.columns = {"t", "h", "boundary"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 100;
    c.replicas = 500;
    c.x_window = 4.0;
    c.time_knots.clear();
    for (int k = 2; k <= 16; ++k) c.time_knots.push_back(std::ldexp(1.0, k));
  };
  e.validate = [](const ExperimentConfig& c) {
    // Brownian and functional data need windows that grow with the final time.
    detail::require_kind(c, {DataKind::kNarrowWedge});
    detail::require_increasing(c.time_knots, "time_knots");
    require(c.time_knots.front() > std::exp(1.0), "time_knots must exceed e");
    require(c.x_window > 0.0, "x_window must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    std::vector<double> knots{0.0};
    knots.insert(knots.end(), c.time_knots.begin(), c.time_knots.end());
    std::vector<double> reach;
    for (std::size_t k = 1; k < knots.size(); ++k)
      reach.push_back(k + 1 == knots.size() ? 0.0 : c.x_window * std::cbrt(knots[k] * knots[k]));
    const auto prof = detail::run_chain(c, DataKind::kNarrowWedge, knots, reach, 0.0, seed);
    Rows rows;
    for (std::size_t k = 0; k < prof.size(); ++k)
      rows.push_back({c.time_knots[k], prof[k].at(0.0), prof[k].boundary_hit_fraction});
    return rows;
  };
  e.summarize = [](const ExperimentConfig&, const ResultTable& t) {
    return lil_summary(t, "t", "h", criteria::kLilLongNarrowWedge, true);
  };
  return e;
}

inline Experiment lil_short() {
  Experiment e;
  e.name = "lil-short";
  e.claim = "limsup (h_{1+eps}(0) - h_1(0)) / (eps^{1/3} (log log 1/eps)^{2/3}) = (3/2)^{2/3} as eps -> 0";
  e.columns = {"eps", "increment"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 50;
    c.replicas = 200;
    c.data = DataKind::kFunctionalST;
    c.x_window = 3.0;
    c.eps.clear();
    for (int k = 0; k <= 8; ++k) c.eps.push_back(0.3 * std::pow(10.0, -0.5 * k));
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_kind(c, {DataKind::kFunctionalST, DataKind::kNarrowWedge, DataKind::kBrownian});
    require(!c.eps.empty(), "eps must not be empty");
    std::vector<double> e(c.eps);
    std::sort(e.begin(), e.end());
    require(std::adjacent_find(e.begin(), e.end()) == e.end(), "eps values must be distinct");
    require(e.front() > 0.0 && e.back() < std::exp(-1.0), "eps values must lie in (0, 1/e)");
    require(c.x_window > 0.0, "x_window must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const auto sc = ScalingConstants::for_n(c.n);
    std::vector<double> eps(c.eps);
    std::sort(eps.begin(), eps.end());
    // A short refinement slab before time 1 resolves h_1 on the eps_min scale.
    const double delta = std::min(0.5, 5.0 * eps.front());
    std::vector<double> knots{0.0, 1.0 - delta, 1.0};
    for (double x : eps) knots.push_back(1.0 + x);
    const auto reach = detail::backward_reaches(sc, knots, c.x_window);
    const double W0 = c.data == DataKind::kNarrowWedge
                          ? 0.0
                          : reach[0] + detail::geometric_reach(sc, 1.0 - delta);
    const auto prof = detail::run_chain(c, c.data, knots, reach, W0, seed);
    const double h1 = prof[1].at(0.0);
    Rows rows;
    for (std::size_t k = 0; k < eps.size(); ++k) rows.push_back({eps[k], prof[k + 2].at(0.0) - h1});
    return rows;
  };
  e.summarize = [](const ExperimentConfig&, const ResultTable& t) {
    return lil_summary(t, "eps", "increment", criteria::kLilShort, false);
  };
  return e;
}

// ---------------------------------------------------------------------------
// envelope: parabolic envelopes of the landscape and of Brownian motion.

inline Experiment envelope() {
  Experiment e;
  e.name = "envelope";
  e.claim = "landscape and Brownian parabolic envelopes have tails exp(-s^{3/2} / C)";
  e.columns = {"brownian", "landscape"};
  e.defaults = [](ExperimentConfig& c) {
    c.n = 50;
    c.replicas = 10000;
    c.x_window = 1.0;
    c.delta = 1.0;
    c.thresholds = {2.0, 3.0, 4.0, 5.0, 6.0};
  };
  e.validate = [](const ExperimentConfig& c) {
    detail::require_increasing(c.thresholds, "thresholds");
    require(c.thresholds.size() >= 2 && c.thresholds.front() > 0.0, "thresholds need two positive values");
    require(c.x_window > 0.0, "x_window (r) must be positive");
    require(c.delta > 0.0, "delta must be positive");
  };
  e.replica = [](const ExperimentConfig& c, std::uint64_t seed) {
    const double r = c.x_window;
    // Brownian: sup over |z| <= r and y of B(y) - B(z) - (y - z)^2 / 4.
    const double h = 0.01, Y = r + 12.0;
    const auto grid = symmetric_grid(Y, h);
    const auto B = oracles::brownian_sampler(grid, 2.0, derive_seed(seed, 1));
    double bsup = kNegInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(grid[i]) > r + 1e-12) continue;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double d = grid[j] - grid[i];
        bsup = std::max(bsup, B[j] - B[i] - d * d / 4.0);
      }
    }
    // Landscape: sup over sources |z| <= r and targets |y| <= r + 4 of
    // L(z, 0; y, 1) + (y - z)^2 / (1 + delta).
    const auto sc = ScalingConstants::for_n(c.n);
    const SlabLattice lat = detail::make_lattice(sc, Slab{0.0, 1.0}, r + 4.0, derive_seed(seed, 2));
    std::vector<int> src;
    for (double z : symmetric_grid(r, 0.5)) src.push_back(lat.embed(z));
    const auto f = passage_field(lat.strip(), src);
    double lsup = kNegInf;
    for (std::size_t i = 0; i < src.size(); ++i)
      for (int m = -lat.half_width(); m <= lat.half_width(); ++m) {
        const double y = lat.site(m), z = lat.site(src[i]);
        const double g = f.at(src[i], m);
        if (std::abs(y) > r + 4.0 || g == kNegInf) continue;
        lsup = std::max(lsup, lat.to_landscape(g) + (y - z) * (y - z) / (1.0 + c.delta));
      }
    return Rows{{bsup, lsup}};
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    s.targets.push_back({"envelope_exponent", 1.5, ""});
    gate(s, "Brownian envelope log-log slope", [&] {
      const auto r = stats::parabolic_envelope(t.values("brownian"), c.thresholds);
      for (std::size_t i = 0; i < r.parameters.size(); ++i)
        s.metrics.push_back({"p_brownian(s=" + num(r.parameters[i]) + ")", r.probabilities[i], ""});
      const double b = stats::loglog_slope(r.parameters, r.probabilities);
      s.metrics.push_back({"brownian_loglog_slope", b, ""});
      return std::make_pair(criteria::kEnvelopeSlope.contains(b), "slope = " + num(b) + " in [" +
                                                                       num(criteria::kEnvelopeSlope.lo) + ", " +
                                                                       num(criteria::kEnvelopeSlope.hi) + "]");
    });
    gate(s, "landscape envelope decays", [&] {
      const auto r = stats::parabolic_envelope(t.values("landscape"), c.thresholds);
      for (std::size_t i = 0; i < r.parameters.size(); ++i)
        s.metrics.push_back({"p_landscape(s=" + num(r.parameters[i]) + ")", r.probabilities[i], ""});
      return std::make_pair(r.monotone, nums(r.probabilities));
    });
    return s;
  };
  return e;
}

// ---------------------------------------------------------------------------
// lemma-a2: the deterministic log-parabola bound over the gamma grid.

inline Experiment lemma_a2() {
  Experiment e;
  e.name = "lemma-a2";
  e.claim = "sup_x [x^{1/2} log^alpha(1/x) - gamma x^2] <= Delta_alpha gamma^{-1/3} log^{4 alpha / 3} gamma for gamma >= 2";
  e.columns = {"gamma", "sup", "argmax", "normalized"};
  e.defaults = [](ExperimentConfig& c) {
    c.replicas = 1;
    c.alpha = 2.0;
  };
  e.validate = [](const ExperimentConfig& c) { require(c.alpha > 1.0, "alpha must exceed 1"); };
  e.replica = [](const ExperimentConfig& c, std::uint64_t) {
    Rows rows;
    for (double g : oracles::delta_gamma_grid()) {
      const auto b = oracles::log_parabola_bound(c.alpha, g);
      rows.push_back({g, b.sup_value, b.argmax, b.normalized});
    }
    return rows;
  };
  e.summarize = [](const ExperimentConfig& c, const ResultTable& t) {
    Summary s;
    const double bound = c.alpha == 2.0 ? oracles::delta2() : oracles::kDeltaMargin * oracles::delta_alpha_raw(c.alpha);
    s.metrics.push_back({"delta", bound, "max over the gamma grid times the safety margin"});
    std::vector<double> norm;
    for (double g : oracles::delta_gamma_grid()) {
      const auto v = t.values_where("normalized", "gamma", g);
      if (v.empty()) throw DataError("lemma-a2 results miss gamma = " + num(g));
      norm.push_back(v.front());
      s.metrics.push_back({"normalized(gamma=" + num(g) + ")", v.front(), ""});
    }
    gate(s, "bounded by Delta", [&] {
      const double m = *std::max_element(norm.begin(), norm.end());
      return std::make_pair(m <= bound, "max = " + num(m) + " <= " + num(bound));
    });
    gate(s, "non-increasing in gamma", [&] { return std::make_pair(stats::non_increasing(norm), nums(norm)); });
    return s;
  };
  return e;
}

}  // namespace experiments

// ---------------------------------------------------------------------------
// Registry

inline const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> r{
      experiments::one_point_tw(),     experiments::baik_rains(),     experiments::symmetries(),
      experiments::exit_bounds(),      experiments::modulus_spatial(), experiments::modulus_temporal(),
      experiments::growth(),           experiments::tails(),          experiments::increment_tail(),
      experiments::replace_long(),     experiments::replace_short(),  experiments::lil_long(),
      experiments::lil_short(),        experiments::envelope(),       experiments::lemma_a2()};
  return r;
}

inline const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw ConfigError("unknown experiment '" + name + "'; see `kpzlab list`");
}

inline void validate_config(const ExperimentConfig& c) {
  const Experiment& e = find_experiment(c.experiment);
  detail::require(c.replicas >= 1, "replicas must be at least 1");
  detail::require(c.n >= 2 && c.n <= 4096, "n must lie in [2, 4096]");
  detail::require(c.workers >= 1, "workers must be at least 1");
  detail::require(!c.out.empty(), "out must not be empty");
  e.validate(c);
}

// Experiment defaults, then overrides, then validation. No sampling happens
// here, so an invalid config never starts work.
inline ExperimentConfig resolve_config(const KeyValues& kv) {
  std::string name;
  for (const auto& [k, v] : kv)
    if (k == "experiment") name = v;
  if (name.empty()) throw ConfigError("config must name an experiment");
  const Experiment& e = find_experiment(name);
  ExperimentConfig c;
  c.experiment = name;
  e.defaults(c);
  apply_overrides(c, kv);
  validate_config(c);
  return c;
}

}  // namespace kpzlab::harness

#endif  // KPZLAB_HARNESS_EXPERIMENTS_HPP
