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

#ifndef KPZLAB_STATS_HPP
#define KPZLAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "kpzlab/error.hpp"
#include "kpzlab/fixed_point.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab::stats {

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

struct KSReport {
  std::string label;
  double statistic = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;  // 0 for a comparison against a reference CDF
  double threshold = 0.05;
  double null_q95 = 0.0;  // simulated 95% null quantile, when computed
  bool pass = true;
};

inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

inline KSReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double threshold = 0.05,
                              std::string label = {}) {
  KSReport r;
  r.label = std::move(label);
  r.statistic = ks_statistic(a, b);
  r.n_a = a.size();
  r.n_b = b.size();
  r.threshold = threshold;
  r.pass = r.statistic <= threshold;
  return r;
}

template <typename Cdf>
double ks_statistic_cdf(std::vector<double> a, Cdf&& cdf) {
  if (a.empty()) throw ArgumentError("KS needs a nonempty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, std::abs((i + 1) / n - f), std::abs(f - i / n)});
  }
  return d;
}

template <typename Cdf>
KSReport ks_reference(const std::vector<double>& a, Cdf&& cdf, double threshold = 0.05, std::string label = {}) {
  KSReport r;
  r.label = std::move(label);
  r.statistic = ks_statistic_cdf(a, std::forward<Cdf>(cdf));
  r.n_a = a.size();
  r.threshold = threshold;
  r.pass = r.statistic <= threshold;
  return r;
}

// Null quantile of the two-sample statistic by direct simulation.
inline double ks_null_quantile(std::size_t n_a, std::size_t n_b, double level, int trials, std::uint64_t seed) {
  std::vector<double> stat;
  stat.reserve(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) {
    Draws d(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::vector<double> a(n_a), b(n_b);
    for (double& x : a) x = d.uniform();
    for (double& x : b) x = d.uniform();
    stat.push_back(ks_statistic(std::move(a), std::move(b)));
  }
  std::sort(stat.begin(), stat.end());
  const std::size_t idx = std::min(stat.size() - 1, static_cast<std::size_t>(std::ceil(level * stat.size())) - 1);
  return stat[idx];
}

// ---------------------------------------------------------------------------
// Tail fits

enum class TailSide { kUpper, kLower };

struct TailFit {
  TailSide side = TailSide::kUpper;
  // log(-log P(X >= s)) = log c + b log s, least squares
  double exponent_hat = 0.0;
  double coefficient_hat = 0.0;
  Interval s_range;
  double r_squared = 0.0;
  std::size_t sample_count = 0;
  std::size_t fit_points = 0;
  // -log P(X >= s) = a + c s^b with the prefactor a free, b profiled
  double profile_exponent = 0.0;
  double profile_coefficient = 0.0;
  double profile_intercept = 0.0;

  bool reportable() const { return sample_count >= 1000; }
};

inline double empirical_quantile(std::vector<double> v, double p) {
  if (v.empty()) throw ArgumentError("quantile of empty sample");
  std::sort(v.begin(), v.end());
  const double pos = p * (v.size() - 1);
  const std::size_t k = static_cast<std::size_t>(std::floor(pos));
  if (k + 1 >= v.size()) return v.back();
  return v[k] + (pos - k) * (v[k + 1] - v[k]);
}

// Default upper band: empirical quantiles [0.90, 0.999].
inline Interval upper_band(const std::vector<double>& x, double plo = 0.90, double phi = 0.999) {
  return Interval{empirical_quantile(x, plo), empirical_quantile(x, phi)};
}

// Default lower band in the reflected variable s = -x: quantiles [0.001, 0.1] of x.
inline Interval lower_band(const std::vector<double>& x, double plo = 0.001, double phi = 0.1) {
  return Interval{-empirical_quantile(x, phi), -empirical_quantile(x, plo)};
}

namespace detail {

struct LinFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0, sse = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.sse = std::max(0.0, syy - f.slope * sxy);
  f.r2 = syy > 0 ? 1.0 - f.sse / syy : 1.0;
  return f;
}

inline TailFit fit_tail(const std::vector<double>& samples, Interval range, TailSide side) {
  const std::string name = side == TailSide::kUpper ? "upper" : "lower";
  std::vector<double> s(samples);
  if (side == TailSide::kLower)
    for (double& v : s) v = -v;
  std::sort(s.begin(), s.end());
  const std::size_t N = s.size();
  auto count_ge = [&](double v) {
    return static_cast<std::size_t>(s.end() - std::lower_bound(s.begin(), s.end(), v));
  };
  if (count_ge(range.lo) < 1000)
    throw ArgumentError(name + "-tail fit needs >= 1000 samples beyond the range start");
  if (count_ge(range.hi) < 50)
    throw ArgumentError(name + "-tail range error: fewer than 50 exceedances at range top");

  // Evaluation points: distinct order statistics inside the range with s > 0.
  std::vector<double> ls, lls, sv, nlp;
  for (auto it = std::lower_bound(s.begin(), s.end(), range.lo); it != s.end() && *it <= range.hi;) {
    const double v = *it;
    const std::size_t ge = static_cast<std::size_t>(s.end() - it);
    const double p = static_cast<double>(ge) / N;
    if (v > 0.0 && p < 1.0) {
      ls.push_back(std::log(v));
      lls.push_back(std::log(-std::log(p)));
      sv.push_back(v);
      nlp.push_back(-std::log(p));
    }
    it = std::upper_bound(it, s.end(), v);
  }
  if (ls.size() < 3) throw ArgumentError(name + "-tail range holds fewer than 3 positive points");

  TailFit f;
  f.side = side;
  f.s_range = range;
  f.sample_count = N;
  f.fit_points = ls.size();
  const LinFit lf = linear_fit(ls, lls);
  f.exponent_hat = lf.slope;
  f.coefficient_hat = std::exp(lf.intercept);
  f.r_squared = std::clamp(lf.r2, 0.0, 1.0);

  auto profile = [&](double b) {
    std::vector<double> xb(sv.size());
    for (std::size_t i = 0; i < sv.size(); ++i) xb[i] = std::pow(sv[i], b);
    return linear_fit(xb, nlp);
  };
  const auto best = boost::math::tools::brent_find_minima([&](double b) { return profile(b).sse; }, 0.2, 8.0, 40);
  const LinFit pf = profile(best.first);
  f.profile_exponent = best.first;
  f.profile_coefficient = pf.slope;
  f.profile_intercept = pf.intercept;
  return f;
}

}  // namespace detail

inline TailFit fit_upper_tail(const std::vector<double>& samples, Interval s_range) {
  return detail::fit_tail(samples, s_range, TailSide::kUpper);
}

inline TailFit fit_upper_tail(const std::vector<double>& samples) {
  return fit_upper_tail(samples, upper_band(samples));
}

// s_range is in the reflected variable: P(X <= -s) for s in s_range.
inline TailFit fit_lower_tail(const std::vector<double>& samples, Interval s_range) {
  return detail::fit_tail(samples, s_range, TailSide::kLower);
}

inline TailFit fit_lower_tail(const std::vector<double>& samples) {
  return fit_lower_tail(samples, lower_band(samples));
}

// ---------------------------------------------------------------------------
// Law of the iterated logarithm

inline const double kLilNarrowWedge = std::pow(0.75, 2.0 / 3.0);
inline const double kLilBrownian = std::pow(1.5, 2.0 / 3.0);

struct LILEstimate {
  std::string grid_description;
  std::vector<double> grid;
  std::vector<double> scaled;
  double statistic = 0.0;
  double target = 0.0;
};

inline LILEstimate lil_longtime(const std::vector<double>& values, const std::vector<double>& times, double target,
                                std::string description = {}) {
  if (values.size() != times.size() || values.empty()) throw ArgumentError("values and grid must match");
  LILEstimate e{std::move(description), times, {}, kNegInf, target};
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) throw ArgumentError("grid must be strictly increasing");
    if (!(times[i] > std::exp(1.0))) throw DomainError("long-time grid needs t > e");
    const double scale = std::cbrt(times[i]) * std::pow(std::log(std::log(times[i])), 2.0 / 3.0);
    e.scaled.push_back(values[i] / scale);
    e.statistic = std::max(e.statistic, e.scaled.back());
  }
  return e;
}

// increments[i] = h_{1 + eps_i}(0) - h_1(0)
inline LILEstimate lil_shorttime(const std::vector<double>& increments, const std::vector<double>& eps,
                                 std::string description = {}) {
  if (increments.size() != eps.size() || eps.empty()) throw ArgumentError("increments and grid must match");
  LILEstimate e{std::move(description), eps, {}, kNegInf, kLilBrownian};
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (i > 0 && !(eps[i] != eps[i - 1])) throw ArgumentError("grid must be strictly monotone");
    if (!(eps[i] > 0.0 && eps[i] < std::exp(-1.0))) throw DomainError("short-time grid needs 0 < eps < 1/e");
    const double scale = std::cbrt(eps[i]) * std::pow(std::log(std::log(1.0 / eps[i])), 2.0 / 3.0);
    e.scaled.push_back(increments[i] / scale);
    e.statistic = std::max(e.statistic, e.scaled.back());
  }
  return e;
}

// t_n = rho^n for n in [n0, n1]
inline std::vector<double> geometric_times(double rho, int n0, int n1) {
  if (!(rho > 1.0)) throw ArgumentError("rho must exceed 1");
  std::vector<double> t;
  for (int n = n0; n <= n1; ++n) t.push_back(std::pow(rho, n));
  return t;
}

// I_n = [exp(e^n), exp(e^{n+1})]
inline Interval doubly_exponential_block(int n) {
  return Interval{std::exp(std::exp(static_cast<double>(n))), std::exp(std::exp(static_cast<double>(n + 1)))};
}

// ---------------------------------------------------------------------------
// Moduli of continuity

struct ModulusReport {
  enum class Kind { kSpatial, kTemporal } kind = Kind::kSpatial;
  double sup_ratio = 0.0;        // spatial: sqrt(d) log^2(4/d); temporal: d^{1/3} log^{2/3}(2/d)
  double secondary_ratio = 0.0;  // spatial: sqrt(d log(4/d)); temporal: block statistic
  std::vector<double> thresholds;
  std::vector<double> exceedance;
};

inline ModulusReport spatial_modulus(const FixedPointProfile& p) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < p.x_grid.size(); ++i)
    if (p.x_grid[i] >= -1.0 - 1e-12 && p.x_grid[i] <= 1.0 + 1e-12) idx.push_back(i);
  if (idx.size() < 16) throw ArgumentError("resolution error: fewer than 16 grid points in [-1, 1]");
  ModulusReport r;
  r.kind = ModulusReport::Kind::kSpatial;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const double d = std::abs(p.x_grid[idx[a]] - p.x_grid[idx[b]]);
      const double dh = std::abs(p.values[idx[a]] - p.values[idx[b]]);
      const double lg = std::log(4.0 / d);
      r.sup_ratio = std::max(r.sup_ratio, dh / (std::sqrt(d) * lg * lg));
      r.secondary_ratio = std::max(r.secondary_ratio, dh / std::sqrt(d * lg));
    }
  return r;
}

inline ModulusReport temporal_modulus(const std::vector<double>& times, const std::vector<double>& h) {
  if (times.size() != h.size()) throw ArgumentError("times and values must match");
  if (times.size() < 8) throw ArgumentError("temporal modulus needs >= 8 time points");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ArgumentError("times must be strictly increasing (no duplicates)");
  if (!(times.back() - times.front() < 2.0)) throw DomainError("time span must be below 2");
  ModulusReport r;
  r.kind = ModulusReport::Kind::kTemporal;
  for (std::size_t a = 0; a < times.size(); ++a)
    for (std::size_t b = a + 1; b < times.size(); ++b) {
      const double d = times[b] - times[a];
      r.sup_ratio = std::max(r.sup_ratio, std::abs(h[b] - h[a]) / (std::cbrt(d) * std::pow(std::log(2.0 / d), 2.0 / 3.0)));
    }
  const double span = std::cbrt(times.back() - times.front());
  for (std::size_t i = 0; i < times.size(); ++i) r.secondary_ratio = std::max(r.secondary_ratio, std::abs(h[i] - h[0]) / span);
  return r;
}

// P(X >= s) for each threshold (non-strict).
inline std::vector<double> exceedance_frequencies(const std::vector<double>& x, const std::vector<double>& thresholds) {
  std::vector<double> s(x);
  std::sort(s.begin(), s.end());
  std::vector<double> out;
  for (double t : thresholds) {
    const auto ge = s.end() - std::lower_bound(s.begin(), s.end(), t);
    out.push_back(s.empty() ? 0.0 : static_cast<double>(ge) / s.size());
  }
  return out;
}

inline bool non_increasing(const std::vector<double>& v, double slack = 0.0) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + slack) return false;
  return true;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

// Least-squares slope of log(-log p) against log s; points with p in {0, 1}
// are skipped.
inline double loglog_slope(const std::vector<double>& s, const std::vector<double>& p) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (p[i] > 0.0 && p[i] < 1.0 && s[i] > 0.0) {
      x.push_back(std::log(s[i]));
      y.push_back(std::log(-std::log(p[i])));
    }
  if (x.size() < 2) throw ArgumentError("slope needs two points with 0 < p < 1");
  return detail::linear_fit(x, y).slope;
}

// ---------------------------------------------------------------------------
// Growth control

struct GrowthResult {
  bool exceeded = false;
  double threshold = 0.0;
  double sup_value = kNegInf;
};

inline double growth_f(const InitialDataSpec& spec, double M, double s) {
  switch (spec.kind) {
    case DataKind::kNarrowWedge:
      return 0.0;
    case DataKind::kFunctionalST:
      if (spec.dt >= 1.0) return spec.A + 1.0;
      return spec.A + (1.0 - spec.dt) / (spec.dt * spec.dt) * M * M + 1.0;
    case DataKind::kBrownian:
    case DataKind::kBrownianDrift:
      return s * std::sqrt(M);
    default:
      throw ArgumentError("growth control undefined for data kind " + to_string(spec.kind));
  }
}

inline GrowthResult growth_statistic(const FixedPointProfile& p, const InitialDataSpec& spec, double M, double s) {
  if (!(M > 0.0) || !(s > 0.0)) throw ArgumentError("M and s must be positive");
  if (p.x_grid.empty() || p.x_grid.front() > -M + 1e-9 || p.x_grid.back() < M - 1e-9)
    throw WindowError("profile grid does not cover [-M, M]");
  GrowthResult g;
  g.threshold = growth_f(spec, M, s) + s;
  for (std::size_t i = 0; i < p.x_grid.size(); ++i)
    if (std::abs(p.x_grid[i]) <= M) g.sup_value = std::max(g.sup_value, p.values[i]);
  g.exceeded = g.sup_value >= g.threshold;
  return g;
}

// ---------------------------------------------------------------------------
// Replacement deviations and envelopes

struct DeviationPair {
  double value = 0.0;
  double proxy = 0.0;
  double normalization = 1.0;
};

struct DeviationReport {
  std::vector<double> parameters;
  std::vector<double> probabilities;
  std::vector<std::size_t> counts;
  bool monotone = true;  // non-increasing in the parameter
};

inline DeviationReport replacement_deviation(const std::vector<double>& parameters,
                                             const std::vector<std::vector<DeviationPair>>& pairs, double threshold,
                                             double slack = 0.0) {
  if (parameters.size() != pairs.size()) throw ArgumentError("mismatched pair lengths");
  if (!std::is_sorted(parameters.begin(), parameters.end())) throw ArgumentError("parameters must be sorted");
  DeviationReport r;
  r.parameters = parameters;
  for (const auto& group : pairs) {
    if (group.size() < 1000) throw ArgumentError("need >= 1000 pairs per parameter point");
    std::size_t hit = 0;
    for (const auto& p : group) hit += p.normalization * std::abs(p.value - p.proxy) >= threshold ? 1 : 0;
    r.counts.push_back(group.size());
    r.probabilities.push_back(static_cast<double>(hit) / group.size());
  }
  r.monotone = non_increasing(r.probabilities, slack);
  return r;
}

inline DeviationReport parabolic_envelope(const std::vector<double>& sups, const std::vector<double>& s_grid) {
  if (sups.size() < 1000) throw ArgumentError("need >= 1000 samples");
  if (s_grid.size() < 2 || !std::is_sorted(s_grid.begin(), s_grid.end()) ||
      std::adjacent_find(s_grid.begin(), s_grid.end()) != s_grid.end())
    throw ArgumentError("s grid must be strictly increasing with at least two points");
  DeviationReport r;
  r.parameters = s_grid;
  r.probabilities = exceedance_frequencies(sups, s_grid);
  r.counts.assign(s_grid.size(), sups.size());
  r.monotone = non_increasing(r.probabilities);
  return r;
}

// ---------------------------------------------------------------------------
// Symmetry suite
//
// A sampler exposes identities() -> vector<string> and
// operator()(replica) -> vector<pair<double, double>>, one (lhs, rhs) draw per
// identity. Reports are computed once all replicas are in.

template <typename Sampler>
std::vector<KSReport> symmetry_suite(Sampler&& sampler, int replicas, double threshold = 0.06) {
  if (replicas < 1000) throw ArgumentError("symmetry suite needs >= 1000 replicas");
  const std::vector<std::string> names = sampler.identities();
  std::vector<std::vector<double>> lhs(names.size()), rhs(names.size());
  for (int r = 0; r < replicas; ++r) {
    const auto draws = sampler(r);
    for (std::size_t k = 0; k < names.size(); ++k) {
      lhs[k].push_back(draws[k].first);
      rhs[k].push_back(draws[k].second);
    }
  }
  std::vector<KSReport> out;
  for (std::size_t k = 0; k < names.size(); ++k) out.push_back(ks_two_sample(lhs[k], rhs[k], threshold, names[k]));
  return out;
}

}  // namespace kpzlab::stats

#endif  // KPZLAB_STATS_HPP
