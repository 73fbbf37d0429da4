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

// Acceptance run: one PASS or FAIL line per criterion. Tolerances live in
// kpzlab/harness/criteria.hpp. Exits 3 when any criterion fails, unless
// --no-fail-exit is given, in which case failures are reported but the exit
// status only reflects crashes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kpzlab/harness.hpp"

namespace {

using namespace kpzlab;
using namespace kpzlab::harness;
namespace fs = std::filesystem;

struct Line {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", x);
  return b;
}

// Runs an experiment once per distinct config and caches the summary.
class Runs {
 public:
  const Summary& get(const std::string& config_text) {
    auto it = cache_.find(config_text);
    if (it != cache_.end()) return it->second;
    const ExperimentConfig c = resolve_config(parse_key_values(config_text));
    const auto t0 = std::chrono::steady_clock::now();
    const ResultTable t = run_in_memory(c);
    Summary s = summarize(c, t);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "  ran %s (%d replicas, n = %d) in %.1f s\n", c.experiment.c_str(), c.replicas, c.n, sec);
    return cache_.emplace(config_text, std::move(s)).first->second;
  }

 private:
  std::map<std::string, Summary> cache_;
};

Line verdicts(const Summary& s, const std::vector<std::string>& props) {
  Line l{true, {}};
  for (const auto& p : props) {
    const Verdict& v = s.verdict(p);
    l.pass = l.pass && v.pass;
    l.detail += (l.detail.empty() ? "" : "; ") + s.experiment + " " + p + ": " + v.detail;
  }
  return l;
}

Line join(Line a, const Line& b) {
  a.pass = a.pass && b.pass;
  a.detail += "; " + b.detail;
  return a;
}

Line selftest_line(int criterion) {
  for (const auto& r : selftest::run_all())
    if (r.criterion == criterion)
      return {r.pass, r.name + ", " + num(r.seconds) + " s (limit " + num(r.time_limit) + " s), " + r.detail};
  return {false, "no self-test for this criterion"};
}

// Deterministic inputs c * scale give statistic c with zero tolerance.
Line lil_exact() {
  bool ok = true;
  const auto t = stats::geometric_times(2.0, 2, 40);
  std::vector<double> eps;
  for (int k = 0; k <= 8; ++k) eps.push_back(0.3 * std::pow(10.0, -0.5 * k));
  for (double c : {0.25, 0.5, 1.0, 2.0}) {
    std::vector<double> h, inc;
    for (double x : t) h.push_back(c * std::cbrt(x) * std::pow(std::log(std::log(x)), 2.0 / 3.0));
    for (double e : eps) inc.push_back(c * std::cbrt(e) * std::pow(std::log(std::log(1.0 / e)), 2.0 / 3.0));
    ok = ok && stats::lil_longtime(h, t, stats::kLilNarrowWedge).statistic == c;
    ok = ok && stats::lil_shorttime(inc, eps).statistic == c;
  }
  return {ok, std::string("deterministic inputs ") + (ok ? "recovered exactly" : "not recovered exactly")};
}

Line reproducibility() {
  const fs::path root = fs::temp_directory_path() / "kpzlab-acceptance-repro";
  fs::remove_all(root);
  int same = 0, total = 0;
  std::string bad;
  for (const auto& e : registry()) {
    std::string bytes[2];
    for (int w = 0; w < 2; ++w) {
      ExperimentConfig c = resolve_config(parse_key_values("experiment = " + e.name + "\nseed = 2026\n"));
      c.replicas = std::min(c.replicas, 6);
      c.workers = w + 1;
      c.out = (root / ("w" + std::to_string(w + 1))).string();
      const RunManifest m = run_experiment(c);
      bytes[w] = read_file((fs::path(c.out) / m.outputs.at(0)).string());
    }
    ++total;
    if (bytes[0] == bytes[1] && !bytes[0].empty()) ++same;
    else bad += " " + e.name;
  }
  fs::remove_all(root);
  return {same == total, std::to_string(same) + "/" + std::to_string(total) +
                             " experiments byte-identical with 1 and 2 workers" + (bad.empty() ? "" : ", differ:" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  bool fail_exit = true;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--no-fail-exit") == 0) {
      fail_exit = false;
    } else {
      std::fprintf(stderr, "usage: acceptance [--no-fail-exit]\n");
      return 2;
    }
  }

  Runs runs;
  const std::string nw_tails = "experiment = tails\ndata = narrow-wedge\n";
  const std::string br_tails = "experiment = tails\ndata = brownian\nreplicas = 50000\n";

  const std::vector<std::pair<int, std::function<Line()>>> criteria{
      {1, [] { return selftest_line(1); }},
      {2, [] { return selftest_line(2); }},
      {3, [] { return selftest_line(3); }},
      {4, [&] { return verdicts(runs.get("experiment = one-point-tw\n"), {"one-point law at x = 0"}); }},
      {5, [&] { return verdicts(runs.get("experiment = one-point-tw\n"), {"stationarity of recentred marginals"}); }},
      {6, [&] { return verdicts(runs.get("experiment = baik-rains\n"), {"direct and fixed-point samples agree"}); }},
      {7,
       [&] {
         const Summary& nw = runs.get(nw_tails);
         const Summary& br = runs.get(br_tails);
         Line l = verdicts(nw, {"upper-tail exponent"});
         const double cn = nw.metric("upper_coefficient_hat"), cb = br.metric("upper_coefficient_hat");
         return join(l, Line{cb < cn, "Brownian coefficient " + num(cb) + " < narrow-wedge coefficient " + num(cn)});
       }},
      {8, [&] { return verdicts(runs.get(nw_tails), {"lower-tail exponent"}); }},
      {9, [&] { return verdicts(runs.get("experiment = exit-bounds\n"), {"exceedance strictly decreasing", "log-log slope"}); }},
      {10,
       [&] {
         return join(verdicts(runs.get("experiment = replace-long\n"), {"deviation probability non-increasing"}),
                     verdicts(runs.get("experiment = replace-short\n"), {"deviation probability non-increasing"}));
       }},
      {11,
       [&] {
         return verdicts(runs.get("experiment = increment-tail\n"),
                         {"KS to Baik-Rains does not grow as eps shrinks", "increment upper-tail exponent"});
       }},
      {12,
       [&] {
         return join(verdicts(runs.get("experiment = lemma-a2\n"), {"bounded by Delta", "non-increasing in gamma"}),
                     verdicts(runs.get("experiment = envelope\n"), {"Brownian envelope log-log slope"}));
       }},
      {13,
       [&] {
         const Summary& lo = runs.get("experiment = lil-long\n");
         const Summary& sh = runs.get("experiment = lil-short\n");
         Line l = join(verdicts(lo, {"median statistic inside the sanity band"}),
                       verdicts(sh, {"median statistic inside the sanity band"}));
         const double dl = lo.metric("grid_decades"), ds = sh.metric("grid_decades");
         l = join(l, Line{dl >= 4.0 && ds >= 4.0, "grid decades " + num(dl) + " and " + num(ds)});
         return join(l, lil_exact());
       }},
      {14, [] { return reproducibility(); }},
  };

  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Line l;
    try {
      l = fn();
    } catch (const std::exception& e) {
      l = {false, std::string("error: ") + e.what()};
    }
    failed += l.pass ? 0 : 1;
    std::printf("%s criterion %2d: %s\n", l.pass ? "PASS" : "FAIL", id, l.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed > 0 && fail_exit ? static_cast<int>(ExitCode::kAcceptance) : 0;
}
