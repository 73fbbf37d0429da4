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

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "kpzlab/harness.hpp"

namespace kpzlab::harness {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kpzlab-test-" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig config_for(const std::string& text) { return resolve_config(parse_key_values(text)); }

TEST(Config, UnknownAndDuplicateKeysAreErrors) {
  EXPECT_THROW(parse_key_values("experiment = tails\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_key_values("n = 10\nn = 20\n"), ConfigError);
  EXPECT_THROW(parse_key_values("just words\n"), ConfigError);
  EXPECT_THROW(config_for("experiment = no-such-experiment\n"), ConfigError);
  EXPECT_THROW(config_for("experiment = tails\nn = ten\n"), ConfigError);
  EXPECT_THROW(config_for("experiment = tails\ndata = flat\n"), ConfigError);
}

TEST(Config, ValidationHappensBeforeSampling) {
  EXPECT_THROW(config_for("experiment = tails\nreplicas = 0\n"), ConfigError);
  EXPECT_THROW(config_for("experiment = one-point-tw\ndata = brownian\n"), ConfigError);
  EXPECT_THROW(config_for("experiment = lemma-a2\nalpha = 1\n"), ConfigError);
  // A non-permissible short-time pair is rejected at validation time.
  EXPECT_THROW(config_for("experiment = replace-short\ntime_knots = 1, 100\na = 1\n"), ConfigError);
}

TEST(Config, CommentsDefaultsAndCanonicalHash) {
  const auto a = config_for("# comment\nexperiment = tails\nseed = 9\n");
  const auto b = config_for("seed = 9\nexperiment = tails\n");
  EXPECT_EQ(canonical(a), canonical(b));
  EXPECT_EQ(config_hash(a), config_hash(b));
  auto c = a;
  c.workers = 7;
  c.out = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(c));
  c.seed = 10;
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 64u);
}

TEST(Csv, RoundTripIsExact) {
  ResultTable t;
  t.experiment = "x";
  t.n = 5;
  t.columns = {"a", "b"};
  t.rows.push_back(ResultRow{0, 42, {0.1, -1.0 / 3.0}});
  t.rows.push_back(ResultRow{1, 43, {1e-300, 12345.678901234567}});
  const std::string csv = to_csv(t);
  const ResultTable u = parse_csv(csv);
  EXPECT_EQ(u.columns, t.columns);
  ASSERT_EQ(u.rows.size(), 2u);
  EXPECT_EQ(u.rows[1].values, t.rows[1].values);
  EXPECT_EQ(u.rows[0].seed, 42u);
  EXPECT_EQ(to_csv(u), csv);
  EXPECT_THROW(parse_csv(""), DataError);
  EXPECT_THROW(parse_csv("experiment,replica,seed,n,a\nx,0,1,5\n"), DataError);
}

TEST(Registry, EveryExperimentHasAPlainClaim) {
  EXPECT_EQ(registry().size(), 15u);
  for (const auto& e : registry()) {
    EXPECT_FALSE(e.claim.empty()) << e.name;
    EXPECT_FALSE(e.columns.empty()) << e.name;
  }
}

TEST(Report, EmptyRowSetIsAnError) {
  const auto c = config_for("experiment = lil-long\n");
  ResultTable t;
  t.experiment = c.experiment;
  t.columns = find_experiment(c.experiment).columns;
  EXPECT_THROW(summarize(c, t), DataError);
}

TEST(Run, LemmaGridMatchesOracleExactly) {
  const fs::path dir = scratch("lemma");
  auto c = config_for("experiment = lemma-a2\nout = " + dir.string() + "\n");
  const RunManifest m = run_experiment(c);
  EXPECT_EQ(m.status, "complete");
  ASSERT_EQ(m.outputs.size(), 1u);
  const ResultTable t = parse_csv(read_file((dir / m.outputs[0]).string()));
  for (double g : oracles::delta_gamma_grid()) {
    const auto v = t.values_where("normalized", "gamma", g);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], oracles::log_parabola_bound(2.0, g).normalized);
  }
  const Summary s = report(manifest_path(c));
  EXPECT_TRUE(s.pass());
  fs::remove_all(dir);
}

TEST(Run, SingleReplicaGivesOneOutputAndManifestLine) {
  const fs::path dir = scratch("single");
  const auto c = config_for("experiment = baik-rains\nreplicas = 1\nn = 40\nout = " + dir.string() + "\n");
  const RunManifest m = run_experiment(c);
  EXPECT_EQ(m.outputs.size(), 1u);
  EXPECT_EQ(m.replicas, 1);
  const RunManifest back = load_manifest(manifest_path(c));
  EXPECT_EQ(back.config_hash, m.config_hash);
  EXPECT_EQ(back.seed_rule, kSeedRule);
  EXPECT_EQ(read_file((dir / m.outputs[0]).string()).find("experiment,replica,seed,n,direct,fixed_point\n"), 0u);
  fs::remove_all(dir);
}

TEST(Run, SameConfigTwiceGivesIdenticalBytesForAnyWorkerCount) {
  const fs::path d1 = scratch("det1"), d2 = scratch("det2");
  auto c = config_for("experiment = modulus-spatial\nreplicas = 12\nn = 40\nout = " + d1.string() + "\n");
  const auto m1 = run_experiment(c);
  c.out = d2.string();
  c.workers = 3;
  const auto m2 = run_experiment(c);
  EXPECT_EQ(read_file((d1 / m1.outputs[0]).string()), read_file((d2 / m2.outputs[0]).string()));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST(Run, ReportNeedsItsOutputs) {
  const fs::path dir = scratch("missing");
  const auto c = config_for("experiment = lemma-a2\nout = " + dir.string() + "\n");
  const auto m = run_experiment(c);
  fs::remove(dir / m.outputs[0]);
  EXPECT_THROW(report(manifest_path(c)), DataError);
  EXPECT_THROW(load_manifest((dir / "absent.jsonl").string()), DataError);
  fs::remove_all(dir);
}

TEST(Run, WorkerFailureAbortsWithPartialMarker) {
  const fs::path dir = scratch("abort");
  // A point this far out needs a lattice beyond the cell budget, which fails
  // inside the replica rather than at validation.
  const auto c = config_for("experiment = one-point-tw\nreplicas = 3\nn = 20\nx_points = 0, 1000000\nout = " +
                            dir.string() + "\n");
  EXPECT_THROW(run_experiment(c), SizingError);
  const RunManifest m = load_manifest(manifest_path(c));
  EXPECT_EQ(m.status, "aborted");
  EXPECT_NE(m.error.find("replica 0"), std::string::npos);
  EXPECT_NE(m.outputs[0].find(".partial"), std::string::npos);
  EXPECT_THROW(report(manifest_path(c)), DataError);
  fs::remove_all(dir);
}

TEST(Report, SummaryCarriesTargets) {
  const fs::path dir = scratch("targets");
  const auto c = config_for("experiment = lil-long\nreplicas = 2\nout = " + dir.string() + "\n");
  run_experiment(c);
  const Summary s = report(manifest_path(c));
  bool found = false;
  for (const auto& m : s.targets)
    if (std::abs(m.value - 0.8255) < 1e-4) found = true;
  EXPECT_TRUE(found);
  const auto j = to_json(s);
  EXPECT_EQ(j["experiment"], "lil-long");
  fs::remove_all(dir);
}

}  // namespace
}  // namespace kpzlab::harness
