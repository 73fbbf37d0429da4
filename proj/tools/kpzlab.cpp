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

// kpzlab command line: run, report, list, selftest.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kpzlab/harness.hpp"

namespace {

using kpzlab::ExitCode;
namespace h = kpzlab::harness;

int code(ExitCode c) { return static_cast<int>(c); }

struct RunOptions {
  std::string config;
  std::string seed;
  std::string workers;
  std::string out;
  bool strict = false;
};

int cmd_run(const RunOptions& o) {
  auto kv = h::parse_key_values(h::read_text_file(o.config));
  // Command-line values replace file values of the same key.
  auto put = [&](const std::string& k, const std::string& v) {
    std::erase_if(kv, [&](const auto& p) { return p.first == k; });
    kv.emplace_back(k, v);
  };
  if (!o.seed.empty()) put("seed", o.seed);
  if (!o.workers.empty()) put("workers", o.workers);
  if (!o.out.empty()) put("out", o.out);
  if (o.strict) put("strict_window", "true");
  const h::ExperimentConfig cfg = h::resolve_config(kv);
  const h::RunManifest m = h::run_experiment(cfg);
  std::cout << h::to_json(m).dump() << "\n";
  std::cout << "manifest: " << h::manifest_path(cfg) << "\n";
  return code(ExitCode::kOk);
}

int cmd_report(const std::string& manifest) {
  const h::Summary s = h::report(manifest);
  std::cout << h::to_json(s).dump(2) << "\n";
  for (const auto& v : s.verdicts)
    std::cerr << (v.pass ? "PASS " : "FAIL ") << v.property << ": " << v.detail << "\n";
  return code(s.pass() ? ExitCode::kOk : ExitCode::kAcceptance);
}

int cmd_list() {
  for (const auto& e : h::registry()) std::cout << e.name << "\n    " << e.claim << "\n";
  return code(ExitCode::kOk);
}

int cmd_selftest() {
  bool ok = true;
  for (const auto& r : h::selftest::run_all()) {
    std::printf("%s criterion %d: %s (%.3f s, limit %.0f s): %s\n", r.pass ? "PASS" : "FAIL", r.criterion,
                r.name.c_str(), r.seconds, r.time_limit, r.detail.c_str());
    ok = ok && r.pass;
  }
  return code(ok ? ExitCode::kOk : ExitCode::kAcceptance);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kpzlab: Monte Carlo laboratory for the KPZ fixed point"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(KPZLAB_VERSION));

  RunOptions ro;
  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", ro.config, "flat key = value config file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", ro.seed, "override the master seed");
  run->add_option("--workers", ro.workers, "worker threads");
  run->add_option("--out", ro.out, "output directory");
  run->add_flag("--strict-window", ro.strict, "treat argmax on window edges as an error");

  std::string manifest;
  auto* rep = app.add_subcommand("report", "summarize a finished run");
  rep->add_option("manifest", manifest, "manifest .jsonl file")->required();

  auto* list = app.add_subcommand("list", "list registered experiments and their claims");
  auto* self = app.add_subcommand("selftest", "run the exact-oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::kConfig);
  }

  try {
    if (*run) return cmd_run(ro);
    if (*rep) return cmd_report(manifest);
    if (*list) return cmd_list();
    if (*self) return cmd_selftest();
  } catch (const kpzlab::Error& e) {
    std::cerr << "kpzlab: " << e.what() << "\n";
    return code(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "kpzlab: " << e.what() << "\n";
    return code(ExitCode::kRuntime);
  }
  return code(ExitCode::kRuntime);
}
