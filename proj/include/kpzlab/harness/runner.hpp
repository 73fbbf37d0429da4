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

#ifndef KPZLAB_HARNESS_RUNNER_HPP
#define KPZLAB_HARNESS_RUNNER_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "kpzlab/error.hpp"
#include "kpzlab/harness/config.hpp"
#include "kpzlab/harness/experiments.hpp"
#include "kpzlab/harness/table.hpp"
#include "kpzlab/rng.hpp"

#ifndef KPZLAB_VERSION
#define KPZLAB_VERSION "0.0.0-dev"
#endif

namespace kpzlab::harness {

inline constexpr const char* kSeedRule = "replica seed = derive_seed(seed, replica), splitmix64 positional hash";

inline std::uint64_t replica_seed(std::uint64_t seed, int replica) {
  return derive_seed(seed, static_cast<std::uint64_t>(replica));
}

struct RunManifest {
  std::string experiment;
  std::string config_hash;
  std::string code_version = KPZLAB_VERSION;
  std::uint64_t seed = 0;
  std::string seed_rule = kSeedRule;
  int replicas = 0;
  int workers = 1;
  double wall_clock_seconds = 0.0;
  std::string status;  // "complete" or "aborted"
  std::string error;
  std::size_t rows = 0;
  std::vector<std::string> outputs;
  std::string config;  // canonical text
};

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json j;
  j["experiment"] = m.experiment;
  j["config_hash"] = m.config_hash;
  j["code_version"] = m.code_version;
  j["seed"] = m.seed;
  j["seed_rule"] = m.seed_rule;
  j["replicas"] = m.replicas;
  j["workers"] = m.workers;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["status"] = m.status;
  if (!m.error.empty()) j["error"] = m.error;
  j["rows"] = m.rows;
  j["outputs"] = m.outputs;
  j["config"] = m.config;
  return j;
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.experiment = j.at("experiment").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.code_version = j.at("code_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.seed_rule = j.at("seed_rule").get<std::string>();
    m.replicas = j.at("replicas").get<int>();
    m.workers = j.at("workers").get<int>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    m.status = j.at("status").get<std::string>();
    if (j.contains("error")) m.error = j.at("error").get<std::string>();
    m.rows = j.at("rows").get<std::size_t>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.config = j.at("config").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

// Result of executing the replicas. On a worker failure `rows` holds the
// replicas that finished and `failure` the first error by replica index.
struct Execution {
  ResultTable table;
  std::exception_ptr failure;
  int failed_replica = -1;
};

// Replica-level parallelism: workers pull indices from a shared counter and
// store rows by replica index, so the table never depends on completion order.
inline Execution execute(const ExperimentConfig& c, int workers) {
  const Experiment& e = find_experiment(c.experiment);
  const int R = c.replicas;
  std::vector<Rows> out(static_cast<std::size_t>(R));
  std::vector<char> done(static_cast<std::size_t>(R), 0);
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  Execution ex;
  auto work = [&] {
    for (;;) {
      if (stop.load()) return;
      const int i = next.fetch_add(1);
      if (i >= R) return;
      try {
        out[static_cast<std::size_t>(i)] = e.replica(c, replica_seed(c.seed, i));
        done[static_cast<std::size_t>(i)] = 1;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (ex.failed_replica < 0 || i < ex.failed_replica) {
          ex.failed_replica = i;
          ex.failure = std::current_exception();
        }
        stop.store(true);
      }
    }
  };
  const int w = std::max(1, std::min(workers, R));
  std::vector<std::thread> pool;
  for (int k = 1; k < w; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  ex.table.experiment = c.experiment;
  ex.table.n = c.n;
  ex.table.columns = e.columns;
  for (int i = 0; i < R; ++i) {
    if (!done[static_cast<std::size_t>(i)]) continue;
    for (auto& v : out[static_cast<std::size_t>(i)]) {
      if (v.size() != e.columns.size()) throw Error(c.experiment + " replica produced a row of the wrong width");
      ex.table.rows.push_back(ResultRow{i, replica_seed(c.seed, i), std::move(v)});
    }
  }
  return ex;
}

// In-memory run; rethrows the first worker failure.
inline ResultTable run_in_memory(const ExperimentConfig& c) {
  validate_config(c);
  Execution ex = execute(c, c.workers);
  if (ex.failure) std::rethrow_exception(ex.failure);
  return std::move(ex.table);
}

inline std::string manifest_path(const ExperimentConfig& c) {
  return (std::filesystem::path(c.out) / (c.experiment + ".manifest.jsonl")).string();
}

inline std::string results_path(const ExperimentConfig& c) {
  return (std::filesystem::path(c.out) / (c.experiment + "-" + config_hash(c).substr(0, 12) + ".csv")).string();
}

// Runs every replica, writes the CSV and appends one manifest line. A worker
// failure writes the finished rows, marks the manifest "aborted" and rethrows.
inline RunManifest run_experiment(const ExperimentConfig& c) {
  validate_config(c);
  const auto t0 = std::chrono::steady_clock::now();
  Execution ex = execute(c, c.workers);
  const auto t1 = std::chrono::steady_clock::now();

  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw DataError("cannot create output directory " + c.out + ": " + ec.message());

  RunManifest m;
  m.experiment = c.experiment;
  m.config_hash = config_hash(c);
  m.seed = c.seed;
  m.replicas = c.replicas;
  m.workers = c.workers;
  m.wall_clock_seconds = std::chrono::duration<double>(t1 - t0).count();
  m.rows = ex.table.rows.size();
  m.config = canonical(c);
  std::string csv = results_path(c);
  if (ex.failure) {
    csv += ".partial";
    m.status = "aborted";
    try {
      std::rethrow_exception(ex.failure);
    } catch (const std::exception& err) {
      m.error = "replica " + std::to_string(ex.failed_replica) + ": " + err.what();
    } catch (...) {
      m.error = "replica " + std::to_string(ex.failed_replica) + ": unknown failure";
    }
  } else {
    m.status = "complete";
  }
  write_file(csv, to_csv(ex.table));
  m.outputs.push_back(std::filesystem::path(csv).filename().string());

  std::ofstream man(manifest_path(c), std::ios::app);
  if (!man) throw DataError("cannot write manifest " + manifest_path(c));
  man << to_json(m).dump() << "\n";
  if (!man) throw DataError("manifest write failed");
  if (ex.failure) std::rethrow_exception(ex.failure);
  return m;
}

}  // namespace kpzlab::harness

#endif  // KPZLAB_HARNESS_RUNNER_HPP
