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

#ifndef KPZLAB_HARNESS_REPORT_HPP
#define KPZLAB_HARNESS_REPORT_HPP

#include <filesystem>
#include <sstream>
#include <string>

#include "json.hpp"

#include "kpzlab/error.hpp"
#include "kpzlab/harness/config.hpp"
#include "kpzlab/harness/experiments.hpp"
#include "kpzlab/harness/runner.hpp"
#include "kpzlab/harness/table.hpp"

namespace kpzlab::harness {

// Last manifest line; earlier lines are previous runs of the same experiment.
inline RunManifest load_manifest(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) throw DataError("manifest " + path + " is empty");
  try {
    return manifest_from_json(nlohmann::json::parse(last));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest " + path + " is not valid JSON: " + e.what());
  }
}

inline Summary summarize(const ExperimentConfig& c, const ResultTable& t) {
  if (t.rows.empty()) throw DataError("empty row set for " + c.experiment + "; nothing to summarize");
  Summary s = find_experiment(c.experiment).summarize(c, t);
  s.experiment = c.experiment;
  s.rows = t.rows.size();
  return s;
}

inline Summary report(const std::string& manifest) {
  const RunManifest m = load_manifest(manifest);
  if (m.status != "complete") throw DataError("run was " + m.status + ": " + m.error);
  if (m.outputs.empty()) throw DataError("manifest lists no output files");
  ExperimentConfig c;
  try {
    c = resolve_config(parse_key_values(m.config));
  } catch (const ConfigError& e) {
    throw DataError(std::string("manifest config is invalid: ") + e.what());
  }
  if (config_hash(c) != m.config_hash) throw DataError("manifest config hash does not match its config");
  const auto dir = std::filesystem::path(manifest).parent_path();
  const ResultTable t = parse_csv(read_file((dir / m.outputs.front()).string()));
  if (!t.rows.empty() && t.experiment != m.experiment)
    throw DataError("result file belongs to " + t.experiment + ", manifest to " + m.experiment);
  return summarize(c, t);
}

inline nlohmann::json to_json(const Summary& s) {
  nlohmann::json j;
  j["experiment"] = s.experiment;
  j["claim"] = find_experiment(s.experiment).claim;
  j["rows"] = s.rows;
  auto metrics = [](const std::vector<Metric>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& m : v) {
      nlohmann::json o{{"name", m.name}, {"value", m.value}};
      if (!m.note.empty()) o["note"] = m.note;
      a.push_back(o);
    }
    return a;
  };
  j["metrics"] = metrics(s.metrics);
  j["targets"] = metrics(s.targets);
  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : s.verdicts)
    j["verdicts"].push_back({{"property", v.property}, {"pass", v.pass}, {"detail", v.detail}});
  j["pass"] = s.pass();
  return j;
}

}  // namespace kpzlab::harness

#endif  // KPZLAB_HARNESS_REPORT_HPP
