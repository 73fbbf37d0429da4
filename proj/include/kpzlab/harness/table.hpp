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

#ifndef KPZLAB_HARNESS_TABLE_HPP
#define KPZLAB_HARNESS_TABLE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kpzlab/error.hpp"
#include "kpzlab/harness/config.hpp"

namespace kpzlab::harness {

struct ResultRow {
  int replica = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // one per schema column
};

// Rows of one experiment. The leading columns experiment, replica, seed and n
// are implicit; `columns` names the rest.
struct ResultTable {
  std::string experiment;
  int n = 0;
  std::vector<std::string> columns;
  std::vector<ResultRow> rows;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw DataError("no column '" + name + "' in " + experiment + " results");
    return static_cast<std::size_t>(it - columns.begin());
  }

  std::vector<double> values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.values[c]);
    return v;
  }

  // Values of `name` on rows where column `key` equals `key_value`.
  std::vector<double> values_where(const std::string& name, const std::string& key, double key_value) const {
    const std::size_t c = column(name), k = column(key);
    std::vector<double> v;
    for (const auto& r : rows)
      if (r.values[k] == key_value) v.push_back(r.values[c]);
    return v;
  }

  std::vector<double> distinct(const std::string& key) const {
    std::vector<double> v = values(key);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
};

// CSV: header row, ',' delimiter, reals with 17 significant digits.
inline std::string to_csv(const ResultTable& t) {
  std::string s = "experiment,replica,seed,n";
  for (const auto& c : t.columns) s += "," + c;
  s += "\n";
  const std::string prefix = t.experiment + ",";
  const std::string nstr = "," + std::to_string(t.n);
  for (const auto& r : t.rows) {
    if (r.values.size() != t.columns.size()) throw DataError("row width does not match schema");
    s += prefix + std::to_string(r.replica) + "," + std::to_string(r.seed) + nstr;
    for (double v : r.values) s += "," + detail::fmt(v);
    s += "\n";
  }
  return s;
}

inline ResultTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("result file is empty");
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  const auto head = split(line);
  if (head.size() < 4 || head[0] != "experiment" || head[1] != "replica" || head[2] != "seed" || head[3] != "n")
    throw DataError("unexpected result header");
  ResultTable t;
  t.columns.assign(head.begin() + 4, head.end());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != head.size()) throw DataError("result row has " + std::to_string(f.size()) + " cells, expected " +
                                                 std::to_string(head.size()));
    t.experiment = f[0];
    ResultRow r;
    r.replica = static_cast<int>(detail::parse_int("replica", f[1]));
    r.seed = detail::parse_u64("seed", f[2]);
    t.n = static_cast<int>(detail::parse_int("n", f[3]));
    for (std::size_t i = 4; i < f.size(); ++i) {
      try {
        r.values.push_back(detail::parse_double(head[i], f[i]));
      } catch (const ConfigError& e) {
        throw DataError(e.what());
      }
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("write failed for " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing output file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kpzlab::harness

#endif  // KPZLAB_HARNESS_TABLE_HPP
