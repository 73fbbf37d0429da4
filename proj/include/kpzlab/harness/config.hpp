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

#ifndef KPZLAB_HARNESS_CONFIG_HPP
#define KPZLAB_HARNESS_CONFIG_HPP

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "kpzlab/error.hpp"
#include "kpzlab/fixed_point.hpp"

namespace kpzlab::harness {

// One experiment invocation. Every field has an experiment-specific default;
// a config file overrides any subset of them.
struct ExperimentConfig {
  std::string experiment;
  int n = 200;
  int replicas = 1000;
  std::uint64_t seed = 1;
  DataKind data = DataKind::kNarrowWedge;
  double A = 1.0;
  double dt = 1.0;
  double bet = 1.0;
  double C_sq = 1.0;
  double mu = 0.0;
  std::vector<double> time_knots;
  double x_window = 4.0;
  std::vector<double> x_points;
  std::vector<double> eps;
  std::vector<double> ratios;
  std::vector<double> thresholds;
  double a = 0.0;  // 0 selects a = t^{1/8} for short-time replacement
  double alpha = 2.0;
  double delta = 1.0;
  bool strict_window = false;
  int workers = 1;
  std::string out = "kpzlab-out";
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> k{
      "experiment", "n",      "replicas",   "seed",       "data",   "A",     "dt",    "bet",
      "C_sq",       "mu",     "time_knots", "x_window",   "x_points", "eps", "ratios", "thresholds",
      "a",          "alpha",  "delta",      "strict_window", "workers", "out"};
  return k;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': '" + v + "' is not a number");
  return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
  return x;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': '" + v + "' is not an unsigned integer");
  return x;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

}  // namespace detail

// Flat "key = value" document; '#' starts a comment line. Unknown and
// repeated keys are errors.
inline KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::set<std::string> seen;
  const std::set<std::string> known(config_keys().begin(), config_keys().end());
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (!known.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv.emplace_back(key, value);
  }
  return kv;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void apply_overrides(ExperimentConfig& c, const KeyValues& kv) {
  using namespace detail;
  for (const auto& [k, v] : kv) {
    if (k == "experiment") c.experiment = v;
    else if (k == "n") c.n = static_cast<int>(parse_int(k, v));
    else if (k == "replicas") c.replicas = static_cast<int>(parse_int(k, v));
    else if (k == "seed") c.seed = parse_u64(k, v);
    else if (k == "data") {
      try {
        c.data = data_kind_from(v);
      } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
      }
    }
    else if (k == "A") c.A = parse_double(k, v);
    else if (k == "dt") c.dt = parse_double(k, v);
    else if (k == "bet") c.bet = parse_double(k, v);
    else if (k == "C_sq") c.C_sq = parse_double(k, v);
    else if (k == "mu") c.mu = parse_double(k, v);
    else if (k == "time_knots") c.time_knots = parse_list(k, v);
    else if (k == "x_window") c.x_window = parse_double(k, v);
    else if (k == "x_points") c.x_points = parse_list(k, v);
    else if (k == "eps") c.eps = parse_list(k, v);
    else if (k == "ratios") c.ratios = parse_list(k, v);
    else if (k == "thresholds") c.thresholds = parse_list(k, v);
    else if (k == "a") c.a = parse_double(k, v);
    else if (k == "alpha") c.alpha = parse_double(k, v);
    else if (k == "delta") c.delta = parse_double(k, v);
    else if (k == "strict_window") c.strict_window = parse_bool(k, v);
    else if (k == "workers") c.workers = static_cast<int>(parse_int(k, v));
    else if (k == "out") c.out = v;
    else throw ConfigError("unknown key '" + k + "'");
  }
}

// Every field that can influence results, in a fixed order. Worker count and
// output directory are excluded: they never change result bytes.
inline std::string canonical(const ExperimentConfig& c) {
  using detail::fmt;
  using detail::fmt_list;
  std::string s;
  auto put = [&](const char* k, const std::string& v) { s += std::string(k) + "=" + v + "\n"; };
  put("experiment", c.experiment);
  put("n", std::to_string(c.n));
  put("replicas", std::to_string(c.replicas));
  put("seed", std::to_string(c.seed));
  put("data", to_string(c.data));
  put("A", fmt(c.A));
  put("dt", fmt(c.dt));
  put("bet", fmt(c.bet));
  put("C_sq", fmt(c.C_sq));
  put("mu", fmt(c.mu));
  put("time_knots", fmt_list(c.time_knots));
  put("x_window", fmt(c.x_window));
  put("x_points", fmt_list(c.x_points));
  put("eps", fmt_list(c.eps));
  put("ratios", fmt_list(c.ratios));
  put("thresholds", fmt_list(c.thresholds));
  put("a", fmt(c.a));
  put("alpha", fmt(c.alpha));
  put("delta", fmt(c.delta));
  put("strict_window", c.strict_window ? "true" : "false");
  return s;
}

inline std::string sha256_hex(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string config_hash(const ExperimentConfig& c) { return sha256_hex(canonical(c)); }

}  // namespace kpzlab::harness

#endif  // KPZLAB_HARNESS_CONFIG_HPP
