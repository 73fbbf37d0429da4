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

#ifndef KPZLAB_RNG_HPP
#define KPZLAB_RNG_HPP

#include <cstdint>
#include <random>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace kpzlab {

using Engine = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Positional seed derivation. The child depends only on (parent, a, b), never
// on the order in which children are requested.
inline constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                                           std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(parent);
  h = splitmix64(h ^ (a * 0xd1b54a32d192ed03ULL));
  h = splitmix64(h ^ (b * 0x8cb92ba72f3d8dd7ULL));
  return h;
}

inline Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

// Boost distributions are used instead of <random> ones so that draws are the
// same across standard library implementations.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : eng_(make_engine(seed)) {}

  double exponential() { return exp_(eng_); }
  double normal() { return normal_(eng_); }
  double uniform() { return uni_(eng_); }
  Engine& engine() { return eng_; }

 private:
  Engine eng_;
  boost::random::exponential_distribution<double> exp_{1.0};
  boost::random::normal_distribution<double> normal_{0.0, 1.0};
  boost::random::uniform_01<double> uni_;
};

}  // namespace kpzlab

#endif  // KPZLAB_RNG_HPP
