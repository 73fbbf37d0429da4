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

#ifndef KPZLAB_HARNESS_CRITERIA_HPP
#define KPZLAB_HARNESS_CRITERIA_HPP

#include <cmath>

// Pass/fail tolerances shared by `kpzlab report` and the acceptance binary.
namespace kpzlab::harness::criteria {

struct Band {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

inline constexpr double kOnePointKs = 0.05;
inline constexpr double kStationarityKs = 0.05;
inline constexpr double kBaikRainsKs = 0.07;
inline constexpr double kSymmetryKs = 0.06;
inline constexpr Band kUpperExponent{1.2, 1.8};
inline constexpr Band kLowerExponent{2.2, 3.8};
inline constexpr Band kArgmaxSlope{2.0, 4.0};
// Radii r entering the argmax slope fit.
inline constexpr Band kArgmaxFitRange{0.75, 2.0};
inline constexpr double kIncrementKsSlack = 0.02;
inline constexpr Band kEnvelopeSlope{1.0, 2.0};
inline constexpr Band kLilBand{0.3, 3.0};  // multiples of the target constant
inline constexpr double kDeviationThreshold = 1.0;

// Targets attached to reports.
inline constexpr double kUpperTailExponent = 1.5;
inline constexpr double kNarrowWedgeUpperCoefficient = 4.0 / 3.0;
inline constexpr double kStationaryUpperCoefficient = 2.0 / 3.0;
inline constexpr double kLowerTailExponent = 3.0;
inline constexpr double kArgmaxTailExponent = 3.0;
inline const double kLilLongNarrowWedge = std::pow(0.75, 2.0 / 3.0);
inline const double kLilLongBrownian = std::pow(1.5, 2.0 / 3.0);
inline const double kLilShort = std::pow(1.5, 2.0 / 3.0);
inline constexpr double kTracyWidomMean = -1.7710868074;
inline constexpr double kTracyWidomVariance = 0.8131947928;

}  // namespace kpzlab::harness::criteria

#endif  // KPZLAB_HARNESS_CRITERIA_HPP
