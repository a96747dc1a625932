// Copyright 2026 The dlczsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace dlcz {

/// Time-tagger resolution: every timestamp and bin edge is an integer number of picoseconds.
/// 10^8 trials at a 200 us cycle period is 2e16 ps, well inside int64.
using Ticks = std::int64_t;

inline constexpr double kTicksPerSecond = 1e12;

inline Ticks to_ticks(double seconds) { return static_cast<Ticks>(std::llround(seconds * kTicksPerSecond)); }

inline double to_seconds(Ticks ticks) { return static_cast<double>(ticks) / kTicksPerSecond; }

/// Exact decimal rendering of a tick count in seconds ("0.000002", "-0.00000001").
std::string format_ticks_as_seconds(Ticks ticks);

/// Inverse of format_ticks_as_seconds (accepts any decimal or exponent notation, rounds to the nearest tick).
Ticks parse_seconds_as_ticks(const std::string &text);

}  // namespace dlcz
