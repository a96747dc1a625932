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

#include <cstdint>

#include "dlcz/rng.hpp"

namespace dlcz {

using Count = std::uint64_t;

// Samplers tuned for the sub-unity occupancies of a photon-counting trial. Small means
// use inverse-transform search (one uniform per draw); large ones defer to <random>.

/// Geometric (Bose-Einstein) law with the given mean: P(n) = mean^n / (1+mean)^(n+1).
Count sample_thermal(double mean, TrialRng &rng);

Count sample_poisson(double mean, TrialRng &rng);

Count sample_binomial(Count n, double probability, TrialRng &rng);

double sample_exponential(double mean, TrialRng &rng);

}  // namespace dlcz
