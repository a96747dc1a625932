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

#include "dlcz/detection.hpp"

#include <algorithm>
#include <cmath>

#include "dlcz/errors.hpp"

namespace dlcz {

namespace {

void require_probability(double eta, const char *what) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1]");
    }
}

}  // namespace

std::string_view detector_name(Detector d) {
    static constexpr std::array<std::string_view, 4> kNames = {"A", "B", "C", "D"};
    return kNames[index_of(d)];
}

PulseProfile PulseProfile::truncated_exponential(double decay_fraction) {
    if (!(decay_fraction > 0.0)) {
        throw DomainError("pulse decay must be > 0");
    }
    double tail = std::exp(-1.0 / decay_fraction);
    return PulseProfile([decay_fraction, tail](double u) {
        double f = -decay_fraction * std::log1p(-u * (1.0 - tail));
        return std::clamp(f, 0.0, std::nextafter(1.0, 0.0));
    });
}

Count thin(Count n, double eta, TrialRng &rng) {
    require_probability(eta, "thinning efficiency");
    return sample_binomial(n, eta, rng);
}

Count add_background(Count n, double bg_mean, TrialRng &rng) {
    if (!(bg_mean >= 0.0)) {
        throw DomainError("background mean must be >= 0");
    }
    return n + sample_poisson(bg_mean, rng);
}

std::pair<Count, Count> split(Count n, TrialRng &rng) {
    Count first = sample_binomial(n, 0.5, rng);
    return {first, n - first};
}

double click_probability(Count n, double det_eff, double dark_mean) {
    double miss = std::exp(-dark_mean);
    if (n > 0) {
        miss *= std::pow(1.0 - det_eff, static_cast<double>(n));
    }
    return 1.0 - miss;
}

std::optional<ClickEvent> detect(Detector detector, Count n, double det_eff, double dark_mean, const GateTiming &gate,
                                 std::uint64_t trial_index, const PulseProfile &profile, TrialRng &rng) {
    require_probability(det_eff, "detector efficiency");
    if (!(dark_mean >= 0.0) || gate.width <= 0) {
        throw DomainError("detect needs dark_mean >= 0 and a positive gate width");
    }
    if (n == 0 && dark_mean == 0.0) {
        return std::nullopt;
    }
    if (rng.uniform() >= click_probability(n, det_eff, dark_mean)) {
        return std::nullopt;
    }
    auto offset = static_cast<Ticks>(profile.fraction(rng.uniform()) * static_cast<double>(gate.width));
    offset = std::clamp<Ticks>(offset, 0, gate.width - 1);
    return ClickEvent{detector, static_cast<Ticks>(trial_index) * gate.cycle_period + gate.start + offset, trial_index};
}

}  // namespace dlcz
