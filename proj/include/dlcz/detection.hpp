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

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "dlcz/sampling.hpp"
#include "dlcz/time.hpp"

namespace dlcz {

/// A, B watch the Stokes channel behind its 50/50 splitter; C, D the anti-Stokes channel.
enum class Detector : unsigned { A = 0, B = 1, C = 2, D = 3 };

inline constexpr std::array<Detector, 4> kAllDetectors = {Detector::A, Detector::B, Detector::C, Detector::D};

inline constexpr unsigned index_of(Detector d) { return static_cast<unsigned>(d); }
std::string_view detector_name(Detector d);

enum class Channel { Stokes, AntiStokes };

struct ChannelParams {
    Channel channel = Channel::Stokes;
    double transmission = 1.0;
    double bg_mean = 0.0;
};

/// One gate per detector per duty cycle, at a fixed offset inside the cycle.
struct GateTiming {
    Ticks cycle_period = 0;
    Ticks start = 0;
    Ticks width = 0;
};

struct ClickEvent {
    Detector detector = Detector::A;
    Ticks timestamp = 0;  // trial_index * cycle_period + gate start + offset
    std::uint64_t trial_index = 0;

    bool operator==(const ClickEvent &) const = default;
};

/// Temporal shape of clicks inside a gate, given as a quantile function u in [0,1) -> fraction of
/// the gate in [0,1). The default is uniform.
class PulseProfile {
   public:
    PulseProfile() = default;
    explicit PulseProfile(std::function<double(double)> quantile) : quantile_(std::move(quantile)) {}

    static PulseProfile uniform() { return PulseProfile(); }
    /// exp(-t/decay) truncated to the gate; decay given as a fraction of the gate width.
    static PulseProfile truncated_exponential(double decay_fraction);

    double fraction(double u) const { return quantile_ ? quantile_(u) : u; }

   private:
    std::function<double(double)> quantile_;
};

/// Binomial(n, eta) loss.
Count thin(Count n, double eta, TrialRng &rng);

/// n + Poisson(bg_mean).
Count add_background(Count n, double bg_mean, TrialRng &rng);

/// 50/50 beam splitter: (k, n-k) with k ~ Binomial(n, 1/2).
std::pair<Count, Count> split(Count n, TrialRng &rng);

/// Probability that a click detector fires for n incident photons: 1 - (1-eff)^n e^(-dark).
double click_probability(Count n, double det_eff, double dark_mean);

/// Non-number-resolving gated detector: at most one click per gate.
std::optional<ClickEvent> detect(Detector detector, Count n, double det_eff, double dark_mean, const GateTiming &gate,
                                 std::uint64_t trial_index, const PulseProfile &profile, TrialRng &rng);

}  // namespace dlcz
