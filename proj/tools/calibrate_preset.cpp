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

// Solves for the preset background means that put the predicted Stokes and anti-Stokes singles
// rates on target. Prints constants for include/dlcz/config.hpp.
//
//   calibrate_preset [stokes_rate_hz=220] [antistokes_rate_hz=70]

#include <cstdio>
#include <cstdlib>

#include "dlcz/config.hpp"
#include "dlcz/oracle.hpp"

namespace {

double arm_rate(const dlcz::ExperimentConfig &c, bool stokes) {
    auto o = dlcz::predicted_correlations(c);
    double p = stokes ? o.click_probability[0] + o.click_probability[1]
                      : o.click_probability[2] + o.click_probability[3];
    return p / c.cycle_period;
}

double solve(dlcz::ExperimentConfig c, double dlcz::ExperimentConfig::*field, bool stokes, double target) {
    c.*field = 0.0;
    if (arm_rate(c, stokes) >= target) {
        std::fprintf(stderr, "target %g s^-1 already exceeded without background\n", target);
        std::exit(1);
    }
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-18; ++i) {
        double mid = 0.5 * (lo + hi);
        c.*field = mid;
        (arm_rate(c, stokes) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int main(int argc, char **argv) {
    double stokes_target = argc > 1 ? std::atof(argv[1]) : 220.0;
    double antistokes_target = argc > 2 ? std::atof(argv[2]) : 70.0;
    auto c = dlcz::replication_preset();
    double bg_s = solve(c, &dlcz::ExperimentConfig::bg_stokes_mean, true, stokes_target);
    double bg_as = solve(c, &dlcz::ExperimentConfig::bg_antistokes_mean, false, antistokes_target);
    c.bg_stokes_mean = bg_s;
    c.bg_antistokes_mean = bg_as;
    std::printf("inline constexpr double kPresetBgStokesMean = %.17g;\n", bg_s);
    std::printf("inline constexpr double kPresetBgAntiStokesMean = %.17g;\n", bg_as);
    std::printf("# stokes rate %.6f s^-1, anti-Stokes rate %.6f s^-1\n", arm_rate(c, true), arm_rate(c, false));
    return 0;
}
