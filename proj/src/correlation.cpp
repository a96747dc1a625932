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

#include "dlcz/correlation.hpp"

#include <cmath>
#include <limits>

#include "dlcz/errors.hpp"
#include "dlcz/text_format.hpp"

namespace dlcz {

Estimate g_ratio(double same_trial, double baseline_mean, std::uint64_t n_baseline_peaks) {
    if (!(baseline_mean > 0.0)) {
        throw UndefinedCorrelation("normalization M is zero: no cross-trial coincidences");
    }
    if (n_baseline_peaks == 0) {
        throw DomainError("n_baseline_peaks must be >= 1");
    }
    if (!(same_trial >= 0.0)) {
        throw DomainError("same-trial area N must be >= 0");
    }
    double g = same_trial / baseline_mean;
    if (same_trial == 0.0) {
        return {0.0, 0.0};
    }
    double rel = std::sqrt(1.0 / same_trial + 1.0 / (static_cast<double>(n_baseline_peaks) * baseline_mean));
    return {g, g * rel};
}

CorrelationReport cauchy_schwarz(Estimate g11, Estimate g22, Estimate g12, double delay_dt) {
    for (const Estimate &e : {g11, g22, g12}) {
        if (!std::isfinite(e.value) || !std::isfinite(e.sigma) || e.value < 0.0 || e.sigma < 0.0) {
            throw DomainError("correlations and their sigmas must be finite and non-negative");
        }
    }
    CorrelationReport r;
    r.g11 = g11;
    r.g22 = g22;
    r.g12 = g12;
    r.delay_dt = delay_dt;
    r.lhs = {g12.value * g12.value, 2.0 * g12.value * g12.sigma};
    r.rhs = {g11.value * g22.value, std::hypot(g22.value * g11.sigma, g11.value * g22.sigma)};

    if (r.rhs.value > 0.0) {
        double q = r.lhs.value / r.rhs.value;
        double rel_lhs = r.lhs.value > 0.0 ? r.lhs.sigma / r.lhs.value : 0.0;
        double rel_rhs = r.rhs.sigma / r.rhs.value;
        r.ratio = {q, q * std::hypot(rel_lhs, rel_rhs)};
    } else {
        r.ratio = {r.lhs.value > 0.0 ? std::numeric_limits<double>::infinity()
                                     : std::numeric_limits<double>::quiet_NaN(),
                   0.0};
    }

    double diff = r.lhs.value - r.rhs.value;
    double sigma = std::hypot(r.lhs.sigma, r.rhs.sigma);
    if (sigma > 0.0) {
        r.violation_significance = diff / sigma;
    } else if (diff != 0.0) {
        r.violation_significance = std::copysign(std::numeric_limits<double>::infinity(), diff);
    } else {
        r.violation_significance = 0.0;
    }
    return r;
}

double ideal_violation(double p) {
    if (!(p > 0.0)) {
        throw DomainError("ideal_violation needs p > 0");
    }
    double x = (1.0 + p) / (2.0 * p);
    return x * x;
}

SinglesRates singles_rates(const std::array<std::uint64_t, 4> &click_counts, double duration) {
    if (!(duration > 0.0)) {
        throw DomainError("singles rates need a positive duration");
    }
    SinglesRates rates;
    for (std::size_t i = 0; i < 4; ++i) {
        rates.per_detector[i] = static_cast<double>(click_counts[i]) / duration;
    }
    rates.stokes = rates.per_detector[0] + rates.per_detector[1];
    rates.antistokes = rates.per_detector[2] + rates.per_detector[3];
    return rates;
}

SinglesRates singles_rates(std::span<const TimestampStream> streams, double duration) {
    std::array<std::uint64_t, 4> counts{};
    for (const auto &s : streams) {
        counts[index_of(s.detector)] += s.timestamps.size();
    }
    return singles_rates(counts, duration);
}

std::string render_report(const CorrelationReport &r) {
    std::string out;
    auto line = [&out](const char *key, const std::string &value) { out += std::string(key) + " = " + value + "\n"; };
    line("delay_dt", format_report(r.delay_dt));
    line("g11", format_report(r.g11.value));
    line("g11_sigma", format_report(r.g11.sigma));
    line("g22", format_report(r.g22.value));
    line("g22_sigma", format_report(r.g22.sigma));
    line("g12", format_report(r.g12.value));
    line("g12_sigma", format_report(r.g12.sigma));
    line("lhs", format_report(r.lhs.value));
    line("lhs_sigma", format_report(r.lhs.sigma));
    line("rhs", format_report(r.rhs.value));
    line("rhs_sigma", format_report(r.rhs.sigma));
    line("ratio", format_report(r.ratio.value));
    line("ratio_sigma", format_report(r.ratio.sigma));
    line("violation_significance", format_report(r.violation_significance));
    line("verdict", r.violated() ? "violated" : "not_violated");
    return out;
}

}  // namespace dlcz
