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
#include <cstdint>
#include <span>
#include <string>

#include "dlcz/coincidence.hpp"

namespace dlcz {

/// A value with its one-standard-deviation uncertainty.
struct Estimate {
    double value = 0.0;
    double sigma = 0.0;

    bool operator==(const Estimate &) const = default;
};

/// Normalized correlation g = N/M with Poissonian peak areas:
/// sigma = g * sqrt(1/N + 1/(n_baseline_peaks * M)). For N = 0, g = 0 and sigma = 0.
/// Throws UndefinedCorrelation when M <= 0.
Estimate g_ratio(double same_trial, double baseline_mean, std::uint64_t n_baseline_peaks);

/// Cauchy-Schwarz test g12^2 <= g11 * g22 with first-order propagated uncertainties.
struct CorrelationReport {
    Estimate g11;
    Estimate g22;
    Estimate g12;
    Estimate lhs;  // g12^2
    Estimate rhs;  // g11 * g22
    Estimate ratio;  // lhs / rhs
    double violation_significance = 0.0;  // (lhs - rhs) / sigma(lhs - rhs)
    double delay_dt = 0.0;

    bool violated() const { return lhs.value > rhs.value; }
};

/// Throws DomainError for non-finite or negative inputs.
CorrelationReport cauchy_schwarz(Estimate g11, Estimate g22, Estimate g12, double delay_dt = 0.0);

/// ((1+p)/(2p))^2, the lossless, noiseless violation ratio. Throws DomainError for p <= 0.
double ideal_violation(double p);

struct SinglesRates {
    std::array<double, 4> per_detector{};  // s^-1, indexed by Detector
    double stokes = 0.0;                   // A + B
    double antistokes = 0.0;               // C + D
};

/// Throws DomainError for duration <= 0.
SinglesRates singles_rates(std::span<const TimestampStream> streams, double duration);
SinglesRates singles_rates(const std::array<std::uint64_t, 4> &click_counts, double duration);

/// `key = value` summary with fixed field names (see docs/formats.md).
std::string render_report(const CorrelationReport &report);

}  // namespace dlcz
