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
#include <optional>
#include <string>
#include <vector>

#include "dlcz/config.hpp"
#include "dlcz/correlation.hpp"
#include "dlcz/detection.hpp"

namespace dlcz {

/// Bit i of a pattern index is set when detector i (A=0 .. D=3) clicked in the trial.
using ClickPattern = unsigned;
inline constexpr ClickPattern kPatternCount = 16;

inline constexpr ClickPattern pattern_bit(Detector d) { return 1u << index_of(d); }
std::string pattern_name(ClickPattern pattern);  // "1010" lists A, B, C, D

/// Per-trial probabilities of the 16 click patterns, from a truncated Fock-space enumeration.
///
/// Losses, background, diffusion-in and the beam splitters are composed analytically (binomial
/// and Poisson generating functions), so the only approximation is the source truncation at n_max
/// photons per mode, whose neglected mass is bounded by truncation_error_bound.
struct ClickPatternDistribution {
    std::array<double, kPatternCount> probability{};
    unsigned n_max = 0;
    double truncation_error_bound = 0.0;
    bool truncation_warning = false;  // bound > 1e-6

    double total() const;
    /// P(every detector in `mask` clicks), other detectors unconstrained.
    double all_click(ClickPattern mask) const;
    /// P(at least one detector in `mask` clicks).
    double any_click(ClickPattern mask) const;
};

inline constexpr double kTruncationWarning = 1e-6;
inline constexpr double kTruncationRequired = 1e-8;

/// Throws DomainError for n_max < 1 or an invalid config.
ClickPatternDistribution truncated_joint(const ExperimentConfig &config, unsigned n_max);

/// Upper bound on the source probability mass with more than n_max excitations in either mode.
double truncation_bound(double p, SourceModel model, unsigned n_max);

/// Smallest n_max whose truncation_bound is <= tolerance.
unsigned required_n_max(double p, SourceModel model, double tolerance);

/// Per-gate probability ratios P(start & stop)/(P(start) P(stop)), the oracle counterpart of N/M.
struct PredictedCorrelations {
    double g11 = 0.0;  // (A, B)
    double g22 = 0.0;  // (C, D)
    double g12 = 0.0;  // (A, C)
    double g12_bd = 0.0;  // (B, D)
    /// Cross-correlation of the whole arms: "any Stokes click" with "any anti-Stokes click".
    double g12_arm = 0.0;
    std::array<double, 4> click_probability{};
    ClickPatternDistribution distribution;
};

/// Throws DomainError (naming the required n_max) when the truncation bound exceeds 1e-8, and
/// UndefinedCorrelation when a detector can never click.
PredictedCorrelations predicted_correlations(const ExperimentConfig &config, unsigned n_max = 60);

/// Monte Carlo observables in the shape compare() needs.
struct McObservables {
    std::uint64_t trials = 0;
    std::array<std::uint64_t, kPatternCount> pattern_counts{};
    std::optional<Estimate> g11;
    std::optional<Estimate> g22;
    std::optional<Estimate> g12;
    std::optional<Estimate> g12_bd;
    /// Mean baseline area M per correlation (g11, g22, g12, g12_bd) and the number of baseline peaks.
    /// Used for the uncertainty of a correlation whose same-trial area N is zero.
    std::array<double, 4> baseline_mean{};
    std::uint64_t baseline_peaks = 0;
};

struct ZRow {
    std::string quantity;
    double mc = 0.0;
    double oracle = 0.0;
    double sigma = 0.0;
    double z = 0.0;
    bool flagged = false;
};

struct ZTable {
    std::vector<ZRow> rows;
    double threshold = 4.0;

    std::size_t flagged_count() const;
    /// Comma-separated: quantity,mc,oracle,sigma_mc,z,flagged
    std::string render() const;
};

/// z = (mc - oracle) / sigma_mc per quantity; |z| > threshold is flagged. Pattern and singles
/// frequencies use the binomial sigma of the Monte Carlo estimate (the oracle probability
/// stands in when the observed frequency is 0 or 1). An undefined Monte Carlo g is skipped.
ZTable compare(const McObservables &mc, const PredictedCorrelations &oracle, double threshold = 4.0);

/// Same `key = value` layout as render_report(), plus click and pattern probabilities.
std::string render_oracle_report(const PredictedCorrelations &oracle, const ExperimentConfig &config);

}  // namespace dlcz
