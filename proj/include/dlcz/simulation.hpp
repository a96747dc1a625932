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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlcz/coincidence.hpp"
#include "dlcz/config.hpp"
#include "dlcz/correlation.hpp"
#include "dlcz/detection.hpp"
#include "dlcz/oracle.hpp"
#include "dlcz/source.hpp"

namespace dlcz {

/// Timing of one duty cycle in ticks, derived once from a validated config.
struct TrialPlan {
    ExperimentConfig config;
    GateTiming write_gate;  // detectors A, B
    GateTiming read_gate;   // detectors C, D
    Ticks bin_width = 0;
    Ticks span = 0;
    double survival = 1.0;

    explicit TrialPlan(const ExperimentConfig &config);
};

struct TrialOutcome {
    TrialExcitation excitation;
    std::array<std::optional<ClickEvent>, 4> clicks;

    ClickPattern pattern() const;
};

/// One write -> store -> read -> detect cycle. A pure function of (plan, seed, trial_index).
TrialOutcome simulate_trial(const TrialPlan &plan, std::uint64_t seed, std::uint64_t trial_index,
                            const PulseProfile &profile = PulseProfile::uniform());

/// The four analyzed detector pairs, in a fixed order.
enum class PairRole : unsigned { StokesAuto = 0, AntiStokesAuto = 1, Cross = 2, CrossDuplicate = 3 };
inline constexpr std::array<DetectorPair, 4> kAnalyzedPairs = {{
    {Detector::A, Detector::B},
    {Detector::C, Detector::D},
    {Detector::A, Detector::C},
    {Detector::B, Detector::D},
}};

struct PairResult {
    CoincidenceHistogram histogram;
    Ticks window_offset = 0;
    PeakAreas areas;
    std::optional<Estimate> g;  // empty when M = 0
};

struct RunOptions {
    std::optional<std::uint64_t> trials;  // overrides config.n_trials
    std::optional<std::uint64_t> seed;    // overrides config.rng_seed
    unsigned workers = 1;
    bool keep_events = false;
    std::uint64_t block_trials = 16384;   // unit of work; results do not depend on it
    PulseProfile profile;
};

struct RunManifest {
    std::string config_text;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    unsigned workers = 1;
    double wall_time_seconds = 0.0;
    std::vector<std::string> output_files;
    std::string code_version;

    std::string to_json() const;
};

struct RunResult {
    ExperimentConfig config;  // n_trials and rng_seed reflect the options actually used
    std::array<PairResult, 4> pairs;  // indexed by PairRole
    std::array<std::uint64_t, 4> click_counts{};
    std::array<std::uint64_t, kPatternCount> pattern_counts{};
    std::optional<std::array<TimestampStream, 4>> streams;  // only with keep_events
    std::optional<CorrelationReport> report;  // empty if any of g11, g22, g12 is undefined
    SinglesRates rates;
    RunManifest manifest;

    const PairResult &pair(PairRole role) const { return pairs[static_cast<unsigned>(role)]; }
    McObservables observables() const;
};

/// Runs the trials, reduces clicks to histograms on the fly, and extracts N, M and g for each pair.
/// Throws ValidationError for an invalid config.
RunResult simulate_run(const ExperimentConfig &config, const RunOptions &options = {});

/// Report with run metadata, per-pair areas and singles rates (see docs/formats.md).
std::string render_run_report(const RunResult &result);

struct SweepRow {
    double value = 0.0;
    std::optional<Estimate> g11, g22, g12;
    std::optional<CorrelationReport> report;
};

struct SweepTable {
    std::string parameter;
    std::vector<SweepRow> rows;

    std::string render() const;  // CSV, see docs/formats.md
};

/// One simulate_run per value, seeded with mix_seed(seed, index). Throws DomainError for an
/// unknown parameter, ValidationError if a value makes the config invalid.
SweepTable sweep(const ExperimentConfig &config, const std::string &parameter, std::span<const double> values,
                 const RunOptions &options = {});

/// Writes report, histograms, optional events and the manifest into `directory` (created if
/// missing). Returns the written file names. Throws IoError with the failing path.
std::vector<std::string> export_run(RunResult &result, const std::filesystem::path &directory);

std::string code_version();

}  // namespace dlcz
