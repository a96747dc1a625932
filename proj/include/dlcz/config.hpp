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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dlcz/errors.hpp"

namespace dlcz {

/// Physics of the write process.
enum class SourceModel {
    /// Two-mode squeezed vacuum: thermal marginals, Stokes and memory numbers perfectly equal.
    QuantumTms,
    /// Common exponentially distributed intensity driving two independent Poisson counts.
    /// Admits a positive P-representation, so it sits on or below the Cauchy-Schwarz bound.
    ClassicalCorrelated,
};

std::string_view source_model_name(SourceModel model);
SourceModel parse_source_model(std::string_view name);

/// Preset background means: the committed output of tools/calibrate_preset, which solves for
/// the leakage that reproduces 220 /s (Stokes) and 70 /s (anti-Stokes) singles at 5 kHz.
inline constexpr double kPresetBgStokesMean = 1.3376345683237473e-04;
inline constexpr double kPresetBgAntiStokesMean = 4.9309953238399779e-03;

/// Every physical and acquisition parameter of one simulated run. Times in seconds.
///
/// Timing within one duty cycle: the write gate (detectors A, B) opens at 0 and the
/// read gate (detectors C, D) opens at delay_dt; both last gate_width.
struct ExperimentConfig {
    SourceModel source_model = SourceModel::QuantumTms;
    double p_excitation = 0.14;          // mean excitation number per write pulse
    double delay_dt = 2e-6;              // write -> read delay
    double memory_lifetime = 1e-6;       // 1/e survival time of a stored excitation
    double memory_diffusion_in = 0.1;    // mean uncorrelated excitations diffusing in (full decay)
    double retrieval_eff = 0.32;         // excitation -> anti-Stokes conversion
    double transmission = 0.5;           // cell -> detector, per channel
    double detector_eff = 0.64;          // per-detector quantum efficiency
    double dark_mean = 5e-5;             // dark counts per detector per gate
    double bg_stokes_mean = kPresetBgStokesMean;          // leaked photons per gate, Stokes channel
    double bg_antistokes_mean = kPresetBgAntiStokesMean;  // leaked photons per gate, anti-Stokes channel
    double gate_width = 1e-6;
    double cycle_period = 2e-4;
    std::uint64_t n_trials = 1000000;
    std::uint64_t rng_seed = 20040901;
    double hist_bin = 1e-8;
    double hist_span = 1.8e-3;
    std::uint64_t baseline_peaks = 7;

    bool operator==(const ExperimentConfig &) const = default;
};

/// The replication preset (identical to a default-constructed ExperimentConfig).
ExperimentConfig replication_preset();

/// Empty iff every invariant holds; otherwise the complete list of violations.
std::vector<Violation> validate(const ExperimentConfig &config);

/// Throws ValidationError when validate() is non-empty.
const ExperimentConfig &require_valid(const ExperimentConfig &config);

/// Parses the flat `key = value` format (one key per line, `#` comments). Omitted keys take the
/// replication_preset() value. The result is validated.
ExperimentConfig parse_config(std::string_view text);

/// Renders every key, in canonical order, with round-trip exact numbers.
std::string render_config(const ExperimentConfig &config);

/// Assigns one field from its textual value. Does not validate the whole config.
void set_field(ExperimentConfig &config, std::string_view key, std::string_view value);

/// Numeric view of a field (source_model maps to 0/1). Throws DomainError for unknown keys.
double get_field(const ExperimentConfig &config, std::string_view key);

struct FieldInfo {
    std::string_view key;
    std::string_view unit;
    std::string_view description;
};

/// All recognised keys, in canonical render order.
std::span<const FieldInfo> config_fields();

bool is_config_field(std::string_view key);

}  // namespace dlcz
