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

#include "dlcz/config.hpp"

#include <array>
#include <cmath>
#include <set>
#include <variant>

#include "dlcz/text_format.hpp"
#include "dlcz/time.hpp"

namespace dlcz {

namespace {

using DoubleField = double ExperimentConfig::*;
using CountField = std::uint64_t ExperimentConfig::*;
struct ModelField {};

struct FieldSpec {
    FieldInfo info;
    std::variant<DoubleField, CountField, ModelField> member;
};

const std::array<FieldSpec, 18> kFields = {{
    {{"source_model", "-", "quantum_tms | classical_correlated"}, ModelField{}},
    {{"p_excitation", "1", "mean excitation number per write pulse (>= 0)"}, &ExperimentConfig::p_excitation},
    {{"delay_dt", "s", "write -> read gate delay (>= 0)"}, &ExperimentConfig::delay_dt},
    {{"memory_lifetime", "s", "1/e survival time of a stored excitation (> 0)"}, &ExperimentConfig::memory_lifetime},
    {{"memory_diffusion_in", "1", "mean uncorrelated excitations entering the read mode after full decay (>= 0)"},
     &ExperimentConfig::memory_diffusion_in},
    {{"retrieval_eff", "1", "excitation -> anti-Stokes photon probability [0,1]"}, &ExperimentConfig::retrieval_eff},
    {{"transmission", "1", "cell -> detector transmission per channel [0,1]"}, &ExperimentConfig::transmission},
    {{"detector_eff", "1", "per-detector quantum efficiency [0,1]"}, &ExperimentConfig::detector_eff},
    {{"dark_mean", "1", "mean dark counts per detector per gate (>= 0)"}, &ExperimentConfig::dark_mean},
    {{"bg_stokes_mean", "1", "mean leaked background photons per gate, Stokes channel (>= 0)"},
     &ExperimentConfig::bg_stokes_mean},
    {{"bg_antistokes_mean", "1", "mean leaked background photons per gate, anti-Stokes channel (>= 0)"},
     &ExperimentConfig::bg_antistokes_mean},
    {{"gate_width", "s", "detector gate width (> 0, < cycle_period)"}, &ExperimentConfig::gate_width},
    {{"cycle_period", "s", "duty-cycle period"}, &ExperimentConfig::cycle_period},
    {{"n_trials", "count", "number of duty cycles (>= 1)"}, &ExperimentConfig::n_trials},
    {{"rng_seed", "-", "64-bit master seed"}, &ExperimentConfig::rng_seed},
    {{"hist_bin", "s", "coincidence histogram bin width (> 0)"}, &ExperimentConfig::hist_bin},
    {{"hist_span", "s", "histogram span (>= (baseline_peaks+1)*cycle_period)"}, &ExperimentConfig::hist_span},
    {{"baseline_peaks", "count", "cross-trial peaks averaged into M (>= 1)"}, &ExperimentConfig::baseline_peaks},
}};

const std::array<FieldInfo, kFields.size()> kFieldInfos = [] {
    std::array<FieldInfo, kFields.size()> out{};
    for (std::size_t i = 0; i < kFields.size(); ++i) {
        out[i] = kFields[i].info;
    }
    return out;
}();

const FieldSpec *find_field(std::string_view key) {
    for (const auto &f : kFields) {
        if (f.info.key == key) {
            return &f;
        }
    }
    return nullptr;
}

// Throws DomainError naming the key; parse_config rewraps it with a position.
void assign(ExperimentConfig &config, const FieldSpec &field, std::string_view value) {
    const std::string key(field.info.key);
    if (std::holds_alternative<ModelField>(field.member)) {
        config.source_model = parse_source_model(value);
    } else if (auto d = std::get_if<DoubleField>(&field.member)) {
        double parsed = 0;
        if (!parse_double(value, parsed)) {
            throw DomainError(key + ": not a number: '" + std::string(value) + "'");
        }
        if (!std::isfinite(parsed)) {
            throw DomainError(key + ": must be finite");
        }
        config.*(*d) = parsed;
    } else {
        std::uint64_t parsed = 0;
        if (!parse_uint64(value, parsed)) {
            throw DomainError(key + ": not a non-negative integer: '" + std::string(value) + "'");
        }
        config.*std::get<CountField>(field.member) = parsed;
    }
}

bool is_multiple(Ticks value, Ticks unit) { return unit > 0 && value % unit == 0; }

}  // namespace

std::string_view source_model_name(SourceModel model) {
    switch (model) {
        case SourceModel::QuantumTms:
            return "quantum_tms";
        case SourceModel::ClassicalCorrelated:
            return "classical_correlated";
    }
    return "unknown";
}

SourceModel parse_source_model(std::string_view name) {
    if (name == "quantum_tms") {
        return SourceModel::QuantumTms;
    }
    if (name == "classical_correlated") {
        return SourceModel::ClassicalCorrelated;
    }
    throw DomainError("source_model: expected quantum_tms or classical_correlated, got '" + std::string(name) + "'");
}

ExperimentConfig replication_preset() { return ExperimentConfig{}; }

std::vector<Violation> validate(const ExperimentConfig &c) {
    std::vector<Violation> out;
    auto check = [&out](bool ok, std::string_view key, std::string message) {
        if (!ok) {
            out.push_back({std::string(key), std::move(message)});
        }
    };
    auto probability = [&](double v, std::string_view key) { check(v >= 0.0 && v <= 1.0, key, "must lie in [0, 1]"); };
    auto non_negative = [&](double v, std::string_view key) { check(v >= 0.0, key, "must be >= 0"); };
    auto finite = [&](double v, std::string_view key) { check(std::isfinite(v), key, "must be finite"); };

    for (const auto &f : kFields) {
        if (auto d = std::get_if<DoubleField>(&f.member)) {
            finite(c.*(*d), f.info.key);
        }
    }
    non_negative(c.p_excitation, "p_excitation");
    non_negative(c.delay_dt, "delay_dt");
    check(c.memory_lifetime > 0.0, "memory_lifetime", "must be > 0");
    non_negative(c.memory_diffusion_in, "memory_diffusion_in");
    probability(c.retrieval_eff, "retrieval_eff");
    probability(c.transmission, "transmission");
    probability(c.detector_eff, "detector_eff");
    non_negative(c.dark_mean, "dark_mean");
    non_negative(c.bg_stokes_mean, "bg_stokes_mean");
    non_negative(c.bg_antistokes_mean, "bg_antistokes_mean");
    check(c.gate_width > 0.0, "gate_width", "must be > 0");
    check(c.gate_width < c.cycle_period, "gate_width", "gate must fit inside cycle (gate_width < cycle_period)");
    check(c.delay_dt + c.gate_width <= c.cycle_period, "delay_dt",
          "read gate must close within the cycle (delay_dt + gate_width <= cycle_period)");
    check(c.n_trials >= 1, "n_trials", "must be >= 1");
    check(c.baseline_peaks >= 1, "baseline_peaks", "must be >= 1");
    check(c.hist_bin > 0.0, "hist_bin", "must be > 0");

    if (c.hist_bin > 0.0 && std::isfinite(c.hist_bin) && std::isfinite(c.hist_span) && std::isfinite(c.cycle_period)) {
        Ticks bin = to_ticks(c.hist_bin);
        check(bin >= 1, "hist_bin", "must be at least 1 ps");
        double needed = static_cast<double>(c.baseline_peaks + 1) * c.cycle_period;
        check(c.hist_span >= needed * (1.0 - 1e-12), "hist_span",
              "span too small: must be >= (baseline_peaks+1)*cycle_period = " + format_report(needed) + " s");
        if (bin >= 1) {
            check(is_multiple(to_ticks(c.hist_span), bin), "hist_span", "must be an integer multiple of hist_bin");
            check(is_multiple(to_ticks(c.cycle_period), bin), "cycle_period",
                  "must be an integer multiple of hist_bin");
        }
    }
    return out;
}

const ExperimentConfig &require_valid(const ExperimentConfig &config) {
    auto violations = validate(config);
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return config;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config = replication_preset();
    std::set<std::string> seen;
    for (const auto &entry : parse_key_values(text)) {
        const FieldSpec *field = find_field(entry.key);
        if (field == nullptr) {
            throw ParseError(entry.line, 1, "unknown key '" + entry.key + "'");
        }
        if (!seen.insert(entry.key).second) {
            throw ParseError(entry.line, 1, "duplicate key '" + entry.key + "'");
        }
        try {
            assign(config, *field, entry.value);
        } catch (const DomainError &e) {
            throw ParseError(entry.line, entry.value_column, e.what());
        }
    }
    require_valid(config);
    return config;
}

std::string render_config(const ExperimentConfig &config) {
    std::string out = "# dlczsim experiment config\n";
    for (const auto &f : kFields) {
        out += std::string(f.info.key) + " = ";
        if (std::holds_alternative<ModelField>(f.member)) {
            out += source_model_name(config.source_model);
        } else if (auto d = std::get_if<DoubleField>(&f.member)) {
            out += format_exact(config.*(*d));
        } else {
            out += std::to_string(config.*std::get<CountField>(f.member));
        }
        out += "\n";
    }
    return out;
}

void set_field(ExperimentConfig &config, std::string_view key, std::string_view value) {
    const FieldSpec *field = find_field(key);
    if (field == nullptr) {
        throw DomainError("unknown config key '" + std::string(key) + "'");
    }
    assign(config, *field, value);
}

double get_field(const ExperimentConfig &config, std::string_view key) {
    const FieldSpec *field = find_field(key);
    if (field == nullptr) {
        throw DomainError("unknown config key '" + std::string(key) + "'");
    }
    if (std::holds_alternative<ModelField>(field->member)) {
        return config.source_model == SourceModel::QuantumTms ? 0.0 : 1.0;
    }
    if (auto d = std::get_if<DoubleField>(&field->member)) {
        return config.*(*d);
    }
    return static_cast<double>(config.*std::get<CountField>(field->member));
}

std::span<const FieldInfo> config_fields() { return kFieldInfos; }

bool is_config_field(std::string_view key) { return find_field(key) != nullptr; }

}  // namespace dlcz
