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

// dlczsim command-line front end. Talks to the simulator only through the C API.
//
// Exit codes: 0 success, 2 usage, 3 comparison flagged a |z| above threshold,
// 10 + dlcz_status for library failures (11 parse, 12 invalid config, 13 domain,
// 14 contract, 15 undefined, 16 io, 17 argument, 18 internal).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "dlcz/dlczsim.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFlagged = 3;

struct Failure {
    dlcz_status status;
};

void check(dlcz_status s) {
    if (s != DLCZ_OK) {
        throw Failure{s};
    }
}

struct ConfigDeleter {
    void operator()(dlcz_config *c) const { dlcz_config_free(c); }
};
struct RunDeleter {
    void operator()(dlcz_run *r) const { dlcz_run_free(r); }
};
struct OracleDeleter {
    void operator()(dlcz_oracle *o) const { dlcz_oracle_free(o); }
};
using ConfigPtr = std::unique_ptr<dlcz_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<dlcz_run, RunDeleter>;
using OraclePtr = std::unique_ptr<dlcz_oracle, OracleDeleter>;

std::string take(char *text) {
    std::string out = text == nullptr ? "" : text;
    dlcz_string_free(text);
    return out;
}

struct Common {
    std::string config_path;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::vector<std::string> overrides;
    unsigned workers = 1;
    bool keep_events = false;
    CLI::Option *seed_option = nullptr;
};

void add_common(CLI::App *cmd, Common &c, bool run_flags) {
    cmd->add_option("--config", c.config_path, "Config file (key = value); defaults to the preset")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", c.overrides, "Override one config key, key=value (repeatable)")
        ->allow_extra_args(false);
    cmd->add_option("--out", c.out_dir, "Output directory");
    if (run_flags) {
        cmd->add_option("--trials", c.trials, "Number of trials (overrides n_trials)")->check(CLI::PositiveNumber);
        c.seed_option = cmd->add_option("--seed", c.seed, "RNG seed (overrides rng_seed)");
        cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
        cmd->add_flag("--keep-events", c.keep_events, "Keep raw click streams and export events.csv");
    }
}

ConfigPtr load_config(const Common &c) {
    dlcz_config *raw = nullptr;
    if (c.config_path.empty()) {
        check(dlcz_config_preset(&raw));
    } else {
        check(dlcz_config_load(c.config_path.c_str(), &raw));
    }
    ConfigPtr config(raw);
    for (const auto &kv : c.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
        }
        check(dlcz_config_set(config.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    char *violations = nullptr;
    dlcz_status s = dlcz_config_validate(config.get(), &violations);
    dlcz_string_free(violations);
    check(s);
    return config;
}

dlcz_run_options run_options(const Common &c) {
    dlcz_run_options o;
    dlcz_run_options_init(&o);
    o.trials = c.trials;
    if (c.seed_option != nullptr && c.seed_option->count() > 0) {
        o.seed = c.seed;
        o.has_seed = 1;
    }
    o.workers = c.workers;
    o.keep_events = c.keep_events ? 1 : 0;
    return o;
}

void write_text(const std::string &dir, const std::string &name, const std::string &text) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        std::cerr << "dlczsim: cannot write '" << path.string() << "'\n";
        throw Failure{DLCZ_ERR_IO};
    }
}

RunPtr simulate(const dlcz_config *config, const Common &c) {
    dlcz_run *raw = nullptr;
    auto options = run_options(c);
    check(dlcz_run_simulate(config, &options, &raw));
    return RunPtr(raw);
}

int cmd_run(const Common &c) {
    auto config = load_config(c);
    auto run = simulate(config.get(), c);
    char *report = nullptr;
    check(dlcz_run_report(run.get(), &report));
    std::cout << take(report);
    if (!c.out_dir.empty()) {
        char *files = nullptr;
        check(dlcz_run_export(run.get(), c.out_dir.c_str(), &files));
        take(files);
    }
    return 0;
}

int cmd_sweep(const Common &c, const std::string &param, const std::vector<double> &values) {
    auto config = load_config(c);
    auto options = run_options(c);
    char *table = nullptr;
    check(dlcz_sweep(config.get(), param.c_str(), values.data(), values.size(), &options, &table));
    std::string text = take(table);
    std::cout << text;
    if (!c.out_dir.empty()) {
        write_text(c.out_dir, "sweep.csv", text);
    }
    return 0;
}

OraclePtr compute_oracle(const dlcz_config *config, unsigned n_max) {
    dlcz_oracle *raw = nullptr;
    check(dlcz_oracle_compute(config, n_max, &raw));
    return OraclePtr(raw);
}

int cmd_oracle(const Common &c, unsigned n_max) {
    auto config = load_config(c);
    auto oracle = compute_oracle(config.get(), n_max);
    char *report = nullptr;
    check(dlcz_oracle_report(oracle.get(), &report));
    std::string text = take(report);
    std::cout << text;
    if (!c.out_dir.empty()) {
        write_text(c.out_dir, "oracle.txt", text);
    }
    return 0;
}

int cmd_compare(const Common &c, unsigned n_max, double threshold) {
    auto config = load_config(c);
    auto oracle = compute_oracle(config.get(), n_max);
    auto run = simulate(config.get(), c);
    char *table = nullptr;
    std::size_t flagged = 0;
    check(dlcz_compare(run.get(), oracle.get(), threshold, &table, &flagged));
    std::string text = take(table);
    std::cout << text;
    if (!c.out_dir.empty()) {
        char *files = nullptr;
        check(dlcz_run_export(run.get(), c.out_dir.c_str(), &files));
        take(files);
        write_text(c.out_dir, "compare.csv", text);
    }
    if (flagged > 0) {
        std::cerr << "dlczsim: " << flagged << " quantities exceed |z| > " << threshold << "\n";
        return kExitFlagged;
    }
    return 0;
}

int cmd_preset(const Common &c) {
    auto config = load_config(c);
    char *text = nullptr;
    check(dlcz_config_render(config.get(), &text));
    std::string rendered = take(text);
    std::cout << rendered;
    if (!c.out_dir.empty()) {
        write_text(c.out_dir, "config.txt", rendered);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"dlczsim: Monte Carlo simulator of DLCZ photon-pair correlation experiments"};
    app.set_version_flag("--version", std::string(dlcz_version()));
    app.require_subcommand(1);

    Common run_args, sweep_args, oracle_args, compare_args, preset_args;

    auto *run = app.add_subcommand("run", "Simulate trials, print the report, export with --out");
    add_common(run, run_args, true);

    std::string sweep_param;
    std::vector<double> sweep_values;
    auto *sweep = app.add_subcommand("sweep", "Simulate one run per parameter value and print a CSV table");
    add_common(sweep, sweep_args, true);
    sweep->add_option("--param", sweep_param, "Config key to vary")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values (SI units)")->delimiter(',');

    unsigned oracle_n_max = 60;
    auto *oracle = app.add_subcommand("oracle", "Exact click-pattern distribution and correlations");
    add_common(oracle, oracle_args, false);
    oracle->add_option("--n-max", oracle_n_max, "Fock truncation")->check(CLI::Range(1u, 100000u));

    unsigned compare_n_max = 60;
    double threshold = 4.0;
    auto *compare = app.add_subcommand("compare", "Monte Carlo run versus oracle z-score table");
    add_common(compare, compare_args, true);
    compare->add_option("--n-max", compare_n_max, "Fock truncation")->check(CLI::Range(1u, 100000u));
    compare->add_option("--threshold", threshold, "Flag |z| above this")->check(CLI::PositiveNumber);

    auto *preset = app.add_subcommand("preset", "Print the preset config (with --set overrides applied)");
    add_common(preset, preset_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) {
            return cmd_run(run_args);
        }
        if (*sweep) {
            return cmd_sweep(sweep_args, sweep_param, sweep_values);
        }
        if (*oracle) {
            return cmd_oracle(oracle_args, oracle_n_max);
        }
        if (*compare) {
            return cmd_compare(compare_args, compare_n_max, threshold);
        }
        if (*preset) {
            return cmd_preset(preset_args);
        }
    } catch (const Failure &f) {
        const char *message = dlcz_last_error();
        if (message != nullptr && *message != '\0') {
            std::cerr << "dlczsim: " << dlcz_status_name(f.status) << " error: " << message << "\n";
        }
        return 10 + static_cast<int>(f.status);
    } catch (const CLI::ValidationError &e) {
        std::cerr << "dlczsim: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
