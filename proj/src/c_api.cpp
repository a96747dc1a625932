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

#include "dlcz/dlczsim.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "dlcz/config.hpp"
#include "dlcz/oracle.hpp"
#include "dlcz/simulation.hpp"

struct dlcz_config {
    dlcz::ExperimentConfig value;
};

struct dlcz_run {
    dlcz::RunResult value;
};

struct dlcz_oracle {
    dlcz::ExperimentConfig config;
    dlcz::PredictedCorrelations value;
};

namespace {

thread_local std::string g_last_error;

dlcz_status fail(dlcz_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Maps the C++ exception hierarchy onto status codes. Order matters: the most derived first.
template <typename Fn>
dlcz_status guarded(Fn &&fn) {
    try {
        fn();
        return DLCZ_OK;
    } catch (const dlcz::ParseError &e) {
        return fail(DLCZ_ERR_PARSE, e.what());
    } catch (const dlcz::ValidationError &e) {
        return fail(DLCZ_ERR_INVALID, e.what());
    } catch (const dlcz::DomainError &e) {
        return fail(DLCZ_ERR_DOMAIN, e.what());
    } catch (const dlcz::ContractViolation &e) {
        return fail(DLCZ_ERR_CONTRACT, e.what());
    } catch (const dlcz::UndefinedCorrelation &e) {
        return fail(DLCZ_ERR_UNDEFINED, e.what());
    } catch (const dlcz::IoError &e) {
        return fail(DLCZ_ERR_IO, e.what());
    } catch (const std::bad_alloc &) {
        return fail(DLCZ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(DLCZ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DLCZ_ERR_INTERNAL, "unknown error");
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dlcz::RunOptions to_options(const dlcz_run_options *options) {
    dlcz::RunOptions out;
    if (options == nullptr) {
        return out;
    }
    if (options->trials != 0) {
        out.trials = options->trials;
    }
    if (options->has_seed) {
        out.seed = options->seed;
    }
    out.workers = options->workers == 0 ? 1 : options->workers;
    out.keep_events = options->keep_events != 0;
    return out;
}

#define DLCZ_REQUIRE(ptr) \
    if ((ptr) == nullptr) return fail(DLCZ_ERR_ARGUMENT, "null argument: " #ptr)

}  // namespace

extern "C" {

const char *dlcz_version(void) {
    static const std::string version = dlcz::code_version();
    return version.c_str();
}

const char *dlcz_last_error(void) { return g_last_error.c_str(); }

const char *dlcz_status_name(dlcz_status status) {
    switch (status) {
        case DLCZ_OK:
            return "ok";
        case DLCZ_ERR_PARSE:
            return "parse";
        case DLCZ_ERR_INVALID:
            return "invalid";
        case DLCZ_ERR_DOMAIN:
            return "domain";
        case DLCZ_ERR_CONTRACT:
            return "contract";
        case DLCZ_ERR_UNDEFINED:
            return "undefined";
        case DLCZ_ERR_IO:
            return "io";
        case DLCZ_ERR_ARGUMENT:
            return "argument";
        case DLCZ_ERR_INTERNAL:
            return "internal";
    }
    return "unknown";
}

void dlcz_string_free(char *text) { std::free(text); }

dlcz_status dlcz_config_preset(dlcz_config **out) {
    DLCZ_REQUIRE(out);
    return guarded([&] { *out = new dlcz_config{dlcz::replication_preset()}; });
}

dlcz_status dlcz_config_parse(const char *text, dlcz_config **out) {
    DLCZ_REQUIRE(text);
    DLCZ_REQUIRE(out);
    return guarded([&] { *out = new dlcz_config{dlcz::parse_config(text)}; });
}

dlcz_status dlcz_config_load(const char *path, dlcz_config **out) {
    DLCZ_REQUIRE(path);
    DLCZ_REQUIRE(out);
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw dlcz::IoError(std::string("cannot read config '") + path + "'");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        *out = new dlcz_config{dlcz::parse_config(buffer.str())};
    });
}

dlcz_status dlcz_config_set(dlcz_config *config, const char *key, const char *value) {
    DLCZ_REQUIRE(config);
    DLCZ_REQUIRE(key);
    DLCZ_REQUIRE(value);
    return guarded([&] { dlcz::set_field(config->value, key, value); });
}

dlcz_status dlcz_config_get(const dlcz_config *config, const char *key, double *value) {
    DLCZ_REQUIRE(config);
    DLCZ_REQUIRE(key);
    DLCZ_REQUIRE(value);
    return guarded([&] { *value = dlcz::get_field(config->value, key); });
}

dlcz_status dlcz_config_render(const dlcz_config *config, char **text) {
    DLCZ_REQUIRE(config);
    DLCZ_REQUIRE(text);
    return guarded([&] { *text = copy_string(dlcz::render_config(config->value)); });
}

dlcz_status dlcz_config_validate(const dlcz_config *config, char **violations) {
    DLCZ_REQUIRE(config);
    auto found = dlcz::validate(config->value);
    std::string listing;
    for (const auto &v : found) {
        listing += v.key + ": " + v.message + "\n";
    }
    if (violations != nullptr) {
        dlcz_status s = guarded([&] { *violations = copy_string(listing); });
        if (s != DLCZ_OK) {
            return s;
        }
    }
    return found.empty() ? DLCZ_OK : fail(DLCZ_ERR_INVALID, "invalid config:\n" + listing);
}

void dlcz_config_free(dlcz_config *config) { delete config; }

void dlcz_run_options_init(dlcz_run_options *options) {
    if (options != nullptr) {
        *options = dlcz_run_options{0, 0, 0, 1, 0};
    }
}

dlcz_status dlcz_run_simulate(const dlcz_config *config, const dlcz_run_options *options, dlcz_run **out) {
    DLCZ_REQUIRE(config);
    DLCZ_REQUIRE(out);
    return guarded([&] { *out = new dlcz_run{dlcz::simulate_run(config->value, to_options(options))}; });
}

dlcz_status dlcz_run_report(const dlcz_run *run, char **text) {
    DLCZ_REQUIRE(run);
    DLCZ_REQUIRE(text);
    return guarded([&] { *text = copy_string(dlcz::render_run_report(run->value)); });
}

dlcz_status dlcz_run_correlation(const dlcz_run *run, dlcz_correlation which, double *value, double *sigma) {
    DLCZ_REQUIRE(run);
    if (which < DLCZ_G11 || which > DLCZ_G12_BD) {
        return fail(DLCZ_ERR_DOMAIN, "unknown correlation selector");
    }
    const auto &g = run->value.pairs[static_cast<unsigned>(which)].g;
    if (!g) {
        return fail(DLCZ_ERR_UNDEFINED, "correlation undefined: no cross-trial coincidences");
    }
    if (value != nullptr) {
        *value = g->value;
    }
    if (sigma != nullptr) {
        *sigma = g->sigma;
    }
    return DLCZ_OK;
}

dlcz_status dlcz_run_peak_areas(const dlcz_run *run, dlcz_correlation which, uint64_t *same_trial,
                                double *baseline_mean) {
    DLCZ_REQUIRE(run);
    if (which < DLCZ_G11 || which > DLCZ_G12_BD) {
        return fail(DLCZ_ERR_DOMAIN, "unknown correlation selector");
    }
    const auto &areas = run->value.pairs[static_cast<unsigned>(which)].areas;
    if (same_trial != nullptr) {
        *same_trial = areas.same_trial;
    }
    if (baseline_mean != nullptr) {
        *baseline_mean = areas.baseline_mean;
    }
    return DLCZ_OK;
}

dlcz_status dlcz_run_singles_rates(const dlcz_run *run, double *stokes, double *antistokes) {
    DLCZ_REQUIRE(run);
    if (stokes != nullptr) {
        *stokes = run->value.rates.stokes;
    }
    if (antistokes != nullptr) {
        *antistokes = run->value.rates.antistokes;
    }
    return DLCZ_OK;
}

dlcz_status dlcz_run_wall_time(const dlcz_run *run, double *seconds) {
    DLCZ_REQUIRE(run);
    DLCZ_REQUIRE(seconds);
    *seconds = run->value.manifest.wall_time_seconds;
    return DLCZ_OK;
}

dlcz_status dlcz_run_export(dlcz_run *run, const char *directory, char **files) {
    DLCZ_REQUIRE(run);
    DLCZ_REQUIRE(directory);
    return guarded([&] {
        auto written = dlcz::export_run(run->value, directory);
        if (files != nullptr) {
            std::string listing;
            for (const auto &f : written) {
                listing += f + "\n";
            }
            *files = copy_string(listing);
        }
    });
}

void dlcz_run_free(dlcz_run *run) { delete run; }

dlcz_status dlcz_sweep(const dlcz_config *config, const char *parameter, const double *values, size_t n_values,
                       const dlcz_run_options *options, char **table) {
    DLCZ_REQUIRE(config);
    DLCZ_REQUIRE(parameter);
    DLCZ_REQUIRE(table);
    if (n_values > 0 && values == nullptr) {
        return fail(DLCZ_ERR_ARGUMENT, "null values with n_values > 0");
    }
    return guarded([&] {
        std::span<const double> v(values, n_values);
        *table = copy_string(dlcz::sweep(config->value, parameter, v, to_options(options)).render());
    });
}

dlcz_status dlcz_oracle_compute(const dlcz_config *config, unsigned n_max, dlcz_oracle **out) {
    DLCZ_REQUIRE(config);
    DLCZ_REQUIRE(out);
    return guarded(
        [&] { *out = new dlcz_oracle{config->value, dlcz::predicted_correlations(config->value, n_max)}; });
}

dlcz_status dlcz_oracle_report(const dlcz_oracle *oracle, char **text) {
    DLCZ_REQUIRE(oracle);
    DLCZ_REQUIRE(text);
    return guarded([&] { *text = copy_string(dlcz::render_oracle_report(oracle->value, oracle->config)); });
}

dlcz_status dlcz_oracle_correlation(const dlcz_oracle *oracle, dlcz_correlation which, double *value) {
    DLCZ_REQUIRE(oracle);
    DLCZ_REQUIRE(value);
    switch (which) {
        case DLCZ_G11:
            *value = oracle->value.g11;
            return DLCZ_OK;
        case DLCZ_G22:
            *value = oracle->value.g22;
            return DLCZ_OK;
        case DLCZ_G12:
            *value = oracle->value.g12;
            return DLCZ_OK;
        case DLCZ_G12_BD:
            *value = oracle->value.g12_bd;
            return DLCZ_OK;
    }
    return fail(DLCZ_ERR_DOMAIN, "unknown correlation selector");
}

void dlcz_oracle_free(dlcz_oracle *oracle) { delete oracle; }

dlcz_status dlcz_compare(const dlcz_run *run, const dlcz_oracle *oracle, double threshold, char **table,
                         size_t *n_flagged) {
    DLCZ_REQUIRE(run);
    DLCZ_REQUIRE(oracle);
    return guarded([&] {
        if (!(run->value.config == oracle->config)) {
            auto a = run->value.config, b = oracle->config;
            a.n_trials = b.n_trials;
            a.rng_seed = b.rng_seed;
            if (!(a == b)) {
                throw dlcz::DomainError("run and oracle were computed for different configs");
            }
        }
        auto z = dlcz::compare(run->value.observables(), oracle->value, threshold);
        if (table != nullptr) {
            *table = copy_string(z.render());
        }
        if (n_flagged != nullptr) {
            *n_flagged = z.flagged_count();
        }
    });
}

}  // extern "C"
