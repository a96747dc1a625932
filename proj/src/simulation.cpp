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

#include "dlcz/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "dlcz/text_format.hpp"

namespace dlcz {

#ifndef DLCZ_VERSION_STRING
#define DLCZ_VERSION_STRING "dev"
#endif

std::string code_version() { return DLCZ_VERSION_STRING; }

TrialPlan::TrialPlan(const ExperimentConfig &c) : config(require_valid(c)) {
    Ticks cycle = to_ticks(c.cycle_period);
    Ticks width = to_ticks(c.gate_width);
    write_gate = {cycle, 0, width};
    read_gate = {cycle, to_ticks(c.delay_dt), width};
    bin_width = to_ticks(c.hist_bin);
    span = to_ticks(c.hist_span);
    survival = memory_survival(c.delay_dt, c.memory_lifetime);
}

ClickPattern TrialOutcome::pattern() const {
    ClickPattern p = 0;
    for (Detector d : kAllDetectors) {
        if (clicks[index_of(d)]) {
            p |= pattern_bit(d);
        }
    }
    return p;
}

TrialOutcome simulate_trial(const TrialPlan &plan, std::uint64_t seed, std::uint64_t trial_index,
                            const PulseProfile &profile) {
    const ExperimentConfig &c = plan.config;
    TrialRng rng(seed, trial_index);
    TrialOutcome out;

    // Write pulse and Stokes detection.
    out.excitation = sample_write(c.p_excitation, c.source_model, rng);
    Count stokes = add_background(thin(out.excitation.n_stokes, c.transmission, rng), c.bg_stokes_mean, rng);
    auto [to_a, to_b] = split(stokes, rng);
    out.clicks[0] = detect(Detector::A, to_a, c.detector_eff, c.dark_mean, plan.write_gate, trial_index, profile, rng);
    out.clicks[1] = detect(Detector::B, to_b, c.detector_eff, c.dark_mean, plan.write_gate, trial_index, profile, rng);

    // Storage for delay_dt, then read pulse and anti-Stokes detection.
    Count stored = decohere_memory(out.excitation.n_memory, c.delay_dt, c.memory_lifetime, c.memory_diffusion_in, rng);
    out.excitation.n_antistokes = retrieve(stored, c.retrieval_eff, rng);
    Count antistokes =
        add_background(thin(out.excitation.n_antistokes, c.transmission, rng), c.bg_antistokes_mean, rng);
    auto [to_c, to_d] = split(antistokes, rng);
    out.clicks[2] = detect(Detector::C, to_c, c.detector_eff, c.dark_mean, plan.read_gate, trial_index, profile, rng);
    out.clicks[3] = detect(Detector::D, to_d, c.detector_eff, c.dark_mean, plan.read_gate, trial_index, profile, rng);
    return out;
}

namespace {

struct Accumulator {
    std::array<CoincidenceHistogram, 4> histograms;
    std::array<std::uint64_t, 4> click_counts{};
    std::array<std::uint64_t, kPatternCount> pattern_counts{};

    explicit Accumulator(const TrialPlan &plan) {
        for (std::size_t i = 0; i < kAnalyzedPairs.size(); ++i) {
            histograms[i] = make_histogram(kAnalyzedPairs[i], plan.bin_width, plan.span);
        }
    }

    void merge(const Accumulator &other) {
        for (std::size_t i = 0; i < histograms.size(); ++i) {
            histograms[i] += other.histograms[i];
        }
        for (std::size_t i = 0; i < 4; ++i) {
            click_counts[i] += other.click_counts[i];
        }
        for (std::size_t i = 0; i < kPatternCount; ++i) {
            pattern_counts[i] += other.pattern_counts[i];
        }
    }
};

// Trials [first, last) contribute their own singles and patterns, and every coincidence whose
// start click they own. Stop clicks may come from up to `lookahead` later trials, which are
// regenerated here (cheap, and deterministic because trial streams are counter-based).
void run_block(const TrialPlan &plan, std::uint64_t seed, std::uint64_t first, std::uint64_t last,
               std::uint64_t n_trials, std::uint64_t lookahead, const PulseProfile &profile, Accumulator &acc,
               std::vector<ClickEvent> *events) {
    std::array<std::vector<Ticks>, 4> stamps;
    const std::uint64_t generate_end = std::min(n_trials, last + lookahead);
    for (std::uint64_t t = first; t < generate_end; ++t) {
        TrialOutcome outcome = simulate_trial(plan, seed, t, profile);
        const bool owned = t < last;
        for (Detector d : kAllDetectors) {
            if (const auto &click = outcome.clicks[index_of(d)]) {
                stamps[index_of(d)].push_back(click->timestamp);
                if (owned) {
                    ++acc.click_counts[index_of(d)];
                    if (events != nullptr) {
                        events->push_back(*click);
                    }
                }
            }
        }
        if (owned) {
            ++acc.pattern_counts[outcome.pattern()];
        }
    }
    const Ticks owned_end = static_cast<Ticks>(last) * plan.write_gate.cycle_period;
    for (std::size_t i = 0; i < kAnalyzedPairs.size(); ++i) {
        const auto &starts = stamps[index_of(kAnalyzedPairs[i].start)];
        auto n_owned = static_cast<std::size_t>(std::lower_bound(starts.begin(), starts.end(), owned_end) -
                                                starts.begin());
        accumulate_coincidences(std::span<const Ticks>(starts.data(), n_owned),
                                stamps[index_of(kAnalyzedPairs[i].stop)], acc.histograms[i]);
    }
}

std::optional<Estimate> try_g(const PeakAreas &areas, std::uint64_t peaks) {
    if (!(areas.baseline_mean > 0.0)) {
        return std::nullopt;
    }
    return g_ratio(static_cast<double>(areas.same_trial), areas.baseline_mean, peaks);
}

}  // namespace

RunResult simulate_run(const ExperimentConfig &config_in, const RunOptions &options) {
    ExperimentConfig config = config_in;
    if (options.trials) {
        config.n_trials = *options.trials;
    }
    if (options.seed) {
        config.rng_seed = *options.seed;
    }
    const TrialPlan plan(config);
    const auto started = std::chrono::steady_clock::now();

    const std::uint64_t n_trials = config.n_trials;
    const std::uint64_t seed = config.rng_seed;
    const Ticks cycle = plan.write_gate.cycle_period;
    const auto lookahead = static_cast<std::uint64_t>((plan.span + cycle - 1) / cycle) + 1;
    const std::uint64_t block = std::max<std::uint64_t>(1, options.block_trials);
    const std::uint64_t n_blocks = (n_trials + block - 1) / block;
    const unsigned workers = std::max(1u, options.workers);

    std::vector<std::vector<ClickEvent>> block_events(options.keep_events ? n_blocks : 0);
    Accumulator total(plan);
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_block{0};

    // Integer histograms and counters merge associatively, so the result is independent of
    // which worker ran which block.
    std::exception_ptr failure;
    auto work = [&] {
        try {
            Accumulator local(plan);
            for (std::uint64_t b = next_block++; b < n_blocks; b = next_block++) {
                std::uint64_t first = b * block;
                std::uint64_t last = std::min(n_trials, first + block);
                run_block(plan, seed, first, last, n_trials, lookahead, options.profile, local,
                          options.keep_events ? &block_events[b] : nullptr);
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            total.merge(local);
        } catch (...) {
            next_block = n_blocks;
            std::lock_guard<std::mutex> lock(merge_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back(work);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    RunResult result;
    result.config = config;
    result.click_counts = total.click_counts;
    result.pattern_counts = total.pattern_counts;
    const Ticks width = plan.write_gate.width;
    for (std::size_t i = 0; i < kAnalyzedPairs.size(); ++i) {
        PairResult &pr = result.pairs[i];
        pr.histogram = std::move(total.histograms[i]);
        pr.window_offset = (i < 2) ? 0 : plan.read_gate.start - plan.write_gate.start;
        pr.areas = peak_areas(pr.histogram, cycle, width, config.baseline_peaks, pr.window_offset);
        pr.g = try_g(pr.areas, config.baseline_peaks);
    }
    const auto &g11 = result.pair(PairRole::StokesAuto).g;
    const auto &g22 = result.pair(PairRole::AntiStokesAuto).g;
    const auto &g12 = result.pair(PairRole::Cross).g;
    if (g11 && g22 && g12) {
        result.report = cauchy_schwarz(*g11, *g22, *g12, config.delay_dt);
    }
    const Ticks duration = static_cast<Ticks>(n_trials) * cycle;
    result.rates = singles_rates(result.click_counts, to_seconds(duration));
    if (options.keep_events) {
        std::vector<ClickEvent> all;
        for (auto &be : block_events) {
            all.insert(all.end(), be.begin(), be.end());
        }
        result.streams = merge_streams(all, duration);
    }

    result.manifest.config_text = render_config(config);
    result.manifest.seed = seed;
    result.manifest.trials = n_trials;
    result.manifest.workers = workers;
    result.manifest.code_version = code_version();
    result.manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

McObservables RunResult::observables() const {
    McObservables mc;
    mc.trials = config.n_trials;
    mc.pattern_counts = pattern_counts;
    mc.g11 = pair(PairRole::StokesAuto).g;
    mc.g22 = pair(PairRole::AntiStokesAuto).g;
    mc.g12 = pair(PairRole::Cross).g;
    mc.g12_bd = pair(PairRole::CrossDuplicate).g;
    const PairRole roles[] = {PairRole::StokesAuto, PairRole::AntiStokesAuto, PairRole::Cross,
                              PairRole::CrossDuplicate};
    for (std::size_t i = 0; i < 4; ++i) {
        mc.baseline_mean[i] = pair(roles[i]).areas.baseline_mean;
    }
    mc.baseline_peaks = config.baseline_peaks;
    return mc;
}

std::string render_run_report(const RunResult &r) {
    std::string out = "# dlczsim correlation report\n";
    auto line = [&out](const std::string &key, const std::string &value) { out += key + " = " + value + "\n"; };
    line("trials", std::to_string(r.config.n_trials));
    line("seed", std::to_string(r.config.rng_seed));
    line("source_model", std::string(source_model_name(r.config.source_model)));
    if (r.report) {
        out += render_report(*r.report);
    } else {
        line("delay_dt", format_report(r.config.delay_dt));
        for (const char *key : {"g11", "g22", "g12"}) {
            line(key, "undefined");
            line(std::string(key) + "_sigma", "undefined");
        }
        line("verdict", "undefined");
    }
    const auto &bd = r.pair(PairRole::CrossDuplicate).g;
    line("g12_bd", bd ? format_report(bd->value) : "undefined");
    line("g12_bd_sigma", bd ? format_report(bd->sigma) : "undefined");
    for (std::size_t i = 0; i < kAnalyzedPairs.size(); ++i) {
        std::string name = pair_name(kAnalyzedPairs[i]);
        line("N_" + name, std::to_string(r.pairs[i].areas.same_trial));
        line("M_" + name, format_report(r.pairs[i].areas.baseline_mean));
    }
    for (Detector d : kAllDetectors) {
        line("rate_" + std::string(detector_name(d)), format_report(r.rates.per_detector[index_of(d)]));
    }
    line("rate_stokes", format_report(r.rates.stokes));
    line("rate_antistokes", format_report(r.rates.antistokes));
    return out;
}

SweepTable sweep(const ExperimentConfig &config, const std::string &parameter, std::span<const double> values,
                 const RunOptions &options) {
    if (!is_config_field(parameter) || parameter == "source_model") {
        throw DomainError("cannot sweep '" + parameter + "': not a numeric config key");
    }
    SweepTable table;
    table.parameter = parameter;
    const std::uint64_t base_seed = options.seed.value_or(config.rng_seed);
    for (std::size_t i = 0; i < values.size(); ++i) {
        ExperimentConfig point = config;
        set_field(point, parameter, format_exact(values[i]));
        RunOptions opts = options;
        opts.seed = mix_seed(base_seed, i);
        opts.keep_events = false;
        RunResult run = simulate_run(point, opts);
        SweepRow row;
        row.value = values[i];
        row.g11 = run.pair(PairRole::StokesAuto).g;
        row.g22 = run.pair(PairRole::AntiStokesAuto).g;
        row.g12 = run.pair(PairRole::Cross).g;
        row.report = run.report;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string SweepTable::render() const {
    std::string out = parameter +
                      ",g11,g11_sigma,g22,g22_sigma,g12,g12_sigma,lhs,lhs_sigma,rhs,rhs_sigma,ratio,ratio_sigma,"
                      "violation_significance\n";
    auto cell = [](const std::optional<Estimate> &e, bool sigma) {
        return e ? format_report(sigma ? e->sigma : e->value) : std::string("nan");
    };
    for (const auto &row : rows) {
        out += format_exact(row.value);
        for (const auto *g : {&row.g11, &row.g22, &row.g12}) {
            out += "," + cell(*g, false) + "," + cell(*g, true);
        }
        if (row.report) {
            const auto &r = *row.report;
            for (const Estimate &e : {r.lhs, r.rhs, r.ratio}) {
                out += "," + format_report(e.value) + "," + format_report(e.sigma);
            }
            out += "," + format_report(r.violation_significance);
        } else {
            out += ",nan,nan,nan,nan,nan,nan,nan";
        }
        out += "\n";
    }
    return out;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["code_version"] = code_version;
    j["seed"] = seed;
    j["trials"] = trials;
    j["workers"] = workers;
    j["wall_time_seconds"] = wall_time_seconds;
    j["outputs"] = output_files;
    j["config"] = config_text;
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace

std::vector<std::string> export_run(RunResult &result, const std::filesystem::path &directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec || !std::filesystem::is_directory(directory)) {
        throw IoError("cannot create directory '" + directory.string() + "'" + (ec ? ": " + ec.message() : ""));
    }
    std::vector<std::string> files;
    auto emit = [&](const std::string &name, const std::string &content) {
        write_file(directory / name, content);
        files.push_back(name);
    };
    emit("report.txt", render_run_report(result));
    for (const auto &pr : result.pairs) {
        std::ostringstream os;
        write_histogram(os, pr.histogram);
        emit("histogram_" + pair_name(pr.histogram.pair) + ".csv", os.str());
    }
    if (result.streams) {
        std::string events = "detector,trial_index,timestamp_seconds\n";
        const Ticks cycle = to_ticks(result.config.cycle_period);
        for (const auto &stream : *result.streams) {
            for (Ticks t : stream.timestamps) {
                events += std::string(detector_name(stream.detector)) + "," + std::to_string(t / cycle) + "," +
                          format_ticks_as_seconds(t) + "\n";
            }
        }
        emit("events.csv", events);
    }
    result.manifest.output_files = files;
    emit("manifest.json", result.manifest.to_json());
    return files;
}

}  // namespace dlcz
