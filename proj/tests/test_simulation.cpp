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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "dlcz/oracle.hpp"
#include "dlcz/simulation.hpp"

namespace dlcz {
namespace {

namespace fs = std::filesystem;

RunOptions with_trials(std::uint64_t trials, unsigned workers = 1) {
    RunOptions o;
    o.trials = trials;
    o.workers = workers;
    return o;
}

ExperimentConfig ideal(double p) {
    auto c = replication_preset();
    c.p_excitation = p;
    c.retrieval_eff = c.transmission = c.detector_eff = 1;
    c.dark_mean = c.bg_stokes_mean = c.bg_antistokes_mean = c.memory_diffusion_in = 0;
    c.memory_lifetime = std::numeric_limits<double>::max();
    return c;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string without_line(const std::string &text, const std::string &needle) {
    std::istringstream in(text);
    std::string out;
    for (std::string line; std::getline(in, line);) {
        if (line.find(needle) == std::string::npos) out += line + "\n";
    }
    return out;
}

fs::path scratch(const std::string &name) {
    auto p = fs::temp_directory_path() / ("dlczsim_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

TEST(Trial, PureFunctionOfSeedAndIndex) {
    TrialPlan plan(replication_preset());
    for (std::uint64_t t = 0; t < 2000; ++t) {
        auto a = simulate_trial(plan, 17, t), b = simulate_trial(plan, 17, t);
        EXPECT_EQ(a.excitation, b.excitation);
        EXPECT_EQ(a.clicks, b.clicks);
    }
}

TEST(Trial, ClicksInsideTheirGates) {
    TrialPlan plan(replication_preset());
    for (std::uint64_t t = 0; t < 20000; ++t) {
        auto o = simulate_trial(plan, 3, t);
        for (Detector d : kAllDetectors) {
            if (const auto &c = o.clicks[index_of(d)]) {
                const GateTiming &g = index_of(d) < 2 ? plan.write_gate : plan.read_gate;
                Ticks lo = static_cast<Ticks>(t) * g.cycle_period + g.start;
                EXPECT_GE(c->timestamp, lo);
                EXPECT_LT(c->timestamp, lo + g.width);
                EXPECT_EQ(c->trial_index, t);
            }
        }
    }
}

TEST(Run, WorkerAndBlockInvariance) {
    auto c = replication_preset();
    auto base = simulate_run(c, with_trials(120'000, 1));
    for (unsigned workers : {2u, 4u, 7u}) {
        for (std::uint64_t block : {1000ull, 16384ull, 50'000ull}) {
            auto o = with_trials(120'000, workers);
            o.block_trials = block;
            auto r = simulate_run(c, o);
            for (std::size_t i = 0; i < 4; ++i) {
                EXPECT_EQ(r.pairs[i].histogram, base.pairs[i].histogram) << workers << " " << block;
                EXPECT_EQ(r.pairs[i].areas, base.pairs[i].areas);
            }
            EXPECT_EQ(r.click_counts, base.click_counts);
            EXPECT_EQ(r.pattern_counts, base.pattern_counts);
        }
    }
}

TEST(Run, StreamingHistogramsEqualOfflineHistograms) {
    auto c = replication_preset();
    auto o = with_trials(60'000, 3);
    o.keep_events = true;
    o.block_trials = 4096;
    auto r = simulate_run(c, o);
    ASSERT_TRUE(r.streams);
    for (std::size_t i = 0; i < kAnalyzedPairs.size(); ++i) {
        const auto &pair = kAnalyzedPairs[i];
        auto h = histogram((*r.streams)[index_of(pair.start)], (*r.streams)[index_of(pair.stop)],
                           to_ticks(c.hist_bin), to_ticks(c.hist_span));
        EXPECT_EQ(h, r.pairs[i].histogram) << pair_name(pair);
    }
    for (Detector d : kAllDetectors) {
        EXPECT_EQ((*r.streams)[index_of(d)].timestamps.size(), r.click_counts[index_of(d)]);
    }
    std::uint64_t patterns = 0;
    for (auto n : r.pattern_counts) patterns += n;
    EXPECT_EQ(patterns, 60'000u);
}

TEST(Run, VacuumGivesUndefinedCorrelations) {
    auto c = ideal(0.0);
    auto r = simulate_run(c, with_trials(20'000));
    for (const auto &p : r.pairs) {
        EXPECT_EQ(p.histogram.total(), 0u);
        EXPECT_FALSE(p.g);
    }
    EXPECT_FALSE(r.report);
    auto text = render_run_report(r);
    EXPECT_NE(text.find("g12 = undefined"), std::string::npos);
    EXPECT_NE(text.find("verdict = undefined"), std::string::npos);
}

TEST(Run, RejectsInvalidConfig) {
    auto c = replication_preset();
    c.transmission = 2;
    EXPECT_THROW(simulate_run(c, with_trials(10)), ValidationError);
}

TEST(Run, OptionsOverrideConfig) {
    RunOptions o = with_trials(1234);
    o.seed = 99;
    auto r = simulate_run(replication_preset(), o);
    EXPECT_EQ(r.config.n_trials, 1234u);
    EXPECT_EQ(r.config.rng_seed, 99u);
    EXPECT_EQ(r.manifest.seed, 99u);
    EXPECT_EQ(r.manifest.trials, 1234u);
    EXPECT_EQ(parse_config(r.manifest.config_text), r.config);
}

TEST(Run, CrossDuplicateAgreesWithCross) {
    auto r = simulate_run(replication_preset(), with_trials(1'000'000, 4));
    const auto &ac = *r.pair(PairRole::Cross).g, &bd = *r.pair(PairRole::CrossDuplicate).g;
    EXPECT_LT(std::abs(ac.value - bd.value), 4 * std::hypot(ac.sigma, bd.sigma));
}

TEST(Run, ReversedAutoPairIsCompatible) {
    auto o = with_trials(1'000'000, 4);
    o.keep_events = true;
    auto c = replication_preset();
    auto r = simulate_run(c, o);
    const auto &s = *r.streams;
    auto ba = histogram(s[1], s[0], to_ticks(c.hist_bin), to_ticks(c.hist_span));
    auto areas = peak_areas(ba, to_ticks(c.cycle_period), to_ticks(c.gate_width), 7);
    const auto &ab = r.pair(PairRole::StokesAuto).areas;
    double n1 = static_cast<double>(ab.same_trial), n2 = static_cast<double>(areas.same_trial);
    EXPECT_LT(std::abs(n1 - n2), 4 * std::sqrt(n1 + n2));
    EXPECT_LT(std::abs(ab.baseline_mean - areas.baseline_mean),
              4 * std::sqrt((ab.baseline_mean + areas.baseline_mean) / 7));
}

TEST(Run, AgreesWithOracleAtModerateStatistics) {
    for (auto c : {replication_preset(), ideal(0.1)}) {
        auto r = simulate_run(c, with_trials(400'000, 4));
        auto table = compare(r.observables(), predicted_correlations(c));
        EXPECT_EQ(table.flagged_count(), 0u) << table.render();
    }
}

TEST(Run, CrossCorrelationRobustToLoss) {
    std::vector<Estimate> g;
    for (double t : {0.25, 0.5, 1.0}) {
        auto c = ideal(0.1);
        c.transmission = t;
        g.push_back(*simulate_run(c, with_trials(1'000'000, 4)).pair(PairRole::Cross).g);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            EXPECT_LT(std::abs(g[i].value - g[j].value), 4 * std::hypot(g[i].sigma, g[j].sigma));
        }
    }
}

TEST(Run, PoissonBackgroundOnlyIsUncorrelated) {
    auto c = ideal(0.0);
    c.bg_stokes_mean = 0.3;
    c.bg_antistokes_mean = 0.3;
    c.detector_eff = 0.5;
    auto r = simulate_run(c, with_trials(200'000, 4));
    for (const auto &p : r.pairs) {
        double n = static_cast<double>(p.areas.same_trial), m = p.areas.baseline_mean;
        EXPECT_LT(std::abs(n - m), 4 * std::sqrt(n + m / 7)) << pair_name(p.histogram.pair);
    }
}

TEST(Export, ByteIdenticalAcrossReruns) {
    auto dir1 = scratch("a"), dir2 = scratch("b");
    auto c = replication_preset();
    auto o = with_trials(50'000, 2);
    o.keep_events = true;
    auto r1 = simulate_run(c, o);
    auto r2 = simulate_run(c, o);
    auto f1 = export_run(r1, dir1);
    auto f2 = export_run(r2, dir2 / "nested" / "deeper");
    EXPECT_EQ(f1, f2);
    EXPECT_EQ(f1, (std::vector<std::string>{"report.txt", "histogram_AB.csv", "histogram_CD.csv",
                                             "histogram_AC.csv", "histogram_BD.csv", "events.csv",
                                             "manifest.json"}));
    for (const auto &name : f1) {
        std::string a = slurp(dir1 / name), b = slurp(dir2 / "nested" / "deeper" / name);
        if (name == "manifest.json") {
            a = without_line(a, "wall_time_seconds");
            b = without_line(b, "wall_time_seconds");
        }
        EXPECT_EQ(a, b) << name;
    }
    std::ifstream in(dir1 / "histogram_AC.csv");
    EXPECT_EQ(read_histogram(in, {Detector::A, Detector::C}), r1.pair(PairRole::Cross).histogram);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST(Export, DifferentSeedsChangeOnlySeedDependentManifestFields) {
    auto dir1 = scratch("s1"), dir2 = scratch("s2");
    auto o = with_trials(20'000);
    o.seed = 1;
    auto r1 = simulate_run(replication_preset(), o);
    o.seed = 2;
    auto r2 = simulate_run(replication_preset(), o);
    export_run(r1, dir1);
    export_run(r2, dir2);
    std::istringstream a(without_line(slurp(dir1 / "manifest.json"), "wall_time_seconds"));
    std::istringstream b(without_line(slurp(dir2 / "manifest.json"), "wall_time_seconds"));
    std::string la, lb;
    int differing = 0;
    while (std::getline(a, la) && std::getline(b, lb)) {
        if (la != lb) {
            ++differing;
            EXPECT_TRUE(la.find("seed") != std::string::npos) << la;
        }
    }
    EXPECT_EQ(differing, 2);  // "seed" and the rng_seed line of the config snapshot
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST(Export, UnwritableDirectoryReportsPath) {
    auto file = scratch("file");
    std::ofstream(file) << "x";
    auto r = simulate_run(replication_preset(), with_trials(100));
    try {
        export_run(r, file / "sub");
        FAIL();
    } catch (const IoError &e) {
        EXPECT_NE(std::string(e.what()).find(file.string()), std::string::npos);
    }
    fs::remove(file);
}

TEST(Sweep, EmptyValueListGivesHeaderOnly) {
    auto t = sweep(replication_preset(), "delay_dt", {}, with_trials(10));
    EXPECT_TRUE(t.rows.empty());
    auto text = t.render();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
    EXPECT_EQ(text.substr(0, 9), "delay_dt,");
}

TEST(Sweep, UnknownParameterRejected) {
    std::vector<double> v = {1.0};
    EXPECT_THROW(sweep(replication_preset(), "flux_capacitor", v), DomainError);
    EXPECT_THROW(sweep(replication_preset(), "source_model", v), DomainError);
}

TEST(Sweep, RowsMatchIndependentRunsWithDerivedSeeds) {
    auto c = replication_preset();
    std::vector<double> v = {0.1, 0.2};
    auto o = with_trials(30'000, 2);
    o.seed = 5;
    auto t = sweep(c, "p_excitation", v, o);
    ASSERT_EQ(t.rows.size(), 2u);
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto point = c;
        point.p_excitation = v[i];
        auto run_o = with_trials(30'000);
        run_o.seed = mix_seed(5, i);
        auto r = simulate_run(point, run_o);
        EXPECT_EQ(t.rows[i].g12, r.pair(PairRole::Cross).g);
        EXPECT_EQ(t.rows[i].g11, r.pair(PairRole::StokesAuto).g);
    }
}

TEST(Sweep, LosslessRatioTracksExactPrediction) {
    std::vector<double> v = {0.05, 0.1, 0.2};
    auto t = sweep(ideal(0.1), "p_excitation", v, with_trials(1'000'000, 4));
    for (std::size_t i = 0; i < v.size(); ++i) {
        ASSERT_TRUE(t.rows[i].report);
        auto predicted = predicted_correlations(ideal(v[i]));
        double exact = predicted.g12 * predicted.g12 / (predicted.g11 * predicted.g22);
        const auto &ratio = t.rows[i].report->ratio;
        EXPECT_LT(std::abs(ratio.value - exact), 4 * ratio.sigma) << v[i];
    }
}

}  // namespace
}  // namespace dlcz
