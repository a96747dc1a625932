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
#include <filesystem>
#include <string>

#include <unistd.h>

#include "dlcz/dlczsim.h"

namespace {

std::string take(char *s) {
    std::string out = s;
    dlcz_string_free(s);
    return out;
}

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STRNE(dlcz_version(), "");
    EXPECT_STREQ(dlcz_status_name(DLCZ_OK), "ok");
    EXPECT_STREQ(dlcz_status_name(DLCZ_ERR_IO), "io");
}

TEST(CApi, ConfigLifecycle) {
    dlcz_config *c = nullptr;
    ASSERT_EQ(dlcz_config_preset(&c), DLCZ_OK);
    double v = 0;
    ASSERT_EQ(dlcz_config_get(c, "p_excitation", &v), DLCZ_OK);
    EXPECT_EQ(v, 0.14);
    ASSERT_EQ(dlcz_config_set(c, "p_excitation", "0.2"), DLCZ_OK);
    ASSERT_EQ(dlcz_config_get(c, "p_excitation", &v), DLCZ_OK);
    EXPECT_EQ(v, 0.2);
    EXPECT_EQ(dlcz_config_set(c, "nope", "1"), DLCZ_ERR_DOMAIN);
    EXPECT_NE(std::string(dlcz_last_error()).find("nope"), std::string::npos);
    EXPECT_EQ(dlcz_config_set(c, "transmission", "abc"), DLCZ_ERR_DOMAIN);

    char *text = nullptr;
    ASSERT_EQ(dlcz_config_render(c, &text), DLCZ_OK);
    std::string rendered = take(text);
    dlcz_config *back = nullptr;
    ASSERT_EQ(dlcz_config_parse(rendered.c_str(), &back), DLCZ_OK);
    ASSERT_EQ(dlcz_config_render(back, &text), DLCZ_OK);
    EXPECT_EQ(take(text), rendered);
    dlcz_config_free(back);

    ASSERT_EQ(dlcz_config_set(c, "transmission", "1.5"), DLCZ_OK);
    char *violations = nullptr;
    EXPECT_EQ(dlcz_config_validate(c, &violations), DLCZ_ERR_INVALID);
    EXPECT_NE(take(violations).find("transmission"), std::string::npos);
    dlcz_run *run = nullptr;
    EXPECT_EQ(dlcz_run_simulate(c, nullptr, &run), DLCZ_ERR_INVALID);
    EXPECT_EQ(run, nullptr);
    dlcz_config_free(c);
    dlcz_config_free(nullptr);
}

TEST(CApi, ParseAndLoadErrors) {
    dlcz_config *c = nullptr;
    EXPECT_EQ(dlcz_config_parse("p_excitation 0.1\n", &c), DLCZ_ERR_PARSE);
    EXPECT_NE(std::string(dlcz_last_error()).find("line 1"), std::string::npos) << dlcz_last_error();
    EXPECT_EQ(dlcz_config_parse("retrieval_eff = 1.3\n", &c), DLCZ_ERR_INVALID);
    EXPECT_EQ(dlcz_config_load("/nonexistent/dlcz.cfg", &c), DLCZ_ERR_IO);
    EXPECT_EQ(dlcz_config_parse(nullptr, &c), DLCZ_ERR_ARGUMENT);
    EXPECT_EQ(dlcz_config_preset(nullptr), DLCZ_ERR_ARGUMENT);
}

TEST(CApi, RunOracleCompareExport) {
    dlcz_config *c = nullptr;
    ASSERT_EQ(dlcz_config_preset(&c), DLCZ_OK);
    dlcz_run_options o;
    dlcz_run_options_init(&o);
    o.trials = 200000;
    o.workers = 2;
    o.keep_events = 1;
    dlcz_run *run = nullptr;
    ASSERT_EQ(dlcz_run_simulate(c, &o, &run), DLCZ_OK) << dlcz_last_error();

    double g = 0, s = 0;
    ASSERT_EQ(dlcz_run_correlation(run, DLCZ_G12, &g, &s), DLCZ_OK);
    EXPECT_GT(g, 1.0);
    EXPECT_GT(s, 0.0);
    uint64_t n = 0;
    double m = 0;
    ASSERT_EQ(dlcz_run_peak_areas(run, DLCZ_G12, &n, &m), DLCZ_OK);
    EXPECT_NEAR(g, static_cast<double>(n) / m, 1e-12);
    double rs = 0, ra = 0;
    ASSERT_EQ(dlcz_run_singles_rates(run, &rs, &ra), DLCZ_OK);
    EXPECT_GT(rs, ra);
    EXPECT_EQ(dlcz_run_correlation(run, static_cast<dlcz_correlation>(9), &g, &s), DLCZ_ERR_DOMAIN);

    char *report = nullptr;
    ASSERT_EQ(dlcz_run_report(run, &report), DLCZ_OK);
    EXPECT_NE(take(report).find("trials = 200000"), std::string::npos);

    dlcz_oracle *oracle = nullptr;
    EXPECT_EQ(dlcz_oracle_compute(c, 3, &oracle), DLCZ_ERR_DOMAIN);
    ASSERT_EQ(dlcz_oracle_compute(c, 60, &oracle), DLCZ_OK);
    double og = 0;
    ASSERT_EQ(dlcz_oracle_correlation(oracle, DLCZ_G12, &og), DLCZ_OK);
    EXPECT_GT(og, 1.0);
    char *table = nullptr;
    size_t flagged = 99;
    ASSERT_EQ(dlcz_compare(run, oracle, 4.0, &table, &flagged), DLCZ_OK);
    EXPECT_EQ(flagged, 0u) << table;
    EXPECT_EQ(take(table).rfind("quantity,mc,oracle,sigma_mc,z,flagged\n", 0), 0u);
    char *oreport = nullptr;
    ASSERT_EQ(dlcz_oracle_report(oracle, &oreport), DLCZ_OK);
    EXPECT_NE(take(oreport).find("g12 = "), std::string::npos);

    dlcz_config *other = nullptr;
    ASSERT_EQ(dlcz_config_preset(&other), DLCZ_OK);
    ASSERT_EQ(dlcz_config_set(other, "p_excitation", "0.3"), DLCZ_OK);
    dlcz_oracle *other_oracle = nullptr;
    ASSERT_EQ(dlcz_oracle_compute(other, 60, &other_oracle), DLCZ_OK);
    EXPECT_EQ(dlcz_compare(run, other_oracle, 4.0, nullptr, nullptr), DLCZ_ERR_DOMAIN);

    auto dir = std::filesystem::temp_directory_path() / ("dlcz_capi_" + std::to_string(::getpid()));
    char *files = nullptr;
    ASSERT_EQ(dlcz_run_export(run, dir.c_str(), &files), DLCZ_OK);
    std::string listing = take(files);
    EXPECT_NE(listing.find("events.csv"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
    std::filesystem::remove_all(dir);

    dlcz_oracle_free(other_oracle);
    dlcz_config_free(other);
    dlcz_oracle_free(oracle);
    dlcz_run_free(run);
    dlcz_config_free(c);
}

TEST(CApi, UndefinedCorrelation) {
    dlcz_config *c = nullptr;
    ASSERT_EQ(dlcz_config_parse("p_excitation = 0\ndark_mean = 0\nbg_stokes_mean = 0\nbg_antistokes_mean = 0\n"
                                "memory_diffusion_in = 0\n",
                                &c),
              DLCZ_OK);
    dlcz_run_options o;
    dlcz_run_options_init(&o);
    o.trials = 1000;
    dlcz_run *run = nullptr;
    ASSERT_EQ(dlcz_run_simulate(c, &o, &run), DLCZ_OK);
    double g = 0;
    EXPECT_EQ(dlcz_run_correlation(run, DLCZ_G11, &g, nullptr), DLCZ_ERR_UNDEFINED);
    dlcz_run_free(run);
    dlcz_config_free(c);
}

TEST(CApi, Sweep) {
    dlcz_config *c = nullptr;
    ASSERT_EQ(dlcz_config_preset(&c), DLCZ_OK);
    dlcz_run_options o;
    dlcz_run_options_init(&o);
    o.trials = 20000;
    const double values[] = {0.0, 1e-6};
    char *table = nullptr;
    ASSERT_EQ(dlcz_sweep(c, "delay_dt", values, 2, &o, &table), DLCZ_OK);
    std::string t = take(table);
    EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 3);
    EXPECT_EQ(dlcz_sweep(c, "bogus", values, 2, &o, &table), DLCZ_ERR_DOMAIN);
    EXPECT_EQ(dlcz_sweep(c, "delay_dt", nullptr, 2, &o, &table), DLCZ_ERR_ARGUMENT);
    const double bad[] = {-1.0};
    EXPECT_EQ(dlcz_sweep(c, "transmission", bad, 1, &o, &table), DLCZ_ERR_INVALID);
    dlcz_config_free(c);
}

}  // namespace
