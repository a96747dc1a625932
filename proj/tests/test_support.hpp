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

// Shared statistical helpers for the test suites.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace dlcz::testing {

/// Upper critical value of chi-square with `df` degrees of freedom at a one-sided normal
/// quantile z (Wilson-Hilferty).
inline double chi2_critical(double df, double z = 4.26) {
    double a = 2.0 / (9.0 * df);
    double t = 1.0 - a + z * std::sqrt(a);
    return df * t * t * t;
}

/// Pearson chi-square of observed counts against expected probabilities. Cells with expected
/// count below 5 are pooled into one tail cell.
inline double chi2_statistic(const std::map<std::uint64_t, std::uint64_t> &observed,
                             const std::function<double(std::uint64_t)> &pmf, std::uint64_t n_samples,
                             std::uint64_t max_value, int &df) {
    double stat = 0.0;
    double pooled_expected = 0.0, pooled_observed = 0.0, used_p = 0.0;
    double used_obs = 0.0;
    int cells = 0;
    for (std::uint64_t k = 0; k <= max_value; ++k) {
        double p = pmf(k);
        double e = p * static_cast<double>(n_samples);
        auto it = observed.find(k);
        double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        used_p += p;
        used_obs += o;
        if (e < 5.0) {
            pooled_expected += e;
            pooled_observed += o;
            continue;
        }
        stat += (o - e) * (o - e) / e;
        ++cells;
    }
    pooled_expected += (1.0 - used_p) * static_cast<double>(n_samples);
    pooled_observed += static_cast<double>(n_samples) - used_obs;
    if (pooled_expected > 0.0) {
        stat += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) / pooled_expected;
        ++cells;
    }
    df = cells - 1;
    return stat;
}

/// |observed frequency - p| in units of the binomial standard error.
inline double binomial_z(std::uint64_t hits, std::uint64_t n, double p) {
    double f = static_cast<double>(hits) / static_cast<double>(n);
    return (f - p) / std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace dlcz::testing
