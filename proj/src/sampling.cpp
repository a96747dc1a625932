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

#include "dlcz/sampling.hpp"

#include <cmath>
#include <random>

namespace dlcz {

namespace {

constexpr double kSmallPoissonMean = 12.0;
constexpr Count kSmallBinomialN = 24;

}  // namespace

Count sample_thermal(double mean, TrialRng &rng) {
    if (mean <= 0.0) {
        return 0;
    }
    // P(N >= n) = q^n with q = mean/(1+mean); invert with one uniform.
    double log_q = std::log(mean) - std::log1p(mean);
    double u = rng.uniform_open();
    return static_cast<Count>(std::floor(std::log(u) / log_q));
}

Count sample_poisson(double mean, TrialRng &rng) {
    if (mean <= 0.0) {
        return 0;
    }
    if (mean >= kSmallPoissonMean) {
        std::poisson_distribution<Count> dist(mean);
        return dist(rng);
    }
    double u = rng.uniform();
    double term = std::exp(-mean);
    double cdf = term;
    Count k = 0;
    while (u >= cdf) {
        ++k;
        term *= mean / static_cast<double>(k);
        double next = cdf + term;
        if (next == cdf) {
            break;  // cdf saturated in double precision
        }
        cdf = next;
    }
    return k;
}

Count sample_binomial(Count n, double probability, TrialRng &rng) {
    if (n == 0 || probability <= 0.0) {
        return 0;
    }
    if (probability >= 1.0) {
        return n;
    }
    if (n > kSmallBinomialN) {
        std::binomial_distribution<Count> dist(n, probability);
        return dist(rng);
    }
    Count k = 0;
    for (Count i = 0; i < n; ++i) {
        k += rng.uniform() < probability ? 1 : 0;
    }
    return k;
}

double sample_exponential(double mean, TrialRng &rng) {
    if (mean <= 0.0) {
        return 0.0;
    }
    return -mean * std::log(rng.uniform_open());
}

}  // namespace dlcz
