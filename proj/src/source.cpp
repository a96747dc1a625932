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

#include "dlcz/source.hpp"

#include <cmath>
#include <string>

namespace dlcz {

namespace {

void require_mean(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw DomainError("mean excitation p must be finite and >= 0, got " + std::to_string(p));
    }
}

void require_probability(double eta, const char *name) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(eta));
    }
}

}  // namespace

TrialExcitation sample_write(double p, SourceModel model, TrialRng &rng) {
    require_mean(p);
    TrialExcitation out;
    if (p == 0.0) {
        return out;
    }
    switch (model) {
        case SourceModel::QuantumTms:
            out.n_stokes = sample_thermal(p, rng);
            out.n_memory = out.n_stokes;
            break;
        case SourceModel::ClassicalCorrelated: {
            double intensity = sample_exponential(p, rng);
            out.n_stokes = sample_poisson(intensity, rng);
            out.n_memory = sample_poisson(intensity, rng);
            break;
        }
    }
    return out;
}

double joint_pmf(double p, SourceModel model, Count n_stokes, Count n_memory) {
    require_mean(p);
    if (p == 0.0) {
        return (n_stokes == 0 && n_memory == 0) ? 1.0 : 0.0;
    }
    switch (model) {
        case SourceModel::QuantumTms: {
            if (n_stokes != n_memory) {
                return 0.0;
            }
            double n = static_cast<double>(n_stokes);
            return std::exp(n * std::log(p) - (n + 1.0) * std::log1p(p));
        }
        case SourceModel::ClassicalCorrelated: {
            // Integral of Poisson(a; l) Poisson(b; l) exp(-l/p)/p over l:
            //   C(a+b, a) p^(a+b) / (1+2p)^(a+b+1).
            double a = static_cast<double>(n_stokes);
            double b = static_cast<double>(n_memory);
            double log_binom = std::lgamma(a + b + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0);
            return std::exp(log_binom + (a + b) * std::log(p) - (a + b + 1.0) * std::log1p(2.0 * p));
        }
    }
    return 0.0;
}

double memory_survival(double delay, double lifetime) {
    if (!(delay >= 0.0) || !(lifetime > 0.0)) {
        throw DomainError("memory decay needs delay >= 0 and lifetime > 0");
    }
    return std::exp(-delay / lifetime);
}

Count decohere_memory(Count n_memory, double delay, double lifetime, double diffusion_in_mean, TrialRng &rng) {
    if (!(diffusion_in_mean >= 0.0)) {
        throw DomainError("diffusion_in_mean must be >= 0");
    }
    double survival = memory_survival(delay, lifetime);
    Count kept = sample_binomial(n_memory, survival, rng);
    return kept + sample_poisson(diffusion_in_mean * (1.0 - survival), rng);
}

Count retrieve(Count n_memory, double eta_r, TrialRng &rng) {
    require_probability(eta_r, "retrieval efficiency");
    return sample_binomial(n_memory, eta_r, rng);
}

}  // namespace dlcz
