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

#include "dlcz/config.hpp"
#include "dlcz/sampling.hpp"

namespace dlcz {

/// Photon / excitation numbers of one trial as it moves through the write-store-read sequence.
struct TrialExcitation {
    Count n_stokes = 0;      // photons in the write (Stokes) mode
    Count n_memory = 0;      // excitations in the collective memory mode
    Count n_antistokes = 0;  // photons in the read (anti-Stokes) mode, filled by retrieve()

    bool operator==(const TrialExcitation &) const = default;
};

/// Draws the write-pulse outcome. Under QuantumTms n_stokes == n_memory; under
/// ClassicalCorrelated both are independent Poisson counts given a shared exponential intensity.
/// Throws DomainError for p < 0.
TrialExcitation sample_write(double p, SourceModel model, TrialRng &rng);

/// Exact probability of (n_stokes, n_memory) under the same law sample_write draws from.
double joint_pmf(double p, SourceModel model, Count n_stokes, Count n_memory);

/// Survival probability exp(-delay/lifetime) of one stored excitation.
double memory_survival(double delay, double lifetime);

/// Each stored excitation survives independently with memory_survival(); then
/// Poisson(diffusion_in_mean * (1 - survival)) uncorrelated excitations are added.
Count decohere_memory(Count n_memory, double delay, double lifetime, double diffusion_in_mean, TrialRng &rng);

/// Binomial(n_memory, eta_r) conversion of stored excitations to anti-Stokes photons.
Count retrieve(Count n_memory, double eta_r, TrialRng &rng);

}  // namespace dlcz
