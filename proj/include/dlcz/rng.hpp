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

#include <array>
#include <cstdint>
#include <limits>

namespace dlcz {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Counter-based stream for one duty cycle. The stream is a pure function of
/// (seed, trial_index, stream_tag), so trials can be generated in any order on any
/// number of workers and still reproduce bit for bit.
///
/// Satisfies UniformRandomBitGenerator so std:: distributions accept it.
class TrialRng {
   public:
    using result_type = std::uint32_t;

    TrialRng(std::uint64_t seed, std::uint64_t trial_index, std::uint32_t stream_tag = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 4) {
            refill();
        }
        return block_[used_++];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        std::uint64_t hi = (*this)();
        std::uint64_t lo = (*this)();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1); safe to take the log of.
    double uniform_open() {
        std::uint64_t hi = (*this)();
        std::uint64_t lo = (*this)();
        return (static_cast<double>(((hi << 32) | lo) >> 11) + 0.5) * 0x1.0p-53;
    }

   private:
    void refill();

    PhiloxKey key_;
    PhiloxCounter counter_;
    PhiloxCounter block_{};
    unsigned used_ = 4;
};

/// SplitMix64 finalizer. Used to derive independent seeds (sweep points, repeated runs).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace dlcz
