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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dlcz/detection.hpp"
#include "dlcz/time.hpp"

namespace dlcz {

// Time-interval-analyzer emulation: start-stop delay histograms and peak areas.

struct TimestampStream {
    Detector detector = Detector::A;
    std::vector<Ticks> timestamps;  // strictly increasing
    Ticks total_duration = 0;
};

/// Throws ContractViolation unless timestamps are strictly increasing and inside [0, total_duration).
void check_stream(const TimestampStream &stream);

struct DetectorPair {
    Detector start = Detector::A;
    Detector stop = Detector::B;

    bool operator==(const DetectorPair &) const = default;
};

std::string pair_name(DetectorPair pair);  // "AB", "AC", ...

struct CoincidenceHistogram {
    DetectorPair pair;
    Ticks bin_width = 0;
    std::vector<std::uint64_t> bins;  // bin k counts delays in [k*bin_width, (k+1)*bin_width)

    Ticks span() const { return bin_width * static_cast<Ticks>(bins.size()); }
    std::uint64_t total() const;

    CoincidenceHistogram &operator+=(const CoincidenceHistogram &other);
    bool operator==(const CoincidenceHistogram &) const = default;
};

/// Empty histogram. Throws ContractViolation unless span is a positive multiple of bin_width.
CoincidenceHistogram make_histogram(DetectorPair pair, Ticks bin_width, Ticks span);

/// Multi-stop accumulation: every (start, stop) with 0 <= stop - start < span increments one bin.
/// Both inputs must be sorted ascending (not checked here; histogram() checks).
void accumulate_coincidences(std::span<const Ticks> starts, std::span<const Ticks> stops, CoincidenceHistogram &hist);

/// Builds the start-stop histogram of two complete streams.
CoincidenceHistogram histogram(const TimestampStream &start, const TimestampStream &stop, Ticks bin_width, Ticks span);

/// Peak areas of one histogram: N is the same-trial peak, M the mean of the following peaks.
struct PeakAreas {
    std::uint64_t same_trial = 0;                 // N
    double baseline_mean = 0.0;                   // M
    std::vector<std::uint64_t> baseline_areas;    // one per following peak, j = 1..baseline_peaks

    bool operator==(const PeakAreas &) const = default;
};

/// Window of peak j is [j*cycle_period + window_offset, ... + gate_width); a bin belongs to the
/// window when its lower edge does. window_offset is the nominal start-to-stop gate separation
/// (0 for auto-correlations, delay_dt for Stokes -> anti-Stokes).
PeakAreas peak_areas(const CoincidenceHistogram &hist, Ticks cycle_period, Ticks gate_width,
                     std::uint64_t baseline_peaks, Ticks window_offset = 0);

/// Sorts a bag of clicks into the four per-detector streams.
std::array<TimestampStream, 4> merge_streams(std::span<const ClickEvent> events, Ticks total_duration);

/// Delimited export, header `delay_bin_start_seconds,count`, then one row per bin.
void write_histogram(std::ostream &out, const CoincidenceHistogram &hist);
CoincidenceHistogram read_histogram(std::istream &in, DetectorPair pair);

}  // namespace dlcz
