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

#include "dlcz/coincidence.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "dlcz/errors.hpp"
#include "dlcz/text_format.hpp"

namespace dlcz {

void check_stream(const TimestampStream &stream) {
    const auto &ts = stream.timestamps;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < 0 || ts[i] >= stream.total_duration) {
            throw ContractViolation("timestamp outside [0, total_duration) on detector " +
                                    std::string(detector_name(stream.detector)));
        }
        if (i > 0 && ts[i] <= ts[i - 1]) {
            throw ContractViolation("timestamps not strictly increasing on detector " +
                                    std::string(detector_name(stream.detector)) + " at index " + std::to_string(i));
        }
    }
}

std::string pair_name(DetectorPair pair) {
    return std::string(detector_name(pair.start)) + std::string(detector_name(pair.stop));
}

std::uint64_t CoincidenceHistogram::total() const {
    return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

CoincidenceHistogram &CoincidenceHistogram::operator+=(const CoincidenceHistogram &other) {
    if (other.bin_width != bin_width || other.bins.size() != bins.size()) {
        throw ContractViolation("cannot add histograms with different binning");
    }
    for (std::size_t k = 0; k < bins.size(); ++k) {
        bins[k] += other.bins[k];
    }
    return *this;
}

CoincidenceHistogram make_histogram(DetectorPair pair, Ticks bin_width, Ticks span) {
    if (bin_width <= 0 || span <= 0 || span % bin_width != 0) {
        throw ContractViolation("histogram span must be a positive multiple of the bin width");
    }
    CoincidenceHistogram hist;
    hist.pair = pair;
    hist.bin_width = bin_width;
    hist.bins.assign(static_cast<std::size_t>(span / bin_width), 0);
    return hist;
}

void accumulate_coincidences(std::span<const Ticks> starts, std::span<const Ticks> stops, CoincidenceHistogram &hist) {
    const Ticks span = hist.span();
    auto first_stop = stops.begin();
    for (Ticks t_start : starts) {
        first_stop = std::lower_bound(first_stop, stops.end(), t_start);
        for (auto it = first_stop; it != stops.end() && *it - t_start < span; ++it) {
            ++hist.bins[static_cast<std::size_t>((*it - t_start) / hist.bin_width)];
        }
    }
}

CoincidenceHistogram histogram(const TimestampStream &start, const TimestampStream &stop, Ticks bin_width,
                               Ticks span) {
    check_stream(start);
    check_stream(stop);
    auto hist = make_histogram({start.detector, stop.detector}, bin_width, span);
    accumulate_coincidences(start.timestamps, stop.timestamps, hist);
    return hist;
}

PeakAreas peak_areas(const CoincidenceHistogram &hist, Ticks cycle_period, Ticks gate_width,
                     std::uint64_t baseline_peaks, Ticks window_offset) {
    if (gate_width <= 0 || gate_width >= cycle_period) {
        throw ContractViolation("peak windows need 0 < gate_width < cycle_period");
    }
    if (baseline_peaks == 0) {
        throw ContractViolation("at least one baseline peak is required");
    }
    const Ticks last_window_end =
        static_cast<Ticks>(baseline_peaks) * cycle_period + window_offset + gate_width;
    if (hist.span() < static_cast<Ticks>(baseline_peaks + 1) * cycle_period || hist.span() < last_window_end) {
        throw ContractViolation("histogram span too small for " + std::to_string(baseline_peaks) + " baseline peaks");
    }
    auto window_sum = [&](Ticks lo) {
        Ticks hi = lo + gate_width;
        std::uint64_t sum = 0;
        // Bins whose lower edge lies in [lo, hi).
        auto k = static_cast<std::size_t>((lo + hist.bin_width - 1) / hist.bin_width);
        for (; k < hist.bins.size() && static_cast<Ticks>(k) * hist.bin_width < hi; ++k) {
            sum += hist.bins[k];
        }
        return sum;
    };
    PeakAreas areas;
    areas.same_trial = window_sum(window_offset);
    areas.baseline_areas.reserve(baseline_peaks);
    std::uint64_t total = 0;
    for (std::uint64_t j = 1; j <= baseline_peaks; ++j) {
        auto a = window_sum(static_cast<Ticks>(j) * cycle_period + window_offset);
        areas.baseline_areas.push_back(a);
        total += a;
    }
    areas.baseline_mean = static_cast<double>(total) / static_cast<double>(baseline_peaks);
    return areas;
}

std::array<TimestampStream, 4> merge_streams(std::span<const ClickEvent> events, Ticks total_duration) {
    std::array<TimestampStream, 4> streams;
    for (Detector d : kAllDetectors) {
        streams[index_of(d)].detector = d;
        streams[index_of(d)].total_duration = total_duration;
    }
    for (const auto &e : events) {
        streams[index_of(e.detector)].timestamps.push_back(e.timestamp);
    }
    for (auto &s : streams) {
        std::sort(s.timestamps.begin(), s.timestamps.end());
    }
    return streams;
}

void write_histogram(std::ostream &out, const CoincidenceHistogram &hist) {
    out << "delay_bin_start_seconds,count\n";
    for (std::size_t k = 0; k < hist.bins.size(); ++k) {
        out << format_ticks_as_seconds(static_cast<Ticks>(k) * hist.bin_width) << ',' << hist.bins[k] << '\n';
    }
}

CoincidenceHistogram read_histogram(std::istream &in, DetectorPair pair) {
    std::string line;
    if (!std::getline(in, line) || line != "delay_bin_start_seconds,count") {
        throw ParseError(1, 1, "expected histogram header 'delay_bin_start_seconds,count'");
    }
    std::vector<Ticks> starts;
    std::vector<std::uint64_t> counts;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto comma = line.find(',');
        std::uint64_t count = 0;
        if (comma == std::string::npos || !parse_uint64(std::string_view(line).substr(comma + 1), count)) {
            throw ParseError(line_no, 1, "expected 'seconds,count'");
        }
        starts.push_back(parse_seconds_as_ticks(line.substr(0, comma)));
        counts.push_back(count);
    }
    if (starts.size() < 2 || starts[0] != 0) {
        throw ParseError(line_no, 1, "histogram needs at least two bins starting at 0");
    }
    Ticks width = starts[1] - starts[0];
    for (std::size_t k = 0; k < starts.size(); ++k) {
        if (starts[k] != static_cast<Ticks>(k) * width) {
            throw ParseError(k + 2, 1, "bins are not evenly spaced");
        }
    }
    CoincidenceHistogram hist;
    hist.pair = pair;
    hist.bin_width = width;
    hist.bins = std::move(counts);
    return hist;
}

}  // namespace dlcz
