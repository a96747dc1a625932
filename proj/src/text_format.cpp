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

#include "dlcz/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string_view>

#include "dlcz/errors.hpp"
#include "dlcz/time.hpp"

namespace dlcz {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::string join_violations(const std::vector<Violation> &violations) {
    std::string out = "invalid config:";
    for (const auto &v : violations) {
        out += "\n  " + v.key + ": " + v.message;
    }
    return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<KeyValueEntry> parse_key_values(std::string_view text) {
    std::vector<KeyValueEntry> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::size_t first = 0;
        while (first < line.size() && is_space(line[first])) {
            ++first;
        }
        if (first == line.size()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, first + 1, "expected 'key = value'");
        }
        std::size_t key_end = eq;
        while (key_end > first && is_space(line[key_end - 1])) {
            --key_end;
        }
        if (key_end == first) {
            throw ParseError(line_no, eq + 1, "missing key before '='");
        }
        std::string_view key = line.substr(first, key_end - first);
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (is_space(key[i])) {
                throw ParseError(line_no, first + i + 1, "whitespace inside key");
            }
        }
        std::size_t value_begin = eq + 1;
        while (value_begin < line.size() && is_space(line[value_begin])) {
            ++value_begin;
        }
        std::size_t value_end = line.size();
        while (value_end > value_begin && is_space(line[value_end - 1])) {
            --value_end;
        }
        if (value_end == value_begin) {
            throw ParseError(line_no, eq + 2, "missing value for key '" + std::string(key) + "'");
        }
        out.push_back({std::string(key), std::string(line.substr(value_begin, value_end - value_begin)), line_no,
                       value_begin + 1});
        if (end == text.size()) {
            break;
        }
    }
    return out;
}

std::string format_exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, ptr);
}

std::string format_report(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

bool parse_double(std::string_view text, double &out) {
    if (text.empty()) {
        return false;
    }
    const char *begin = text.data();
    if (*begin == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_uint64(std::string_view text, std::uint64_t &out) {
    if (text.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::string format_ticks_as_seconds(Ticks ticks) {
    // 1 s = 10^12 ticks: print integer seconds, then up to 12 fractional digits.
    bool negative = ticks < 0;
    std::uint64_t magnitude = negative ? 0 - static_cast<std::uint64_t>(ticks) : static_cast<std::uint64_t>(ticks);
    std::uint64_t whole = magnitude / 1000000000000ULL;
    std::uint64_t frac = magnitude % 1000000000000ULL;
    std::string out = negative ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        char digits[13];
        std::snprintf(digits, sizeof(digits), "%012llu", static_cast<unsigned long long>(frac));
        std::string f(digits);
        while (!f.empty() && f.back() == '0') {
            f.pop_back();
        }
        out += "." + f;
    }
    return out;
}

namespace {

// Plain decimals ("-12.000000000345") with at most 12 fractional digits, parsed exactly.
std::optional<Ticks> parse_exact_decimal(std::string_view s) {
    bool negative = !s.empty() && s.front() == '-';
    if (negative || (!s.empty() && s.front() == '+')) s.remove_prefix(1);
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.size() > 12 || whole.size() > 7) return std::nullopt;
    auto digits = [](std::string_view d) {
        return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(whole) || !digits(frac)) return std::nullopt;
    std::int64_t value = 0;
    for (char c : whole) value = value * 10 + (c - '0');
    std::int64_t f = 0;
    for (std::size_t i = 0; i < 12; ++i) f = f * 10 + (i < frac.size() ? frac[i] - '0' : 0);
    value = value * 1'000'000'000'000LL + f;
    return negative ? -value : value;
}

}  // namespace

Ticks parse_seconds_as_ticks(const std::string &text) {
    if (auto exact = parse_exact_decimal(text)) return *exact;
    double seconds = 0;
    if (!parse_double(text, seconds) || !std::isfinite(seconds)) {
        throw ParseError(1, 1, "not a time value: '" + text + "'");
    }
    return to_ticks(seconds);
}

}  // namespace dlcz
