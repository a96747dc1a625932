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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dlcz {

// The flat `key = value` text shared by config files, correlation reports and oracle reports.

struct KeyValueEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;          // 1-based
    std::size_t value_column = 0;  // 1-based
};

/// Splits a key-value document. Blank lines and `#` comments (full-line or trailing) are skipped.
/// Throws ParseError on a line with no `=`, an empty key, or a key with inner whitespace.
std::vector<KeyValueEntry> parse_key_values(std::string_view text);

/// Shortest representation that parses back to the identical double.
std::string format_exact(double value);

/// Ten significant digits; what reports use.
std::string format_report(double value);

/// Strict full-string numeric parses. Return false on any trailing garbage or range error.
bool parse_double(std::string_view text, double &out);
bool parse_uint64(std::string_view text, std::uint64_t &out);

}  // namespace dlcz
