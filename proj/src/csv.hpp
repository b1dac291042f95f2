// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <charconv>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aocsi::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_double(std::string_view field, const std::string& where) {
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw std::runtime_error(where + ": cannot parse number '" + std::string(field) + "'");
    return value;
}

inline long long parse_integer(std::string_view field, const std::string& where) {
    long long value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw std::runtime_error(where + ": cannot parse integer '" + std::string(field) + "'");
    return value;
}

/// Reads a headered CSV, checking the header matches `expected`. Blank lines
/// and lines starting with '#' are skipped. Returns (line number, fields).
struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string_view> fields;
};

class CsvReader {
public:
    CsvReader(std::istream& in, std::string source, std::vector<std::string> expected_header)
        : in_(in), source_(std::move(source)) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            const auto t = trim(line);
            if (t.empty() || t.front() == '#') continue;
            const auto fields = split_fields(t);
            if (fields.size() != expected_header.size() ||
                !std::equal(fields.begin(), fields.end(), expected_header.begin()))
                throw std::runtime_error(where() + ": expected header '" + join(expected_header) +
                                         "'");
            return;
        }
        throw std::runtime_error(source_ + ": empty file, expected header '" +
                                 join(expected_header) + "'");
    }

    bool next(CsvRow& row) {
        while (std::getline(in_, buffer_)) {
            ++line_no_;
            const auto t = trim(buffer_);
            if (t.empty() || t.front() == '#') continue;
            row.line = line_no_;
            row.fields = split_fields(t);
            return true;
        }
        return false;
    }

    std::string where() const { return source_ + ":" + std::to_string(line_no_); }

private:
    static std::string join(const std::vector<std::string>& parts) {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
        return out;
    }

    std::istream& in_;
    std::string source_;
    std::string buffer_;
    std::size_t line_no_ = 0;
};

}  // namespace aocsi::detail
