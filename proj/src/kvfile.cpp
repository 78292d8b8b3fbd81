// SPDX-License-Identifier: Apache-2.0
//
// spgamma: coherent Smith-Purcell gamma-ray emission from resonant nuclei
// Copyright (C) 2026 The spgamma authors
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

#include "spgamma/kvfile.hpp"

#include "spgamma/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace spgamma {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

const KvEntry* KvRecord::find(std::string_view key) const
{
    for (const auto& e : entries_)
        if (e.key == key)
            return &e;
    return nullptr;
}

std::string KvRecord::get_string(std::string_view key) const
{
    const KvEntry* e = find(key);
    if (!e)
        throw ParseError("missing required key '" + std::string(key) + "'", first_line_);
    return e->value;
}

double KvRecord::get_double(std::string_view key) const
{
    const KvEntry* e = find(key);
    if (!e)
        throw ParseError("missing required key '" + std::string(key) + "'", first_line_);
    double value = 0.0;
    const char* begin = e->value.data();
    const char* end = begin + e->value.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("key '" + e->key + "': not a number: '" + e->value + "'", e->line);
    return value;
}

double KvRecord::get_double(std::string_view key, double fallback) const
{
    return has(key) ? get_double(key) : fallback;
}

int KvRecord::get_int(std::string_view key) const
{
    const KvEntry* e = find(key);
    if (!e)
        throw ParseError("missing required key '" + std::string(key) + "'", first_line_);
    int value = 0;
    const char* begin = e->value.data();
    const char* end = begin + e->value.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("key '" + e->key + "': not an integer: '" + e->value + "'", e->line);
    return value;
}

std::vector<KvRecord> parse_kv_records(std::string_view text)
{
    std::vector<KvRecord> records;
    KvRecord current;
    bool open = false;
    int line_no = 0;

    auto close = [&] {
        if (open)
            records.push_back(std::move(current));
        current = KvRecord{};
        open = false;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            // comment-only lines do not terminate a record
            if (trim(raw).empty())
                close();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", line_no);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("empty key", line_no);
        if (value.empty())
            throw ParseError("empty value for key '" + std::string(key) + "'", line_no);

        if (!open) {
            open = true;
            current.first_line_ = line_no;
        }
        if (current.find(key))
            throw ParseError("duplicate key '" + std::string(key) + "' in record", line_no);
        current.entries_.push_back({std::string(key), std::string(value), line_no});
    }
    close();
    return records;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace spgamma
