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

#include "spgamma/result_table.hpp"

#include "spgamma/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spgamma {

ResultTable::ResultTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns))
{
    if (columns_.empty())
        throw DomainError("table '" + name_ + "' needs at least one column");
    for (const auto& c : columns_)
        if (c.name.empty() || c.header().find_first_of(",\n#") != std::string::npos)
            throw DomainError("table '" + name_ + "': bad column name '" + c.name + "'");
    if (!name_.empty())
        set_metadata("table", name_);
}

void ResultTable::add_row(std::vector<double> row)
{
    if (row.size() != columns_.size())
        throw DomainError("table '" + name_ + "': row has " + std::to_string(row.size()) + " values, expected "
                          + std::to_string(columns_.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!std::isfinite(row[i]))
            throw DomainError("table '" + name_ + "': non-finite value in column " + columns_[i].name);
    rows_.push_back(std::move(row));
}

void ResultTable::set_metadata(const std::string& key, std::string value)
{
    if (key.empty() || key.find_first_of(":\n") != std::string::npos || value.find('\n') != std::string::npos)
        throw DomainError("bad metadata entry '" + key + "'");
    for (auto& kv : metadata_)
        if (kv.first == key) {
            kv.second = std::move(value);
            return;
        }
    metadata_.emplace_back(key, std::move(value));
}

const std::string* ResultTable::metadata_value(std::string_view key) const
{
    for (const auto& kv : metadata_)
        if (kv.first == key)
            return &kv.second;
    return nullptr;
}

std::size_t ResultTable::column_index(std::string_view name) const
{
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name)
            return i;
    throw NotFoundError("table '" + name_ + "' has no column '" + std::string(name) + "'");
}

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string to_csv(const ResultTable& table)
{
    std::string out;
    for (const auto& [k, v] : table.metadata())
        out += "# " + k + ": " + v + "\n";
    for (std::size_t i = 0; i < table.columns().size(); ++i)
        out += (i ? "," : "") + table.columns()[i].header();
    out += "\n";
    for (const auto& row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_double(row[i]);
        }
        out += "\n";
    }
    return out;
}

namespace {

Column parse_header_cell(const std::string& cell, int line)
{
    const auto open = cell.rfind('[');
    if (open == std::string::npos || cell.empty() || cell.back() != ']')
        throw ParseError("column header '" + cell + "' lacks a [unit] suffix", line);
    return {cell.substr(0, open), cell.substr(open + 1, cell.size() - open - 2)};
}

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

ResultTable parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (have_header)
                throw ParseError("metadata after the header row", line_no);
            const auto colon = line.find(':');
            if (line.size() < 2 || line[1] != ' ' || colon == std::string::npos || colon + 1 >= line.size()
                || line[colon + 1] != ' ')
                throw ParseError("malformed metadata line", line_no);
            meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        const auto cells = split_commas(line);
        if (!have_header) {
            for (const auto& c : cells)
                columns.push_back(parse_header_cell(c, line_no));
            have_header = true;
            continue;
        }
        if (cells.size() != columns.size())
            throw ParseError("expected " + std::to_string(columns.size()) + " values", line_no);
        std::vector<double> row;
        for (const auto& c : cells) {
            double v = 0.0;
            const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc() || res.ptr != c.data() + c.size() || !std::isfinite(v))
                throw ParseError("bad number '" + c + "'", line_no);
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (!have_header)
        throw ParseError("missing header row", line_no);

    std::string name;
    for (const auto& kv : meta)
        if (kv.first == "table")
            name = kv.second;
    ResultTable table(name, columns);
    for (auto& kv : meta)
        table.set_metadata(kv.first, kv.second);
    for (auto& r : rows)
        table.add_row(std::move(r));
    return table;
}

std::string csv_body(std::string_view csv)
{
    std::string out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto end = csv.find('\n', pos);
        if (end == std::string_view::npos)
            end = csv.size();
        const auto line = csv.substr(pos, end - pos);
        if (line.empty() || line[0] != '#') {
            out.append(line);
            out += '\n';
        }
        pos = end + 1;
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace spgamma
