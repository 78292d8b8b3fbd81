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

#ifndef SPGAMMA_RESULT_TABLE_HPP
#define SPGAMMA_RESULT_TABLE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spgamma {

struct Column {
    std::string name;
    std::string unit; // "dimensionless" for pure numbers

    std::string header() const { return name + "[" + unit + "]"; }
    bool operator==(const Column&) const = default;
};

// Numeric table with a key/value metadata block. Values are finite by
// construction; add_row throws DomainError otherwise.
class ResultTable {
public:
    ResultTable() = default;
    ResultTable(std::string name, std::vector<Column> columns);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept { return metadata_; }

    void add_row(std::vector<double> row);
    void set_metadata(const std::string& key, std::string value);
    const std::string* metadata_value(std::string_view key) const;
    std::size_t column_index(std::string_view name) const; // NotFoundError

    bool operator==(const ResultTable&) const = default;

private:
    std::string name_;
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

/// "# key: value" lines, then "name[unit],..." and one line per row.
std::string to_csv(const ResultTable& table);

/// Inverse of to_csv. The table name is taken from the "table" metadata key.
ResultTable parse_csv(std::string_view text);

/// CSV without the metadata block.
std::string csv_body(std::string_view csv);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

} // namespace spgamma

#endif
