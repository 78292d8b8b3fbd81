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

#ifndef SPGAMMA_KVFILE_HPP
#define SPGAMMA_KVFILE_HPP

// Reader for the key/value data files shared by the nuclide and lattice
// registries:
//
//   # comment
//   name = Fe-57
//   e0_keV = 14.4129
//
//   name = Dy-161
//   ...
//
// One record per block; blocks are separated by blank lines.

#include <string>
#include <string_view>
#include <vector>

namespace spgamma {

struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

class KvRecord {
public:
    int first_line() const noexcept { return first_line_; }
    const std::vector<KvEntry>& entries() const noexcept { return entries_; }

    const KvEntry* find(std::string_view key) const;
    bool has(std::string_view key) const { return find(key) != nullptr; }

    // The typed getters throw ParseError carrying the offending line.
    std::string get_string(std::string_view key) const;
    double get_double(std::string_view key) const;
    double get_double(std::string_view key, double fallback) const;
    int get_int(std::string_view key) const;

private:
    friend std::vector<KvRecord> parse_kv_records(std::string_view text);
    int first_line_ = 0;
    std::vector<KvEntry> entries_;
};

std::vector<KvRecord> parse_kv_records(std::string_view text);

std::string read_text_file(const std::string& path);

} // namespace spgamma

#endif
