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

#include "spgamma/errors.hpp"
#include "spgamma/result_table.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace spgamma;

TEST_CASE("csv round trip preserves every bit")
{
    ResultTable t("sweep", {{"beta", "dimensionless"}, {"yield", "dimensionless"}, {"r", "nm"}});
    t.set_metadata("config_hash", "0123456789abcdef");
    t.set_metadata("note", "a: b, c");
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 500; ++i)
        t.add_row({mant(rng) * std::pow(10.0, expo(rng)), mant(rng), std::numeric_limits<double>::denorm_min() * i});
    t.add_row({0.0, -0.0, std::numeric_limits<double>::max()});
    const std::string csv = to_csv(t);
    const ResultTable back = parse_csv(csv);
    CHECK(back == t);
    CHECK(to_csv(back) == csv);
    CHECK(std::signbit(back.rows().back()[1]));
}

TEST_CASE("layout")
{
    ResultTable t("pattern", {{"cos_theta", "dimensionless"}, {"density", "sr^-1"}});
    t.set_metadata("scenario", "array-pattern");
    t.add_row({0.5, 1.25});
    const std::string csv = to_csv(t);
    CHECK(csv == "# table: pattern\n# scenario: array-pattern\ncos_theta[dimensionless],density[sr^-1]\n0.5,1.25\n");
    CHECK(csv_body(csv) == "cos_theta[dimensionless],density[sr^-1]\n0.5,1.25\n");
    CHECK(*t.metadata_value("table") == "pattern");
    CHECK(t.metadata_value("absent") == nullptr);
    t.set_metadata("scenario", "other");
    CHECK(t.metadata().size() == 2);
    CHECK(t.column_index("density") == 1);
    CHECK_THROWS_AS(t.column_index("nope"), NotFoundError);
}

TEST_CASE("non-finite values and ragged rows are rejected")
{
    ResultTable t("x", {{"a", "nm"}, {"b", "nm"}});
    CHECK_THROWS_AS(t.add_row({1.0}), DomainError);
    CHECK_THROWS_AS(t.add_row({1.0, NAN}), DomainError);
    CHECK_THROWS_AS(t.add_row({INFINITY, 1.0}), DomainError);
    CHECK(t.rows().empty());
}

TEST_CASE("malformed csv reports the line")
{
    const std::string good = "# table: t\na[nm],b[nm]\n1,2\n";
    CHECK_NOTHROW(parse_csv(good));
    auto line_of = [](const std::string& text) {
        try {
            parse_csv(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("# table: t\na[nm],b[nm]\n1,2\n3\n") == 4);
    CHECK(line_of("# table: t\na[nm],b[nm]\n1,zz\n") == 3);
    CHECK(line_of("# table: t\na,b[nm]\n1,2\n") == 2);
    CHECK(line_of("# table: t\na[nm],b[nm]\n1,nan\n") == 3);
}

TEST_CASE("formatting and hashing")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    // Published FNV-1a 64-bit test vectors.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}
