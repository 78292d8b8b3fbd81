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
#include "spgamma/kvfile.hpp"

#include <doctest.h>

using namespace spgamma;

TEST_CASE("records split on blank lines, comments ignored")
{
    const auto recs = parse_kv_records("# header\n\na = 1\nb = two # trailing\n# note\nc=3\n\n\nd = 4.5e-3\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].first_line() == 3);
    CHECK(recs[0].get_int("a") == 1);
    CHECK(recs[0].get_string("b") == "two");
    CHECK(recs[0].get_int("c") == 3);
    CHECK(recs[1].get_double("d") == 4.5e-3);
    CHECK(recs[1].get_double("missing", 7.0) == 7.0);
}

TEST_CASE("malformed input reports the line")
{
    auto line_of = [](const char* text) {
        try {
            const auto recs = parse_kv_records(text);
            for (const auto& r : recs)
                r.get_double("x");
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("x = 1\nno equals sign\n") == 2);
    CHECK(line_of("x = 1\n = 3\n") == 2);
    CHECK(line_of("\n\nx =\n") == 3);
    CHECK(line_of("x = 1\nx = 2\n") == 2);
    CHECK(line_of("x = 1\n\nx = abc\n") == 3);
    CHECK(line_of("y = 1\n") == 1); // missing key reported at the record start
}

TEST_CASE("parse error message carries source and line")
{
    const ParseError e("bad", 4, "data/nuclides.dat");
    CHECK(std::string(e.what()) == "data/nuclides.dat:4: bad");
    CHECK(e.detail() == "bad");
    CHECK(std::string(ParseError("bad", 4).what()) == "line 4: bad");
}

TEST_CASE("missing files are runtime errors")
{
    CHECK_THROWS_AS(read_text_file("/nonexistent/spgamma.dat"), Error);
}
