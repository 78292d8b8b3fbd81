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

#include "spgamma/crystal_sp.hpp"
#include "spgamma/nuclide.hpp"
#include "spgamma/result_table.hpp"
#include "spgamma/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spgamma;

namespace {

ValidationResult check(const std::string& text)
{
    static const NuclideRegistry nuclides = NuclideRegistry::builtin();
    static const LatticeRegistry lattices = LatticeRegistry::builtin();
    return validate_config(text, nuclides, lattices);
}

bool has_issue(const ValidationResult& r, const std::string& path, const std::string& fragment)
{
    return std::any_of(r.issues.begin(), r.issues.end(), [&](const ConfigIssue& i) {
        return i.path == path && i.message.find(fragment) != std::string::npos;
    });
}

const ResultTable& table(const std::vector<ResultTable>& ts, const std::string& name)
{
    for (const auto& t : ts)
        if (t.name() == name)
            return t;
    FAIL("missing table " << name);
    throw;
}

std::string read(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("minimal crystal-yield config gets documented defaults")
{
    const auto r = check(R"({"scenario": "crystal-yield", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": 0.94}, "geometry": {"r_min_nm": 0.001}})");
    REQUIRE(r.ok());
    const auto& c = *r.config;
    CHECK(c.kind == ScenarioKind::crystal_yield);
    CHECK(c.order_cap == 12);
    CHECK(c.angular_tolerance == 1e-8);
    CHECK(c.lattice.name == "bcc100");
    CHECK(c.n_layers == 1);
    CHECK(c.cutoff == CutoffShape::hard);
    CHECK(c.probe.charge == -1);
    CHECK(c.probe.betas == std::vector<double>{0.94});
    CHECK(c.output_path == "crystal-yield");
    CHECK(c.format == "csv");
    CHECK_FALSE(c.plane_check.has_value());
    const std::string resolved = resolved_config_json(c);
    CHECK(resolved.find("\"order_cap\": 12") != std::string::npos);
    // The resolved form validates to itself.
    const auto again = check(resolved);
    REQUIRE(again.ok());
    CHECK(resolved_config_json(*again.config) == resolved);
}

TEST_CASE("validation errors carry field paths")
{
    auto r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": 1.0}, "geometry": {"r_perp_nm": 0.001}})");
    CHECK_FALSE(r.ok());
    CHECK(has_issue(r, "probe.beta", "beta must be < 1"));

    r = check(R"({"scenario": "nuclide-info", "nuclide": "Fe-58"})");
    CHECK_FALSE(r.ok());
    CHECK(has_issue(r, "nuclide", "Fe-57"));
    CHECK(has_issue(r, "nuclide", "Dy-161"));

    r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": []}, "geometry": {"r_perp_nm": 0.001}})");
    CHECK(has_issue(r, "probe.beta", "grid is empty"));

    r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta_range": {"start": 0.5, "stop": 0.9, "count": 0}},
        "geometry": {"r_perp_nm": 0.001}})");
    CHECK(has_issue(r, "probe.beta_range.count", "beta grid is empty"));

    r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": [0.5, 0.4, 0.6]}, "geometry": {"r_perp_nm": 0.001}})");
    CHECK(has_issue(r, "probe.beta", "monotone"));

    r = check(R"({"scenario": "crystal-yield", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": 0.9}, "geometry": {"r_min_nm": 0, "lattice": "hcp"}})");
    CHECK(has_issue(r, "geometry.r_min_nm", "r_min must be > 0"));
    CHECK(has_issue(r, "geometry.lattice", "bcc100"));
}

TEST_CASE("every problem is reported at once")
{
    const auto r = check(R"({"scenario": "array-pattern", "nuclide": "Xx-1", "colour": "red",
        "probe": {"species": "muon", "beta": 1.5}, "geometry": {"n_nuclei": 1}})");
    CHECK_FALSE(r.ok());
    CHECK(r.issues.size() >= 4);
    CHECK(has_issue(r, "colour", ""));
    CHECK(has_issue(r, "nuclide", ""));
    CHECK(has_issue(r, "probe.species", ""));
    CHECK(has_issue(r, "probe.beta", "beta must be < 1"));
}

TEST_CASE("syntax errors carry line and column")
{
    const auto r = check("{\n  \"scenario\": \"nuclide-info\",\n  \"nuclide\" \"Fe-57\"\n}");
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].line == 3);
    CHECK(r.issues[0].column > 0);
    CHECK(r.issues[0].to_string().rfind("line 3, column", 0) == 0);
}

TEST_CASE("probe alternatives are exclusive")
{
    auto r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": 0.5, "kinetic_energy_eV": 1e6}, "geometry": {"r_perp_nm": 0.001}})");
    CHECK_FALSE(r.ok());
    r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"charge": 2, "rest_energy_eV": 3.727e9, "kinetic_energy_eV": 3.727e9}, "geometry": {"r_perp_nm": 0.001}})");
    REQUIRE(r.ok());
    CHECK(r.config->probe.betas[0] == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    r = check(R"({"scenario": "nuclide-info", "nuclide": "Fe-57", "probe": {"species": "electron", "beta": 0.5}})");
    CHECK(has_issue(r, "probe", ""));
}

TEST_CASE("nuclide-info reports lifetimes and the coherent fraction")
{
    const auto r = check(R"({"scenario": "nuclide-info", "nuclide": "Fe-57"})");
    REQUIRE(r.ok());
    const auto tables = run_scenario(*r.config);
    const auto& t = table(tables, "nuclide");
    REQUIRE(t.rows().size() == 1);
    const auto& row = t.rows()[0];
    CHECK(row[t.column_index("radiative_lifetime_us")] == doctest::Approx(2.03).epsilon(5e-3));
    CHECK(row[t.column_index("coherent_fraction")] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(row[t.column_index("f_num")] == 2);
    CHECK(row[t.column_index("f_den")] == 3);
    CHECK(t.metadata_value("config_hash")->size() == 16);
    CHECK(*t.metadata_value("scenario") == "nuclide-info");
    CHECK(*t.metadata_value("nuclide") == "Fe-57");
    CHECK(t.metadata_value("library_version") != nullptr);
    CHECK(t.metadata_value("wall_clock") != nullptr);
}

TEST_CASE("sweeps do not depend on the thread count")
{
    const auto r = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta_range": {"start": 0.5, "stop": 0.95, "count": 6}},
        "geometry": {"r_perp_nm": [0.001, 0.01]}})");
    REQUIRE(r.ok());
    const auto one = run_scenario(*r.config, {1, 1});
    const auto four = run_scenario(*r.config, {4, 1});
    REQUIRE(one.size() == four.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
        CHECK(csv_body(to_csv(one[k])) == csv_body(to_csv(four[k])));
        CHECK(parse_csv(to_csv(one[k])) == one[k]);
    }
    CHECK(table(one, "sweep").rows().size() == 12);
}

TEST_CASE("crystal yield emits orders and a total per velocity")
{
    const auto r = check(R"({"scenario": "crystal-yield", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": [0.9, 0.94]}, "geometry": {"r_min_nm": 0.004},
        "output": {"order_cap": 4}})");
    REQUIRE(r.ok());
    const auto tables = run_scenario(*r.config);
    const auto& t = table(tables, "yield");
    const auto n_col = t.column_index("n");
    const auto y_col = t.column_index("yield_per_layer_per_Z2");
    const auto tot_col = t.column_index("is_total");
    const auto b_col = t.column_index("beta");
    for (double beta : {0.9, 0.94}) {
        double sum = 0.0, total = -1.0;
        int orders = 0;
        for (const auto& row : t.rows()) {
            if (row[b_col] != beta)
                continue;
            if (row[tot_col] == 1.0) {
                total = row[y_col];
                CHECK(row[n_col] == 0.0);
            } else {
                sum += row[y_col];
                ++orders;
                CHECK(row[n_col] <= 4.0);
            }
        }
        CHECK(orders == 4);
        CHECK(total == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("empty grids never reach the runner and files land where named")
{
    const auto bad = check(R"({"scenario": "single-sweep", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": []}, "geometry": {"r_perp_nm": 0.001}})");
    CHECK_FALSE(bad.ok());

    const auto r = check(R"({"scenario": "array-pattern", "nuclide": "Fe-57",
        "probe": {"species": "electron", "beta": 0.94}, "output": {"path": "arr", "angular_resolution": 101}})");
    REQUIRE(r.ok());
    const auto dir = std::filesystem::temp_directory_path() / "spgamma_scenario_test";
    std::filesystem::remove_all(dir);
    const auto paths = write_tables(run_scenario(*r.config), *r.config, dir.string());
    REQUIRE(paths.size() == 2);
    CHECK(std::filesystem::path(paths[0]).filename() == "arr_pattern.csv");
    CHECK(std::filesystem::path(paths[1]).filename() == "arr_peaks.csv");
    const auto pattern = parse_csv(read(paths[0]));
    CHECK(pattern.rows().size() == 101);
    std::filesystem::remove_all(dir);
}
