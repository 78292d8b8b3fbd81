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

#ifndef SPGAMMA_SCENARIO_HPP
#define SPGAMMA_SCENARIO_HPP

// Declarative runs. A config is one JSON document:
//
//   {
//     "scenario": "crystal-yield",
//     "nuclide": "Fe-57",
//     "probe": {"charge": 26, "rest_energy_eV": 5.2e10, "beta": [0.9, 0.94]},
//     "geometry": {"lattice": "bcc100", "r_min_nm": [0.004, 0.002, 0.001]},
//     "output": {"path": "fig3"}
//   }
//
// See README.md for every field and its default.

#include "spgamma/brems.hpp"
#include "spgamma/crystal_sp.hpp"
#include "spgamma/nuclide.hpp"
#include "spgamma/result_table.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spgamma {

enum class ScenarioKind { nuclide_info, single_sweep, array_pattern, crystal_yield, brems_compare };

std::string_view scenario_name(ScenarioKind kind);

struct ConfigIssue {
    std::string path;    // dotted field path, empty for syntax errors
    std::string message;
    int line = 0;        // syntax errors only
    int column = 0;

    std::string to_string() const;
};

struct ProbeConfig {
    std::string species; // "electron", "proton" or empty for explicit charge/mass
    int charge = -1;
    double rest_energy_eV = 0.0;
    std::vector<double> betas;
};

struct PlaneCheckConfig {
    std::vector<std::pair<double, double>> directions; // (theta, phi) in rad
    int samples = 4000;
    int patch_sites = 41;
    bool matched_exclusion = true; // exclusion radius 2 exp(-gamma_E) R_min instead of R_min
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::nuclide_info;
    NuclideRecord nuclide;
    ProbeConfig probe;

    // single-sweep, brems-compare
    std::vector<double> r_perp_nm;
    int z_nucleus = 26;
    double window_eV = 1.0;
    BremsForm brems_form = BremsForm::first_order;
    int spectral_points = 201;
    double span_linewidths = 20.0;
    int time_points = 201;
    double time_span_lifetimes = 5.0;

    // array-pattern
    int n_nuclei = 10;
    double period_nm = 0.286;
    double standoff_nm = 0.01;

    // crystal-yield
    LatticePreset lattice;
    int n_layers = 1;
    std::vector<double> r_min_nm;      // empty when tilt_rad is used
    std::optional<double> tilt_rad;    // estimate R_min from the incidence angle
    int z_row = 26;
    CutoffShape cutoff = CutoffShape::hard;
    std::optional<PlaneCheckConfig> plane_check;

    // output
    std::string output_path;
    std::string format = "csv";
    int angular_resolution = 2001;
    int order_cap = 12;
    double angular_tolerance = 1e-8;
};

struct ValidationResult {
    std::optional<ScenarioConfig> config;
    std::vector<ConfigIssue> issues;

    bool ok() const noexcept { return config.has_value(); }
};

/// Parse and check a config, collecting every problem rather than the first.
ValidationResult validate_config(std::string_view text, const NuclideRegistry& nuclides,
                                 const LatticeRegistry& lattices);

/// The config with all defaults filled in, as canonical JSON.
std::string resolved_config_json(const ScenarioConfig& config);

struct RunOptions {
    int threads = 1;
    std::uint64_t seed = 1;
};

/// Tables for the scenario. Output is independent of options.threads.
std::vector<ResultTable> run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Write each table to <dir>/<config.output_path>_<table>.csv; returns the paths.
std::vector<std::string> write_tables(const std::vector<ResultTable>& tables, const ScenarioConfig& config,
                                      const std::string& dir);

} // namespace spgamma

#endif
