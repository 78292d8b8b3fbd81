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

// spgamma command-line front end. Talks to the library through the C API only.
//
//   spgamma run <config> [--out dir] [--threads k] [--seed s]
//   spgamma validate <config>
//   spgamma list-nuclides
//   spgamma list-lattices
//
// Exit codes: 0 success, 1 invalid config, 2 runtime failure.

#include "spgamma/spgamma.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct RegistryDeleter {
    void operator()(spg_registry* r) const { spg_registry_destroy(r); }
};
struct ConfigDeleter {
    void operator()(spg_config* c) const { spg_config_destroy(c); }
};
struct DiagnosticsDeleter {
    void operator()(spg_diagnostics* d) const { spg_diagnostics_destroy(d); }
};
struct ResultDeleter {
    void operator()(spg_result* r) const { spg_result_destroy(r); }
};

using RegistryPtr = std::unique_ptr<spg_registry, RegistryDeleter>;
using ConfigPtr = std::unique_ptr<spg_config, ConfigDeleter>;

int report(spg_status st, const char* what)
{
    std::fprintf(stderr, "spgamma: %s: %s: %s\n", what, spg_status_name(st), spg_last_error());
    return st == SPG_ERR_VALIDATION ? kExitInvalid : kExitRuntime;
}

bool open_registry(RegistryPtr& out, int& code)
{
    spg_registry* raw = nullptr;
    const spg_status st = spg_registry_create(&raw);
    if (st != SPG_OK) {
        code = report(st, "loading data files");
        return false;
    }
    out.reset(raw);
    return true;
}

// Returns the config handle, or sets code and returns null after printing
// every diagnostic.
ConfigPtr load_config(const spg_registry* reg, const std::string& path, int& code)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "spgamma: cannot read config '%s'\n", path.c_str());
        code = kExitInvalid;
        return nullptr;
    }
    std::ostringstream text;
    text << in.rdbuf();

    spg_config* cfg = nullptr;
    spg_diagnostics* raw_diag = nullptr;
    const spg_status st = spg_config_parse(reg, text.str().c_str(), &cfg, &raw_diag);
    std::unique_ptr<spg_diagnostics, DiagnosticsDeleter> diag(raw_diag);
    if (st == SPG_ERR_VALIDATION) {
        for (size_t i = 0; i < spg_diagnostics_count(diag.get()); ++i) {
            const std::string field = spg_diagnostics_path(diag.get(), i);
            std::fprintf(stderr, "%s: %s%s\n", path.c_str(), field.empty() ? "" : (field + ": ").c_str(),
                         spg_diagnostics_message(diag.get(), i));
        }
        code = kExitInvalid;
        return nullptr;
    }
    if (st != SPG_OK) {
        code = report(st, "reading config");
        return nullptr;
    }
    return ConfigPtr(cfg);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads, std::uint64_t seed)
{
    int code = kExitOk;
    RegistryPtr reg;
    if (!open_registry(reg, code))
        return code;
    ConfigPtr cfg = load_config(reg.get(), config_path, code);
    if (!cfg)
        return code;

    spg_result* raw = nullptr;
    spg_status st = spg_run(cfg.get(), threads, seed, &raw);
    if (st != SPG_OK)
        return report(st, "run");
    std::unique_ptr<spg_result, ResultDeleter> result(raw);
    st = spg_result_write(result.get(), out_dir.c_str());
    if (st != SPG_OK)
        return report(st, "writing results");
    for (size_t i = 0; i < spg_result_path_count(result.get()); ++i)
        std::printf("%s\n", spg_result_path(result.get(), i));
    return kExitOk;
}

int cmd_validate(const std::string& config_path)
{
    int code = kExitOk;
    RegistryPtr reg;
    if (!open_registry(reg, code))
        return code;
    ConfigPtr cfg = load_config(reg.get(), config_path, code);
    if (!cfg)
        return code;
    std::printf("%s\n", spg_config_resolved(cfg.get()));
    return kExitOk;
}

int cmd_list_nuclides()
{
    int code = kExitOk;
    RegistryPtr reg;
    if (!open_registry(reg, code))
        return code;
    std::printf("%-10s %12s %12s %10s %6s %6s %6s %14s\n", "name", "E0[keV]", "tau[ns]", "alpha_IC", "j_g",
                "j_e", "f", "1/kappa_r[s]");
    for (size_t i = 0; i < spg_registry_nuclide_count(reg.get()); ++i) {
        const char* name = spg_registry_nuclide_name(reg.get(), i);
        spg_nuclide_info info{};
        if (const spg_status st = spg_nuclide_get(reg.get(), name, &info); st != SPG_OK)
            return report(st, name);
        const std::string f = std::to_string(info.f_num) + "/" + std::to_string(info.f_den);
        std::printf("%-10s %12.4f %12.4g %10.4g %6.1f %6.1f %6s %14.4g\n", name, info.e0_keV, info.lifetime_s * 1e9,
                    info.alpha_ic, info.j_g, info.j_e, f.c_str(), 1.0 / info.radiative_rate_per_s);
    }
    return kExitOk;
}

int cmd_list_lattices()
{
    int code = kExitOk;
    RegistryPtr reg;
    if (!open_registry(reg, code))
        return code;
    std::printf("%-10s %10s %10s %10s %10s %10s %3s\n", "preset", "a[nm]", "b_par_x", "b_par_y", "b_z[nm]", "d[nm]",
                "p");
    for (size_t i = 0; i < spg_registry_lattice_count(reg.get()); ++i) {
        const char* name = spg_registry_lattice_name(reg.get(), i);
        spg_lattice_info info{};
        if (const spg_status st = spg_lattice_get(reg.get(), name, &info); st != SPG_OK)
            return report(st, name);
        std::printf("%-10s %10.6g %10.6g %10.6g %10.6g %10.6g %3d\n", name, info.a_nm, info.b_par_x_nm,
                    info.b_par_y_nm, info.b_z_nm, info.d_nm, info.stacking_period);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coherent Smith-Purcell gamma-ray emission from resonant nuclei"};
    app.set_version_flag("--version", std::string(spg_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "Run a scenario and write CSV tables");
    run->add_option("config", config_path, "Scenario config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
    run->add_option("--seed", seed, "Seed for Monte-Carlo checks")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults applied");
    validate->add_option("config", config_path, "Scenario config (JSON)")->required();

    auto* list_nuclides = app.add_subcommand("list-nuclides", "Show the nuclide registry");
    auto* list_lattices = app.add_subcommand("list-lattices", "Show the lattice presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    if (run->parsed())
        return cmd_run(config_path, out_dir, threads, seed);
    if (validate->parsed())
        return cmd_validate(config_path);
    if (list_nuclides->parsed())
        return cmd_list_nuclides();
    if (list_lattices->parsed())
        return cmd_list_lattices();
    return kExitInvalid;
}
