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

#include "spgamma/spgamma.h"

#include "spgamma/brems.hpp"
#include "spgamma/crystal_sp.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/nuclide.hpp"
#include "spgamma/scenario.hpp"
#include "spgamma/single_nucleus.hpp"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

using namespace spgamma;

struct spg_registry {
    NuclideRegistry nuclides = NuclideRegistry::builtin();
    LatticeRegistry lattices = LatticeRegistry::builtin();
    std::vector<std::string> nuclide_names;
    std::vector<std::string> lattice_names;

    void refresh()
    {
        nuclide_names = nuclides.names();
        lattice_names = lattices.names();
    }
};

struct spg_config {
    ScenarioConfig config;
    std::string resolved;
};

struct spg_diagnostics {
    std::vector<std::string> paths;
    std::vector<std::string> messages;
};

struct spg_result {
    ScenarioConfig config;
    std::vector<ResultTable> tables;
    std::vector<std::string> csv;
    std::vector<std::string> paths;
};

namespace {

thread_local std::string g_last_error;

spg_status fail(spg_status status, const std::string& message)
{
    g_last_error = message;
    return status;
}

template <class F>
spg_status guarded(F&& body)
{
    try {
        g_last_error.clear();
        body();
        return SPG_OK;
    } catch (const ParseError& e) {
        return fail(SPG_ERR_PARSE, e.what());
    } catch (const ConvergenceError& e) {
        return fail(SPG_ERR_CONVERGENCE, e.what());
    } catch (const NotFoundError& e) {
        return fail(SPG_ERR_NOT_FOUND, e.what());
    } catch (const DomainError& e) {
        return fail(SPG_ERR_DOMAIN, e.what());
    } catch (const Error& e) {
        return fail(SPG_ERR_RUNTIME, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SPG_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SPG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SPG_ERR_INTERNAL, "unknown error");
    }
}

#define SPG_REQUIRE(cond)                                                                                       \
    do {                                                                                                        \
        if (!(cond))                                                                                            \
            return fail(SPG_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);                                  \
    } while (0)

Probe to_probe(const spg_probe& p) { return Probe{p.charge, p.rest_energy_eV, p.beta}; }

const char* at_or_null(const std::vector<std::string>& v, size_t i) { return i < v.size() ? v[i].c_str() : nullptr; }

} // namespace

extern "C" {

const char* spg_version(void) { return SPGAMMA_VERSION; }

const char* spg_status_name(spg_status status)
{
    switch (status) {
    case SPG_OK: return "ok";
    case SPG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SPG_ERR_DOMAIN: return "domain error";
    case SPG_ERR_CONVERGENCE: return "convergence error";
    case SPG_ERR_PARSE: return "parse error";
    case SPG_ERR_NOT_FOUND: return "not found";
    case SPG_ERR_VALIDATION: return "validation error";
    case SPG_ERR_RUNTIME: return "runtime error";
    case SPG_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* spg_last_error(void) { return g_last_error.c_str(); }

spg_status spg_registry_create_builtin(spg_registry** out)
{
    SPG_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<spg_registry>();
        r->refresh();
        *out = r.release();
    });
}

spg_status spg_registry_create(spg_registry** out)
{
    SPG_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<spg_registry>();
        if (const char* dir = std::getenv(SPG_DATA_DIR_ENV); dir && *dir) {
            const std::filesystem::path base(dir);
            if (std::filesystem::exists(base / "nuclides.dat"))
                r->nuclides.load_file((base / "nuclides.dat").string());
            if (std::filesystem::exists(base / "lattices.dat"))
                r->lattices.load_file((base / "lattices.dat").string());
        }
        r->refresh();
        *out = r.release();
    });
}

void spg_registry_destroy(spg_registry* registry) { delete registry; }

spg_status spg_registry_load_nuclides(spg_registry* registry, const char* path)
{
    SPG_REQUIRE(registry && path);
    return guarded([&] {
        NuclideRegistry copy = registry->nuclides;
        copy.load_file(path);
        registry->nuclides = std::move(copy);
        registry->refresh();
    });
}

spg_status spg_registry_load_lattices(spg_registry* registry, const char* path)
{
    SPG_REQUIRE(registry && path);
    return guarded([&] {
        LatticeRegistry copy = registry->lattices;
        copy.load_file(path);
        registry->lattices = std::move(copy);
        registry->refresh();
    });
}

size_t spg_registry_nuclide_count(const spg_registry* registry) { return registry ? registry->nuclide_names.size() : 0; }

const char* spg_registry_nuclide_name(const spg_registry* registry, size_t index)
{
    return registry ? at_or_null(registry->nuclide_names, index) : nullptr;
}

size_t spg_registry_lattice_count(const spg_registry* registry) { return registry ? registry->lattice_names.size() : 0; }

const char* spg_registry_lattice_name(const spg_registry* registry, size_t index)
{
    return registry ? at_or_null(registry->lattice_names, index) : nullptr;
}

spg_status spg_nuclide_get(const spg_registry* registry, const char* name, spg_nuclide_info* out)
{
    SPG_REQUIRE(registry && name && out);
    return guarded([&] {
        const NuclideRecord& rec = registry->nuclides.get(name);
        const Rational f = coherent_fraction(rec.j_g, rec.j_e);
        spg_nuclide_info info{};
        info.e0_keV = rec.e0_keV;
        info.lifetime_s = rec.lifetime_s;
        info.alpha_ic = rec.alpha_ic;
        info.j_g = rec.j_g.value();
        info.j_e = rec.j_e.value();
        info.branch_divisor = rec.branch_divisor;
        info.f_num = boost::multiprecision::numerator(f).convert_to<long long>();
        info.f_den = boost::multiprecision::denominator(f).convert_to<long long>();
        info.radiative_rate_per_s = radiative_rate(rec);
        info.wavelength_nm = rec.wavelength_nm();
        info.linewidth_eV = rec.linewidth_eV();
        *out = info;
    });
}

spg_status spg_lattice_get(const spg_registry* registry, const char* name, spg_lattice_info* out)
{
    SPG_REQUIRE(registry && name && out);
    return guarded([&] {
        const LatticeFilm film(registry->lattices.get(name));
        *out = spg_lattice_info{film.a_nm(),      film.b_par_nm().x,   film.b_par_nm().y,
                                film.b_z_nm(),    film.z_period_nm(),  film.stacking_period()};
    });
}

spg_status spg_coherent_yield(const spg_registry* registry, const char* nuclide, const spg_probe* probe,
                              double r_perp_nm, double* out)
{
    SPG_REQUIRE(registry && nuclide && probe && out);
    return guarded([&] { *out = coherent_yield(to_probe(*probe), registry->nuclides.get(nuclide), r_perp_nm); });
}

spg_status spg_layer_yield(const spg_registry* registry, const char* nuclide, const char* lattice,
                           const spg_probe* probe, double r_min_nm, int order_cap, double* out)
{
    SPG_REQUIRE(registry && nuclide && lattice && probe && out);
    return guarded([&] {
        if (order_cap < 0)
            throw DomainError("order_cap must be >= 0");
        LayerYieldOptions opt;
        opt.order_cap = order_cap;
        opt.profile_points = 1;
        const LatticeFilm film(registry->lattices.get(lattice));
        *out = layer_yield(to_probe(*probe), registry->nuclides.get(nuclide), film, CutoffPolicy{r_min_nm}, opt)
                   .per_layer_per_z2;
    });
}

spg_status spg_br_window_yield(const spg_probe* probe, int z_nucleus, double r_perp_nm, double center_eV,
                               double window_eV, double* out)
{
    SPG_REQUIRE(probe && out);
    return guarded([&] { *out = br_window_yield(to_probe(*probe), z_nucleus, r_perp_nm, center_eV, window_eV); });
}

spg_status spg_config_parse(const spg_registry* registry, const char* text, spg_config** out_config,
                            spg_diagnostics** out_diagnostics)
{
    SPG_REQUIRE(registry && text && out_config && out_diagnostics);
    *out_config = nullptr;
    *out_diagnostics = nullptr;
    bool rejected = false;
    const spg_status st = guarded([&] {
        ValidationResult v = validate_config(text, registry->nuclides, registry->lattices);
        auto diag = std::make_unique<spg_diagnostics>();
        for (const auto& issue : v.issues) {
            diag->paths.push_back(issue.path);
            diag->messages.push_back(issue.path.empty() ? issue.to_string() : issue.message);
        }
        if (v.ok()) {
            auto cfg = std::make_unique<spg_config>();
            cfg->config = std::move(*v.config);
            cfg->resolved = resolved_config_json(cfg->config);
            *out_config = cfg.release();
        } else {
            rejected = true;
        }
        *out_diagnostics = diag.release();
    });
    if (st != SPG_OK)
        return st;
    if (rejected)
        return fail(SPG_ERR_VALIDATION, "config rejected with " + std::to_string((*out_diagnostics)->messages.size())
                                            + " problem(s)");
    return SPG_OK;
}

void spg_config_destroy(spg_config* config) { delete config; }

const char* spg_config_resolved(const spg_config* config) { return config ? config->resolved.c_str() : nullptr; }

size_t spg_diagnostics_count(const spg_diagnostics* d) { return d ? d->messages.size() : 0; }

const char* spg_diagnostics_path(const spg_diagnostics* d, size_t index) { return d ? at_or_null(d->paths, index) : nullptr; }

const char* spg_diagnostics_message(const spg_diagnostics* d, size_t index)
{
    return d ? at_or_null(d->messages, index) : nullptr;
}

void spg_diagnostics_destroy(spg_diagnostics* diagnostics) { delete diagnostics; }

spg_status spg_run(const spg_config* config, int threads, uint64_t seed, spg_result** out)
{
    SPG_REQUIRE(config && out && threads >= 1);
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<spg_result>();
        r->config = config->config;
        r->tables = run_scenario(config->config, RunOptions{threads, seed});
        for (const auto& t : r->tables)
            r->csv.push_back(to_csv(t));
        *out = r.release();
    });
}

void spg_result_destroy(spg_result* result) { delete result; }

size_t spg_result_table_count(const spg_result* result) { return result ? result->tables.size() : 0; }

const char* spg_result_table_name(const spg_result* result, size_t index)
{
    return result && index < result->tables.size() ? result->tables[index].name().c_str() : nullptr;
}

const char* spg_result_table_csv(const spg_result* result, size_t index)
{
    return result ? at_or_null(result->csv, index) : nullptr;
}

spg_status spg_result_write(spg_result* result, const char* dir)
{
    SPG_REQUIRE(result && dir);
    return guarded([&] { result->paths = write_tables(result->tables, result->config, dir); });
}

size_t spg_result_path_count(const spg_result* result) { return result ? result->paths.size() : 0; }

const char* spg_result_path(const spg_result* result, size_t index)
{
    return result ? at_or_null(result->paths, index) : nullptr;
}

} // extern "C"
