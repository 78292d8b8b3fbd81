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

#include "spgamma/scenario.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/finite_array.hpp"
#include "spgamma/probe.hpp"
#include "spgamma/single_nucleus.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

namespace spgamma {

using json = nlohmann::json;

namespace {

constexpr std::pair<ScenarioKind, std::string_view> kKinds[] = {
    {ScenarioKind::nuclide_info, "nuclide-info"},   {ScenarioKind::single_sweep, "single-sweep"},
    {ScenarioKind::array_pattern, "array-pattern"}, {ScenarioKind::crystal_yield, "crystal-yield"},
    {ScenarioKind::brems_compare, "brems-compare"},
};

std::string join(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string join_names(const std::vector<std::string>& names)
{
    std::string out;
    for (const auto& n : names)
        out += (out.empty() ? "" : ", ") + n;
    return out;
}

// Accumulates issues while reading one JSON document.
class Reader {
public:
    std::vector<ConfigIssue> issues;

    void error(const std::string& path, std::string message) { issues.push_back({path, std::move(message)}); }

    const json* object(const json& parent, const std::string& path, const char* key, bool required)
    {
        const json* v = member(parent, key);
        if (!v) {
            if (required)
                error(join(path, key), "required field missing");
            return nullptr;
        }
        if (!v->is_object()) {
            error(join(path, key), "expected an object");
            return nullptr;
        }
        return v;
    }

    void allow_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed)
    {
        for (const auto& item : obj.items())
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                error(join(path, item.key()), "unknown field");
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key)
    {
        const json* v = member(obj, key);
        if (!v)
            return std::nullopt;
        if (!v->is_number() || !std::isfinite(v->get<double>())) {
            error(join(path, key), "expected a finite number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    double positive(const json& obj, const std::string& path, const char* key, double fallback)
    {
        const auto v = number(obj, path, key);
        if (!v)
            return fallback;
        if (!(*v > 0.0))
            error(join(path, key), std::string(key) + " must be > 0");
        return *v;
    }

    std::optional<int> integer(const json& obj, const std::string& path, const char* key)
    {
        const json* v = member(obj, key);
        if (!v)
            return std::nullopt;
        if (!v->is_number_integer()) {
            error(join(path, key), "expected an integer");
            return std::nullopt;
        }
        const auto x = v->get<long long>();
        if (x < -1000000000LL || x > 1000000000LL) {
            error(join(path, key), "integer out of range");
            return std::nullopt;
        }
        return int(x);
    }

    int integer_at_least(const json& obj, const std::string& path, const char* key, int lo, int fallback)
    {
        const auto v = integer(obj, path, key);
        if (!v)
            return fallback;
        if (*v < lo)
            error(join(path, key), std::string(key) + " must be >= " + std::to_string(lo));
        return *v;
    }

    std::optional<std::string> string(const json& obj, const std::string& path, const char* key)
    {
        const json* v = member(obj, key);
        if (!v)
            return std::nullopt;
        if (!v->is_string()) {
            error(join(path, key), "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    // A scalar or a non-empty, strictly monotone list of finite numbers.
    std::vector<double> grid(const json& obj, const std::string& path, const char* key,
                             const std::function<std::optional<std::string>(double)>& check)
    {
        const json* v = member(obj, key);
        const std::string p = join(path, key);
        std::vector<double> out;
        if (!v)
            return out;
        auto accept = [&](const json& x, const std::string& where) {
            if (!x.is_number() || !std::isfinite(x.get<double>())) {
                error(where, "expected a finite number");
                return false;
            }
            if (auto msg = check(x.get<double>())) {
                error(where, *msg);
                return false;
            }
            out.push_back(x.get<double>());
            return true;
        };
        if (v->is_array()) {
            if (v->empty()) {
                error(p, std::string(key) + " grid is empty");
                return out;
            }
            bool all_ok = true;
            for (std::size_t i = 0; i < v->size(); ++i)
                all_ok = accept((*v)[i], indexed(p, i)) && all_ok;
            if (all_ok)
                check_monotone(out, p);
        } else {
            accept(*v, p);
        }
        return out;
    }

    void check_monotone(const std::vector<double>& xs, const std::string& path)
    {
        if (xs.size() < 2)
            return;
        const bool up = xs[1] > xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (up ? !(xs[i] > xs[i - 1]) : !(xs[i] < xs[i - 1])) {
                error(path, "grid must be strictly monotone");
                return;
            }
    }

    static const json* member(const json& obj, const char* key)
    {
        const auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }
};

std::optional<std::string> beta_check(double b)
{
    if (!(b < 1.0))
        return "beta must be < 1";
    if (!(b > 0.0))
        return "beta must be > 0";
    return std::nullopt;
}

std::optional<std::string> positive_check(double x)
{
    if (!(x > 0.0))
        return "must be > 0";
    return std::nullopt;
}

void read_probe(Reader& r, const json& root, ScenarioConfig& cfg)
{
    const std::string path = "probe";
    const json* p = r.object(root, "", "probe", true);
    if (!p)
        return;
    r.allow_keys(*p, path, {"species", "charge", "rest_energy_eV", "beta", "beta_range", "kinetic_energy_eV"});

    ProbeConfig& pc = cfg.probe;
    const auto species = r.string(*p, path, "species");
    const auto charge = r.integer(*p, path, "charge");
    const auto rest = r.number(*p, path, "rest_energy_eV");
    if (species) {
        if (charge || rest)
            r.error(path, "give either species or charge and rest_energy_eV, not both");
        if (*species == "electron") {
            pc.species = "electron";
            pc.charge = -1;
            pc.rest_energy_eV = constants::electron_mass_eV;
        } else if (*species == "proton") {
            pc.species = "proton";
            pc.charge = 1;
            pc.rest_energy_eV = constants::proton_mass_eV;
        } else {
            r.error(join(path, "species"), "unknown species '" + *species + "' (available: electron, proton)");
        }
    } else {
        if (!charge)
            r.error(join(path, "charge"), "required field missing (or give species)");
        else if (*charge == 0)
            r.error(join(path, "charge"), "charge must be nonzero");
        else
            pc.charge = *charge;
        if (!rest)
            r.error(join(path, "rest_energy_eV"), "required field missing (or give species)");
        else if (!(*rest > 0.0))
            r.error(join(path, "rest_energy_eV"), "rest_energy_eV must be > 0");
        else
            pc.rest_energy_eV = *rest;
    }

    const int given = int(p->contains("beta")) + int(p->contains("beta_range")) + int(p->contains("kinetic_energy_eV"));
    if (given != 1) {
        r.error(path, given == 0 ? "one of beta, beta_range or kinetic_energy_eV is required"
                                 : "give only one of beta, beta_range or kinetic_energy_eV");
        return;
    }
    if (p->contains("beta")) {
        pc.betas = r.grid(*p, path, "beta", beta_check);
    } else if (const json* range = r.object(*p, path, "beta_range", false)) {
        const std::string rp = join(path, "beta_range");
        r.allow_keys(*range, rp, {"start", "stop", "count"});
        const auto start = r.number(*range, rp, "start");
        const auto stop = r.number(*range, rp, "stop");
        const auto count = r.integer(*range, rp, "count");
        if (!start || !stop || !count) {
            r.error(rp, "start, stop and count are required");
            return;
        }
        if (*count < 1) {
            r.error(join(rp, "count"), "beta grid is empty");
            return;
        }
        for (const auto& [key, value] : {std::pair{"start", *start}, std::pair{"stop", *stop}})
            if (auto msg = beta_check(value)) {
                r.error(join(rp, key), *msg);
                return;
            }
        if (*count == 1) {
            pc.betas = {*start};
        } else {
            for (int i = 0; i < *count; ++i)
                pc.betas.push_back(*start + (*stop - *start) * i / (*count - 1));
            r.check_monotone(pc.betas, rp);
        }
    } else if (p->contains("kinetic_energy_eV")) {
        const auto energies = r.grid(*p, path, "kinetic_energy_eV", positive_check);
        if (pc.rest_energy_eV > 0.0)
            for (double e : energies)
                pc.betas.push_back(beta_from_kinetic_energy(e, pc.rest_energy_eV));
        if (!pc.betas.empty())
            r.check_monotone(pc.betas, join(path, "kinetic_energy_eV"));
    }
}

void read_brems_fields(Reader& r, const json& g, const std::string& path, ScenarioConfig& cfg)
{
    cfg.z_nucleus = r.integer_at_least(g, path, "z_nucleus", 1, cfg.z_nucleus);
    cfg.window_eV = r.positive(g, path, "window_eV", cfg.window_eV);
    if (const auto form = r.string(g, path, "brems_form")) {
        if (*form == "first_order")
            cfg.brems_form = BremsForm::first_order;
        else if (*form == "as_printed")
            cfg.brems_form = BremsForm::as_printed;
        else
            r.error(join(path, "brems_form"), "expected first_order or as_printed");
    }
}

void read_geometry(Reader& r, const json& root, ScenarioConfig& cfg, const LatticeRegistry& lattices)
{
    const std::string path = "geometry";
    const bool required = cfg.kind == ScenarioKind::single_sweep || cfg.kind == ScenarioKind::brems_compare
        || cfg.kind == ScenarioKind::crystal_yield;
    const json empty = json::object();
    const json* g = r.object(root, "", "geometry", required);
    if (!g) {
        if (required)
            return;
        g = &empty;
    }

    switch (cfg.kind) {
    case ScenarioKind::nuclide_info:
        r.allow_keys(*g, path, {});
        break;
    case ScenarioKind::single_sweep:
        r.allow_keys(*g, path, {"r_perp_nm", "z_nucleus", "window_eV", "brems_form"});
        if (!g->contains("r_perp_nm"))
            r.error(join(path, "r_perp_nm"), "required field missing");
        cfg.r_perp_nm = r.grid(*g, path, "r_perp_nm", positive_check);
        read_brems_fields(r, *g, path, cfg);
        break;
    case ScenarioKind::brems_compare:
        r.allow_keys(*g, path,
                     {"r_perp_nm", "z_nucleus", "window_eV", "brems_form", "spectral_points", "span_linewidths",
                      "time_points", "time_span_lifetimes"});
        if (const auto rp = r.number(*g, path, "r_perp_nm")) {
            if (*rp > 0.0)
                cfg.r_perp_nm = {*rp};
            else
                r.error(join(path, "r_perp_nm"), "r_perp_nm must be > 0");
        } else if (!g->contains("r_perp_nm")) {
            r.error(join(path, "r_perp_nm"), "required field missing");
        }
        read_brems_fields(r, *g, path, cfg);
        cfg.spectral_points = r.integer_at_least(*g, path, "spectral_points", 3, cfg.spectral_points);
        cfg.span_linewidths = r.positive(*g, path, "span_linewidths", cfg.span_linewidths);
        cfg.time_points = r.integer_at_least(*g, path, "time_points", 2, cfg.time_points);
        cfg.time_span_lifetimes = r.positive(*g, path, "time_span_lifetimes", cfg.time_span_lifetimes);
        break;
    case ScenarioKind::array_pattern:
        r.allow_keys(*g, path, {"n_nuclei", "period_nm", "standoff_nm"});
        cfg.n_nuclei = r.integer_at_least(*g, path, "n_nuclei", 2, cfg.n_nuclei);
        cfg.period_nm = r.positive(*g, path, "period_nm", cfg.period_nm);
        cfg.standoff_nm = r.positive(*g, path, "standoff_nm", cfg.standoff_nm);
        break;
    case ScenarioKind::crystal_yield: {
        r.allow_keys(*g, path, {"lattice", "n_layers", "r_min_nm", "tilt_rad", "z_row", "cutoff", "plane_check"});
        const std::string name = r.string(*g, path, "lattice").value_or("bcc100");
        if (const auto* preset = lattices.find(name))
            cfg.lattice = *preset;
        else
            r.error(join(path, "lattice"),
                    "unknown lattice preset '" + name + "' (available: " + join_names(lattices.names()) + ")");
        cfg.n_layers = r.integer_at_least(*g, path, "n_layers", 1, cfg.n_layers);
        cfg.z_row = r.integer_at_least(*g, path, "z_row", 1, cfg.z_row);
        const bool has_rmin = g->contains("r_min_nm");
        const bool has_tilt = g->contains("tilt_rad");
        if (has_rmin == has_tilt) {
            r.error(path, "give exactly one of r_min_nm or tilt_rad");
        } else if (has_rmin) {
            cfg.r_min_nm = r.grid(*g, path, "r_min_nm", [](double x) -> std::optional<std::string> {
                if (!(x > 0.0))
                    return "r_min must be > 0";
                return std::nullopt;
            });
        } else if (const auto tilt = r.number(*g, path, "tilt_rad")) {
            if (!(*tilt > 0.0 && *tilt < 0.2))
                r.error(join(path, "tilt_rad"), "tilt_rad must lie in (0, 0.2)");
            cfg.tilt_rad = *tilt;
        }
        if (const auto cut = r.string(*g, path, "cutoff")) {
            if (*cut == "hard")
                cfg.cutoff = CutoffShape::hard;
            else if (*cut == "smooth")
                cfg.cutoff = CutoffShape::smooth;
            else
                r.error(join(path, "cutoff"), "expected hard or smooth");
        }
        if (const json* pc = r.object(*g, path, "plane_check", false)) {
            const std::string pp = join(path, "plane_check");
            r.allow_keys(*pc, pp, {"directions", "samples", "patch_sites", "exclusion"});
            PlaneCheckConfig check;
            check.directions = {{0.7, 0.3}, {1.2, 1.0}, {2.0, 2.5}};
            if (const json* dirs = Reader::member(*pc, "directions")) {
                check.directions.clear();
                const std::string dp = join(pp, "directions");
                if (!dirs->is_array() || dirs->empty())
                    r.error(dp, "expected a non-empty list of [theta, phi] pairs");
                else
                    for (std::size_t i = 0; i < dirs->size(); ++i) {
                        const json& d = (*dirs)[i];
                        if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number()) {
                            r.error(indexed(dp, i), "expected [theta, phi]");
                            continue;
                        }
                        const double th = d[0].get<double>();
                        const double ph = d[1].get<double>();
                        if (!(th > 0.0 && th < constants::pi) || !std::isfinite(ph))
                            r.error(indexed(dp, i), "theta must lie in (0, pi)");
                        check.directions.emplace_back(th, ph);
                    }
            }
            check.samples = r.integer_at_least(*pc, pp, "samples", 16, check.samples);
            check.patch_sites = r.integer_at_least(*pc, pp, "patch_sites", 1, check.patch_sites);
            if (check.patch_sites % 2 == 0)
                r.error(join(pp, "patch_sites"), "patch_sites must be odd");
            if (const auto ex = r.string(*pc, pp, "exclusion")) {
                if (*ex == "matched")
                    check.matched_exclusion = true;
                else if (*ex == "r_min")
                    check.matched_exclusion = false;
                else
                    r.error(join(pp, "exclusion"), "expected matched or r_min");
            }
            cfg.plane_check = check;
        }
        break;
    }
    }
}

void read_output(Reader& r, const json& root, ScenarioConfig& cfg)
{
    const std::string path = "output";
    cfg.output_path = std::string(scenario_name(cfg.kind));
    const json* o = r.object(root, "", "output", false);
    if (!o)
        return;
    r.allow_keys(*o, path, {"path", "format", "angular_resolution", "order_cap", "angular_tolerance"});
    if (const auto p = r.string(*o, path, "path")) {
        if (p->empty() || p->find_first_of("/\\") != std::string::npos || *p == "." || *p == "..")
            r.error(join(path, "path"), "path must be a plain file stem without directories");
        else
            cfg.output_path = *p;
    }
    if (const auto f = r.string(*o, path, "format")) {
        if (*f != "csv")
            r.error(join(path, "format"), "only csv is supported");
    }
    cfg.angular_resolution = r.integer_at_least(*o, path, "angular_resolution", 3, cfg.angular_resolution);
    cfg.order_cap = r.integer_at_least(*o, path, "order_cap", 1, cfg.order_cap);
    if (const auto tol = r.number(*o, path, "angular_tolerance")) {
        if (!(*tol > 0.0 && *tol <= 1e-2))
            r.error(join(path, "angular_tolerance"), "angular_tolerance must lie in (0, 1e-2]");
        else
            cfg.angular_tolerance = *tol;
    }
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte)
{
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

} // namespace

std::string_view scenario_name(ScenarioKind kind)
{
    for (const auto& [k, name] : kKinds)
        if (k == kind)
            return name;
    return "unknown";
}

std::string ConfigIssue::to_string() const
{
    if (line > 0)
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    return (path.empty() ? std::string("config") : path) + ": " + message;
}

ValidationResult validate_config(std::string_view text, const NuclideRegistry& nuclides,
                                 const LatticeRegistry& lattices)
{
    ValidationResult result;
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        // Keep the parser's explanation after its own "parse error at ...: " prefix.
        std::string msg = e.what();
        if (const auto pos = msg.find("syntax error"); pos != std::string::npos)
            msg = msg.substr(pos);
        result.issues.push_back({"", msg, line, column});
        return result;
    }
    if (!root.is_object()) {
        result.issues.push_back({"", "config must be a JSON object"});
        return result;
    }

    Reader r;
    ScenarioConfig cfg;
    r.allow_keys(root, "", {"scenario", "nuclide", "probe", "geometry", "output", "description"});
    if (const auto d = Reader::member(root, "description"); d && !d->is_string())
        r.error("description", "expected a string");

    bool kind_ok = false;
    if (const auto s = r.string(root, "", "scenario")) {
        for (const auto& [k, name] : kKinds)
            if (name == *s) {
                cfg.kind = k;
                kind_ok = true;
            }
        if (!kind_ok) {
            std::vector<std::string> names;
            for (const auto& [k, name] : kKinds)
                names.emplace_back(name);
            r.error("scenario", "unknown scenario '" + *s + "' (available: " + join_names(names) + ")");
        }
    } else if (!root.contains("scenario")) {
        r.error("scenario", "required field missing");
    }

    if (const auto n = r.string(root, "", "nuclide")) {
        if (const auto* rec = nuclides.find(*n))
            cfg.nuclide = *rec;
        else
            r.error("nuclide", "unknown nuclide '" + *n + "' (available: " + join_names(nuclides.names()) + ")");
    } else if (!root.contains("nuclide")) {
        r.error("nuclide", "required field missing");
    }

    if (kind_ok) {
        if (cfg.kind == ScenarioKind::nuclide_info) {
            if (root.contains("probe"))
                r.error("probe", "not used by nuclide-info");
        } else {
            read_probe(r, root, cfg);
        }
        read_geometry(r, root, cfg, lattices);
        read_output(r, root, cfg);
    }

    result.issues = std::move(r.issues);
    if (result.issues.empty())
        result.config = std::move(cfg);
    return result;
}

std::string resolved_config_json(const ScenarioConfig& cfg)
{
    json j;
    j["scenario"] = scenario_name(cfg.kind);
    j["nuclide"] = cfg.nuclide.name;
    if (cfg.kind != ScenarioKind::nuclide_info) {
        json p;
        if (!cfg.probe.species.empty()) {
            p["species"] = cfg.probe.species;
        } else {
            p["charge"] = cfg.probe.charge;
            p["rest_energy_eV"] = cfg.probe.rest_energy_eV;
        }
        p["beta"] = cfg.probe.betas;
        j["probe"] = p;
    }
    json g = json::object();
    const char* form = cfg.brems_form == BremsForm::first_order ? "first_order" : "as_printed";
    switch (cfg.kind) {
    case ScenarioKind::nuclide_info:
        break;
    case ScenarioKind::single_sweep:
        g = {{"r_perp_nm", cfg.r_perp_nm}, {"z_nucleus", cfg.z_nucleus}, {"window_eV", cfg.window_eV},
             {"brems_form", form}};
        break;
    case ScenarioKind::brems_compare:
        g = {{"r_perp_nm", cfg.r_perp_nm.at(0)},
             {"z_nucleus", cfg.z_nucleus},
             {"window_eV", cfg.window_eV},
             {"brems_form", form},
             {"spectral_points", cfg.spectral_points},
             {"span_linewidths", cfg.span_linewidths},
             {"time_points", cfg.time_points},
             {"time_span_lifetimes", cfg.time_span_lifetimes}};
        break;
    case ScenarioKind::array_pattern:
        g = {{"n_nuclei", cfg.n_nuclei}, {"period_nm", cfg.period_nm}, {"standoff_nm", cfg.standoff_nm}};
        break;
    case ScenarioKind::crystal_yield:
        g = {{"lattice", cfg.lattice.name},
             {"n_layers", cfg.n_layers},
             {"z_row", cfg.z_row},
             {"cutoff", cfg.cutoff == CutoffShape::hard ? "hard" : "smooth"}};
        if (cfg.tilt_rad)
            g["tilt_rad"] = *cfg.tilt_rad;
        else
            g["r_min_nm"] = cfg.r_min_nm;
        if (cfg.plane_check) {
            json dirs = json::array();
            for (const auto& [th, ph] : cfg.plane_check->directions)
                dirs.push_back({th, ph});
            g["plane_check"] = {{"directions", dirs},
                                {"samples", cfg.plane_check->samples},
                                {"patch_sites", cfg.plane_check->patch_sites},
                                {"exclusion", cfg.plane_check->matched_exclusion ? "matched" : "r_min"}};
        }
        break;
    }
    if (!g.empty())
        j["geometry"] = g;
    j["output"] = {{"path", cfg.output_path},
                   {"format", cfg.format},
                   {"angular_resolution", cfg.angular_resolution},
                   {"order_cap", cfg.order_cap},
                   {"angular_tolerance", cfg.angular_tolerance}};
    return j.dump(2);
}

namespace {

// Runs fn(0..count-1) on up to `threads` workers; results come back in index
// order whatever the completion order. The first failure (by index) is rethrown.
template <class T>
std::vector<T> ordered_parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& fn)
{
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_workers = std::min<std::size_t>(std::max(1, threads), std::max<std::size_t>(1, count));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_workers; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

using Rows = std::vector<std::vector<double>>;

Column col(std::string name, std::string unit = "dimensionless") { return {std::move(name), std::move(unit)}; }

Probe make_probe(const ScenarioConfig& cfg, double beta)
{
    Probe p{cfg.probe.charge, cfg.probe.rest_energy_eV, beta};
    p.validate();
    return p;
}

void append(ResultTable& t, Rows rows)
{
    for (auto& r : rows)
        t.add_row(std::move(r));
}

ResultTable nuclide_info(const ScenarioConfig& cfg)
{
    const NuclideRecord& rec = cfg.nuclide;
    const Rational f = coherent_fraction(rec.j_g, rec.j_e);
    const double kr = radiative_rate(rec);
    ResultTable t("nuclide", {col("e0_keV", "keV"), col("lifetime_ns", "ns"), col("alpha_ic"), col("j_g", "hbar"),
                              col("j_e", "hbar"), col("f_num"), col("f_den"), col("coherent_fraction"),
                              col("branch_divisor"), col("radiative_rate", "1/s"),
                              col("radiative_lifetime_us", "us"), col("wavelength_nm", "nm"),
                              col("linewidth_eV", "eV")});
    t.add_row({rec.e0_keV, rec.lifetime_s * 1e9, rec.alpha_ic, rec.j_g.value(), rec.j_e.value(),
               boost::multiprecision::numerator(f).convert_to<double>(),
               boost::multiprecision::denominator(f).convert_to<double>(), f.convert_to<double>(),
               rec.branch_divisor, kr, 1e6 / kr, rec.wavelength_nm(), rec.linewidth_eV()});
    return t;
}

ResultTable single_sweep(const ScenarioConfig& cfg, const RunOptions& opt)
{
    ResultTable t("sweep", {col("beta"), col("gamma"), col("r_perp_nm", "nm"), col("coherent_yield"),
                            col("br_window_yield")});
    const std::size_t nr = cfg.r_perp_nm.size();
    const double e0 = cfg.nuclide.e0_keV * 1e3;
    auto rows = ordered_parallel_map<std::vector<double>>(
        cfg.probe.betas.size() * nr, opt.threads, [&](std::size_t k) {
            const Probe probe = make_probe(cfg, cfg.probe.betas[k / nr]);
            const double r = cfg.r_perp_nm[k % nr];
            return std::vector<double>{probe.beta, probe.gamma(), r, coherent_yield(probe, cfg.nuclide, r),
                                       br_window_yield(probe, cfg.z_nucleus, r, e0, cfg.window_eV, cfg.brems_form)};
        });
    append(t, std::move(rows));
    return t;
}

std::vector<ResultTable> array_pattern(const ScenarioConfig& cfg, const RunOptions& opt)
{
    ResultTable pattern("pattern", {col("beta"), col("cos_theta"), col("theta_rad", "rad"), col("density", "1/sr")});
    ResultTable peaks("peaks", {col("beta"), col("cos_theta_peak"), col("density", "1/sr"), col("nearest_order"),
                                col("cos_theta_predicted")});
    const auto cos_grid = uniform_cos_grid(cfg.angular_resolution);
    struct Out {
        Rows pattern;
        Rows peaks;
    };
    auto outs = ordered_parallel_map<Out>(cfg.probe.betas.size(), opt.threads, [&](std::size_t k) {
        const Probe probe = make_probe(cfg, cfg.probe.betas[k]);
        const AngularGrid grid =
            linear_array_pattern(probe, cfg.nuclide, cfg.n_nuclei, cfg.period_nm, cfg.standoff_nm, cos_grid);
        Out o;
        for (std::size_t i = 0; i < grid.thetas.size(); ++i)
            o.pattern.push_back({probe.beta, cos_grid[i], grid.thetas[i], grid.values[i]});
        const auto orders = sp_angles(probe.beta, cfg.period_nm, cfg.nuclide.wavelength_nm());
        for (std::size_t i : principal_peaks(grid.values, 0.1)) {
            double best_n = 0.0;
            double best_c = 0.0;
            double best_d = INFINITY;
            for (const auto& ord : orders)
                if (std::abs(ord.cos_theta - cos_grid[i]) < best_d) {
                    best_d = std::abs(ord.cos_theta - cos_grid[i]);
                    best_n = ord.n;
                    best_c = ord.cos_theta;
                }
            o.peaks.push_back({probe.beta, cos_grid[i], grid.values[i], best_n, best_c});
        }
        return o;
    });
    for (auto& o : outs) {
        append(pattern, std::move(o.pattern));
        append(peaks, std::move(o.peaks));
    }
    return {pattern, peaks};
}

struct RMinChoice {
    double r_min_nm;
    bool clamped;
};

std::vector<RMinChoice> r_min_for(const ScenarioConfig& cfg, const Probe& probe)
{
    std::vector<RMinChoice> out;
    if (cfg.tilt_rad) {
        const auto est = estimate_r_min(*cfg.tilt_rad, probe.kinetic_energy_eV(), cfg.z_row, cfg.lattice.a_nm);
        out.push_back({est.r_min_nm, est.clamped});
    } else {
        for (double r : cfg.r_min_nm)
            out.push_back({r, false});
    }
    return out;
}

std::vector<ResultTable> crystal_yield(const ScenarioConfig& cfg, const RunOptions& opt)
{
    ResultTable t("yield", {col("beta"), col("r_min_nm", "nm"), col("r_min_clamped"), col("n"), col("cos_theta"),
                            col("yield_per_layer_per_Z2"), col("yield_per_ion"), col("is_total")});
    const LatticeFilm film(cfg.lattice, cfg.n_layers);
    const std::size_t per_beta = cfg.tilt_rad ? 1 : cfg.r_min_nm.size();
    LayerYieldOptions ly;
    ly.order_cap = cfg.order_cap;
    ly.profile_points = 1;
    ly.phi_quadrature.rel_tol = cfg.angular_tolerance;

    auto rows = ordered_parallel_map<Rows>(cfg.probe.betas.size() * per_beta, opt.threads, [&](std::size_t k) {
        const Probe probe = make_probe(cfg, cfg.probe.betas[k / per_beta]);
        const RMinChoice rm = r_min_for(cfg, probe)[k % per_beta];
        const CutoffPolicy policy{rm.r_min_nm, cfg.cutoff};
        const LayerYield y = layer_yield(probe, cfg.nuclide, film, policy, ly);
        const double z2 = double(probe.z_charge) * probe.z_charge;
        const double per_ion = z2 * cfg.n_layers;
        Rows out;
        for (const auto& cone : y.cones)
            out.push_back({probe.beta, rm.r_min_nm, double(rm.clamped), double(cone.n), cone.cos_theta,
                           cone.weight / z2, cone.weight * cfg.n_layers, 0.0});
        out.push_back({probe.beta, rm.r_min_nm, double(rm.clamped), 0.0, 0.0, y.per_layer_per_z2,
                       y.per_layer_per_z2 * per_ion, 1.0});
        return out;
    });
    for (auto& r : rows)
        append(t, std::move(r));

    std::vector<ResultTable> tables{t};
    if (cfg.plane_check) {
        const auto& pc = *cfg.plane_check;
        const Probe probe = make_probe(cfg, cfg.probe.betas.front());
        const RMinChoice rm = r_min_for(cfg, probe).front();
        const CutoffPolicy policy{rm.r_min_nm, CutoffShape::hard};
        const double rho = pc.matched_exclusion ? equivalent_exclusion_radius(policy) : rm.r_min_nm;
        const LatticeFilm plane(cfg.lattice);
        ResultTable check("plane_check", {col("beta"), col("theta_rad", "rad"), col("phi_rad", "rad"),
                                          col("exclusion_radius_nm", "nm"), col("reciprocal_sum"),
                                          col("monte_carlo"), col("relative_difference")});
        auto prow = ordered_parallel_map<std::vector<double>>(pc.directions.size(), opt.threads, [&](std::size_t k) {
            const auto [th, ph] = pc.directions[k];
            const double gsum = single_plane_averaged_intensity(probe, cfg.nuclide, plane, th, ph, policy);
            PlaneAverageOptions mo;
            mo.patch_sites = pc.patch_sites;
            mo.samples = pc.samples;
            mo.seed = opt.seed + k;
            mo.exclusion_radius_nm = rho;
            const double mc = plane_average_monte_carlo(probe, cfg.nuclide, plane.a_nm(), th, ph, mo);
            return std::vector<double>{probe.beta, th, ph, rho, gsum, mc, (mc - gsum) / gsum};
        });
        append(check, std::move(prow));
        tables.push_back(check);
    }
    return tables;
}

// Quadratic through three samples at -h, 0, +h.
double quadratic(double x, double h, double fm, double f0, double fp)
{
    const double s = x / h;
    return f0 + 0.5 * s * (fp - fm) + 0.5 * s * s * (fp - 2.0 * f0 + fm);
}

std::vector<ResultTable> brems_compare(const ScenarioConfig& cfg, const RunOptions& opt)
{
    ResultTable spectral("spectral", {col("beta"), col("energy_offset_eV", "eV"), col("nuclear_density", "1/eV"),
                                      col("br_density", "1/eV")});
    ResultTable temporal("temporal", {col("beta"), col("time_ns", "ns"), col("nuclear_cumulative"),
                                      col("br_cumulative"), col("nuclear_rate", "1/ns")});
    const double r = cfg.r_perp_nm.at(0);
    const double e0 = cfg.nuclide.e0_keV * 1e3;
    const EmissionSpectrum line = spectral_profile(cfg.nuclide);
    const DecayProfile decay = decay_profile(cfg.nuclide);
    const double half_span = 0.5 * cfg.span_linewidths * line.fwhm_eV;

    struct Out {
        Rows spectral;
        Rows temporal;
    };
    auto outs = ordered_parallel_map<Out>(cfg.probe.betas.size(), opt.threads, [&](std::size_t k) {
        const Probe probe = make_probe(cfg, cfg.probe.betas[k]);
        const double coh = coherent_yield(probe, cfg.nuclide, r);
        // The continuum is smooth on the scale of the nuclear line; sample it at
        // the ends and centre of the span and interpolate.
        const double bm = br_spectral_density_per_eV(probe, cfg.z_nucleus, r, e0 - half_span, cfg.brems_form);
        const double b0 = br_spectral_density_per_eV(probe, cfg.z_nucleus, r, e0, cfg.brems_form);
        const double bp = br_spectral_density_per_eV(probe, cfg.z_nucleus, r, e0 + half_span, cfg.brems_form);
        Out o;
        for (int i = 0; i < cfg.spectral_points; ++i) {
            const double x = -half_span + 2.0 * half_span * i / (cfg.spectral_points - 1);
            o.spectral.push_back({probe.beta, x, coh * line.density(e0 + x), quadratic(x, half_span, bm, b0, bp)});
        }

        const double br_total = br_window_yield(probe, cfg.z_nucleus, r, e0, cfg.window_eV, cfg.brems_form);
        const double t_int = r / (probe.beta * probe.gamma() * constants::c_nm_s);
        const double t_end = cfg.time_span_lifetimes * cfg.nuclide.lifetime_s;
        for (int i = 0; i < cfg.time_points; ++i) {
            const double t = t_end * i / (cfg.time_points - 1);
            const double br_frac = t >= t_int ? 1.0 : t / t_int;
            o.temporal.push_back({probe.beta, t * 1e9, coh * (1.0 - decay.survival(t)), br_total * br_frac,
                                  coh * decay.density(t) * 1e-9});
        }
        return o;
    });
    for (auto& o : outs) {
        append(spectral, std::move(o.spectral));
        append(temporal, std::move(o.temporal));
    }
    return {spectral, temporal};
}

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::vector<ResultTable> run_scenario(const ScenarioConfig& cfg, const RunOptions& options)
{
    if (options.threads < 1)
        throw DomainError("threads must be >= 1");
    std::vector<ResultTable> tables;
    switch (cfg.kind) {
    case ScenarioKind::nuclide_info:
        tables = {nuclide_info(cfg)};
        break;
    case ScenarioKind::single_sweep:
        tables = {single_sweep(cfg, options)};
        break;
    case ScenarioKind::array_pattern:
        tables = array_pattern(cfg, options);
        break;
    case ScenarioKind::crystal_yield:
        tables = crystal_yield(cfg, options);
        break;
    case ScenarioKind::brems_compare:
        tables = brems_compare(cfg, options);
        break;
    }
    const std::string hash = hex64(fnv1a64(resolved_config_json(cfg)));
    const std::string stamp = utc_now();
    for (auto& t : tables) {
        t.set_metadata("scenario", std::string(scenario_name(cfg.kind)));
        t.set_metadata("nuclide", cfg.nuclide.name);
        t.set_metadata("config_hash", hash);
        t.set_metadata("library_version", SPGAMMA_VERSION);
        t.set_metadata("wall_clock", stamp);
    }
    return tables;
}

std::vector<std::string> write_tables(const std::vector<ResultTable>& tables, const ScenarioConfig& cfg,
                                      const std::string& dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create output directory '" + dir + "': " + ec.message());
    std::vector<std::string> paths;
    for (const auto& t : tables) {
        const fs::path path = fs::path(dir) / (cfg.output_path + "_" + t.name() + ".csv");
        std::ofstream out(path, std::ios::binary);
        out << to_csv(t);
        out.close();
        if (!out)
            throw Error("cannot write '" + path.string() + "'");
        paths.push_back(path.string());
    }
    return paths;
}

} // namespace spgamma
