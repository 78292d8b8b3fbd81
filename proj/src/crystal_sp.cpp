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

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/kvfile.hpp"
#include "spgamma/single_nucleus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace spgamma {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;
constexpr int kMaxStackingPeriod = 16;

const std::set<std::string, std::less<>> kLatticeKeys = {"preset", "a_nm", "b_par_x", "b_par_y", "b_z_nm"};

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

double delta_of(const Probe& probe, const NuclideRecord& rec) { return 1.0 / probe.evanescent_length_nm(rec.omega0()); }

double cone_sum(const ReciprocalSet& set, Vec2 k_par, double delta, const Vec3& rhat)
{
    double sum = 0.0;
    for (const auto& v : set.vectors())
        sum += v.weight * sp_kernel_cross(k_par + v.g, delta, rhat);
    return sum;
}

SpOrder find_order(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film, int n)
{
    for (const SpOrder& o : sp_angles(probe.beta, film.z_period_nm(), rec.wavelength_nm()))
        if (o.n == n)
            return o;
    throw DomainError("order " + std::to_string(n) + " has no emission cone at beta = " + std::to_string(probe.beta));
}

double cone_profile(const Probe& probe, const NuclideRecord& rec, const SpOrder& order,
                    const ReciprocalSet& set, double pref, double phi)
{
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - order.cos_theta * order.cos_theta));
    const Vec3 rhat{sin_t * std::cos(phi), sin_t * std::sin(phi), order.cos_theta};
    const double k = rec.omega0() / constants::c_nm_s;
    return pref * cone_sum(set, {k * rhat.x, k * rhat.y}, delta_of(probe, rec), rhat);
}

} // namespace

LatticeFilm::LatticeFilm(LatticePreset preset, int n_layers) : preset_(std::move(preset)), n_layers_(n_layers)
{
    if (!(preset_.a_nm > 0.0) || !(preset_.b_z_nm > 0.0))
        throw DomainError("lattice '" + preset_.name + "': a_nm and b_z_nm must be positive");
    if (!std::isfinite(preset_.b_par_nm.x) || !std::isfinite(preset_.b_par_nm.y))
        throw DomainError("lattice '" + preset_.name + "': non-finite in-plane offset");
    if (n_layers_ < 1)
        throw DomainError("lattice film needs at least one layer");
    const double fx = preset_.b_par_nm.x / preset_.a_nm;
    const double fy = preset_.b_par_nm.y / preset_.a_nm;
    for (int p = 1; p <= kMaxStackingPeriod; ++p)
        if (near_integer(p * fx) && near_integer(p * fy)) {
            period_ = p;
            shift_i_ = int(std::lround(p * fx));
            shift_j_ = int(std::lround(p * fy));
            return;
        }
    throw DomainError("lattice '" + preset_.name + "': in-plane offset is not commensurate with the cell");
}

bool LatticeFilm::allows(int i, int j, int n) const noexcept
{
    const long long phase = n + (long long)i * shift_i_ + (long long)j * shift_j_;
    return phase % period_ == 0;
}

LatticeRegistry LatticeRegistry::builtin()
{
    LatticeRegistry r;
    const double a_fe = 0.2856;
    const double a_dy = 0.36;
    r.add({"sc100", a_fe, {0.0, 0.0}, a_fe});
    r.add({"bcc100", a_fe, {a_fe / 2, a_fe / 2}, a_fe / 2});
    r.add({"fcc100", a_dy, {a_dy / 2, a_dy / 2}, a_dy / std::sqrt(2.0)});
    return r;
}

void LatticeRegistry::load_text(std::string_view text)
{
    for (const KvRecord& rec : parse_kv_records(text)) {
        for (const KvEntry& e : rec.entries())
            if (!kLatticeKeys.count(e.key))
                throw ParseError("unknown key '" + e.key + "' in lattice record", e.line);
        LatticePreset p;
        p.name = rec.get_string("preset");
        p.a_nm = rec.get_double("a_nm");
        p.b_par_nm = {rec.get_double("b_par_x"), rec.get_double("b_par_y")};
        p.b_z_nm = rec.get_double("b_z_nm");
        try {
            add(std::move(p));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), rec.first_line());
        }
    }
}

void LatticeRegistry::load_file(const std::string& path)
{
    try {
        load_text(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), e.line(), path);
    }
}

void LatticeRegistry::add(LatticePreset preset)
{
    if (preset.name.empty())
        throw DomainError("lattice preset needs a name");
    LatticeFilm check(preset); // validates
    for (auto& existing : presets_)
        if (existing.name == preset.name) {
            existing = std::move(preset);
            return;
        }
    presets_.push_back(std::move(preset));
}

const LatticePreset* LatticeRegistry::find(std::string_view name) const
{
    for (const auto& p : presets_)
        if (p.name == name)
            return &p;
    return nullptr;
}

const LatticePreset& LatticeRegistry::get(std::string_view name) const
{
    if (const auto* p = find(name))
        return *p;
    std::string known;
    for (const auto& p : presets_)
        known += (known.empty() ? "" : ", ") + p.name;
    throw NotFoundError("unknown lattice preset '" + std::string(name) + "' (available: " + known + ")");
}

std::vector<std::string> LatticeRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& p : presets_)
        out.push_back(p.name);
    return out;
}

double CutoffPolicy::weight(double g) const
{
    if (shape == CutoffShape::hard)
        return g <= g_max() ? 1.0 : 0.0;
    return std::exp(-g / g_max());
}

void CutoffPolicy::validate() const
{
    if (!(r_min_nm > 0.0) || !std::isfinite(r_min_nm))
        throw DomainError("r_min must be > 0");
}

std::vector<SpOrder> sp_angles(double beta, double d_nm, double lambda_nm)
{
    if (!(beta > 0.0 && beta < 1.0))
        throw DomainError("sp_angles: beta must lie in (0, 1)");
    if (!(d_nm > 0.0) || !(lambda_nm > 0.0))
        throw DomainError("sp_angles: d and lambda must be positive");
    std::vector<SpOrder> out;
    const double inv_beta = 1.0 / beta;
    const double step = lambda_nm / d_nm;
    for (int n = 1;; ++n) {
        const double c = inv_beta - n * step;
        if (c < -1.0)
            break;
        if (c <= 1.0)
            out.push_back({n, c});
    }
    return out;
}

ReciprocalSet enumerate_reciprocal(const LatticeFilm& film, const CutoffPolicy& policy, std::optional<int> order)
{
    policy.validate();
    const double unit = kTwoPi / film.a_nm();
    const double radius = policy.enumeration_radius();
    const double r2 = (radius / unit) * (radius / unit);
    const int imax = int(std::floor(radius / unit)) + 1;

    ReciprocalSet set;
    set.below_first_shell_ = radius < unit;
    for (int i = -imax; i <= imax; ++i)
        for (int j = -imax; j <= imax; ++j) {
            if (double(i * i + j * j) > r2)
                continue;
            if (order && !film.allows(i, j, *order))
                continue;
            const Vec2 g{unit * i, unit * j};
            set.vectors_.push_back({i, j, g, policy.weight(g.norm())});
        }
    std::sort(set.vectors_.begin(), set.vectors_.end(), [](const ReciprocalVector& a, const ReciprocalVector& b) {
        return std::make_tuple(a.i * a.i + a.j * a.j, a.i, a.j) < std::make_tuple(b.i * b.i + b.j * b.j, b.i, b.j);
    });
    return set;
}

ReciprocalSet reciprocal_vectors(const LatticeFilm& film, int n, const CutoffPolicy& policy)
{
    return enumerate_reciprocal(film, policy, n);
}

ReciprocalSet plane_reciprocal_vectors(const LatticeFilm& film, const CutoffPolicy& policy)
{
    return enumerate_reciprocal(film, policy, std::nullopt);
}

double sp_kernel_cross(Vec2 q, double delta, const Vec3& rhat)
{
    const double q2 = q.norm2();
    if (q2 == 0.0)
        return 0.0;
    const Vec2 u = azimuthal_unit(q);
    const double proj = rhat.x * u.x + rhat.y * u.y;
    const double den = q2 + delta * delta;
    return q2 * (1.0 - proj * proj) / (den * den);
}

double sp_kernel_dot(Vec2 q, double delta, const Vec3& rhat)
{
    const double q2 = q.norm2();
    const double qr = q.x * rhat.x + q.y * rhat.y;
    const double den = q2 + delta * delta;
    return (q2 * rhat.z * rhat.z + qr * qr) / (den * den);
}

double sp_prefactor(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film)
{
    probe.validate();
    const double w0 = rec.omega0();
    const double kr = radiative_rate(rec);
    const double x = w0 * film.a_nm() / constants::c_nm_s;
    const double z2 = double(probe.z_charge) * probe.z_charge;
    return 9.0 * constants::pi * constants::pi * z2 * constants::alpha_fs * kr * kr
        / (film.b_z_nm() * constants::c_nm_s * x * x * x * x * rec.kappa());
}

double azimuthal_profile(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film, int n,
                         double phi, const CutoffPolicy& policy)
{
    const SpOrder order = find_order(probe, rec, film, n);
    const ReciprocalSet set = reciprocal_vectors(film, n, policy);
    return cone_profile(probe, rec, order, set, sp_prefactor(probe, rec, film), phi);
}

EmissionCone emission_cone(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film, int n,
                           const CutoffPolicy& policy, const LayerYieldOptions& options)
{
    const SpOrder order = find_order(probe, rec, film, n);
    const ReciprocalSet set = reciprocal_vectors(film, n, policy);
    const double pref = sp_prefactor(probe, rec, film);
    auto profile = [&](double phi) { return cone_profile(probe, rec, order, set, pref, phi); };

    EmissionCone cone;
    cone.n = n;
    cone.cos_theta = order.cos_theta;
    const int m = std::max(1, options.profile_points);
    cone.phi_profile.reserve(m);
    for (int k = 0; k < m; ++k)
        cone.phi_profile.push_back(profile(kTwoPi * k / m));
    cone.weight = numerics::integrate_periodic(profile, options.phi_quadrature);
    return cone;
}

LayerYield layer_yield(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film,
                       const CutoffPolicy& policy, const LayerYieldOptions& options)
{
    probe.validate();
    policy.validate();
    LayerYield out;
    double total = 0.0;
    for (const SpOrder& o : sp_angles(probe.beta, film.z_period_nm(), rec.wavelength_nm())) {
        if (options.order_cap > 0 && o.n > options.order_cap)
            break;
        out.cones.push_back(emission_cone(probe, rec, film, o.n, policy, options));
        total += out.cones.back().weight;
    }
    out.per_layer_per_z2 = total / (double(probe.z_charge) * probe.z_charge);
    return out;
}

double single_plane_averaged_intensity(const Probe& probe, const NuclideRecord& rec, const LatticeFilm& film,
                                       double theta, double phi, const CutoffPolicy& policy)
{
    probe.validate();
    const double w0 = rec.omega0();
    const Vec3 rhat = direction(theta, phi);
    const double k = w0 / constants::c_nm_s;
    const ReciprocalSet set = plane_reciprocal_vectors(film, policy);
    const double scale = kTwoPi * probe.evanescent_length_nm(w0) / film.cell_area();
    return scale * scale * cone_sum(set, {k * rhat.x, k * rhat.y}, delta_of(probe, rec), rhat);
}

double equivalent_exclusion_radius(const CutoffPolicy& policy)
{
    policy.validate();
    return 2.0 * std::exp(-constants::euler_gamma) / policy.g_max();
}

} // namespace spgamma
