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

#include "spgamma/finite_array.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/numerics.hpp"
#include "spgamma/single_nucleus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spgamma {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;

double reduce_phase(double x) { return std::fmod(x, kTwoPi); }

} // namespace

NucleusSet::NucleusSet(std::vector<Vec3> positions) : positions_(std::move(positions))
{
    if (positions_.empty())
        throw DomainError("NucleusSet: at least one nucleus required");
    for (const auto& p : positions_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw DomainError("NucleusSet: non-finite position");
    auto sorted = positions_;
    std::sort(sorted.begin(), sorted.end(), [](const Vec3& a, const Vec3& b) {
        return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
    });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("NucleusSet: duplicate position");
}

CVec3 far_field_amplitude(const Probe& probe, const NucleusSet& set, const NuclideRecord& rec, Vec2 r_p,
                          double theta, double phi)
{
    probe.validate();
    const double w0 = rec.omega0();
    const double inv_length = 1.0 / probe.evanescent_length_nm(w0);
    const double kz_beam = w0 / probe.speed_nm_s();
    const double k0 = w0 / constants::c_nm_s;
    const Vec3 rhat = direction(theta, phi);

    numerics::CompensatedSum re_x, im_x, re_y, im_y;
    for (const Vec3& r : set.positions()) {
        const Vec2 rel = r.transverse() - r_p;
        const double dist = rel.norm();
        if (!(dist > 0.0))
            throw DomainError("far_field_amplitude: nucleus on the probe trajectory");
        const double k1 = numerics::bessel_k1(dist * inv_length);
        if (k1 == 0.0)
            continue;
        const double phase = reduce_phase(kz_beam * r.z) - reduce_phase(k0 * dot(rhat, r));
        const Vec2 u = azimuthal_unit(rel);
        const double c = k1 * std::cos(phase);
        const double s = k1 * std::sin(phase);
        re_x.add(c * u.x);
        im_x.add(s * u.x);
        re_y.add(c * u.y);
        im_y.add(s * u.y);
    }
    return {std::complex<double>(re_x.value(), im_x.value()), std::complex<double>(re_y.value(), im_y.value()),
            std::complex<double>(0.0, 0.0)};
}

double transverse_intensity(const CVec3& g, double theta, double phi)
{
    return norm2(cross(direction(theta, phi), g));
}

double angular_prefactor(const Probe& probe, const NuclideRecord& rec)
{
    probe.validate();
    const double bg = probe.beta * probe.gamma();
    const double z2 = double(probe.z_charge) * probe.z_charge;
    return 9.0 * z2 * constants::alpha_fs / (8.0 * constants::pi * bg * bg) * line_strength_factor(rec);
}

double angular_density(const Probe& probe, const NucleusSet& set, const NuclideRecord& rec, Vec2 r_p,
                       double theta, double phi)
{
    return angular_prefactor(probe, rec)
        * transverse_intensity(far_field_amplitude(probe, set, rec, r_p, theta, phi), theta, phi);
}

std::vector<double> uniform_cos_grid(int count)
{
    if (count < 2)
        throw DomainError("uniform_cos_grid: need at least two points");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = 1.0 - 2.0 * i / (count - 1);
    return out;
}

AngularGrid linear_array_pattern(const Probe& probe, const NuclideRecord& rec, int n_nuclei, double d_nm,
                                 double standoff_nm, std::span<const double> cos_thetas)
{
    if (n_nuclei < 2)
        throw DomainError("linear_array_pattern: need at least two nuclei");
    if (!(d_nm > 0.0) || !(standoff_nm > 0.0))
        throw DomainError("linear_array_pattern: period and standoff must be positive");
    for (std::size_t i = 0; i < cos_thetas.size(); ++i) {
        if (!(std::abs(cos_thetas[i]) <= 1.0))
            throw DomainError("linear_array_pattern: cos(theta) outside [-1, 1]");
        if (i > 0 && !(cos_thetas[i] < cos_thetas[i - 1]))
            throw DomainError("linear_array_pattern: cos(theta) grid must be strictly decreasing");
    }

    std::vector<Vec3> positions;
    positions.reserve(n_nuclei);
    for (int j = 0; j < n_nuclei; ++j)
        positions.push_back({0.0, 0.0, j * d_nm});
    const NucleusSet set(std::move(positions));
    const Vec2 r_p{standoff_nm, 0.0};
    const double pref = angular_prefactor(probe, rec);

    AngularGrid grid;
    grid.phis = {0.0};
    for (double c : cos_thetas) {
        const double theta = std::acos(c);
        grid.thetas.push_back(theta);
        grid.values.push_back(
            pref * transverse_intensity(far_field_amplitude(probe, set, rec, r_p, theta, 0.0), theta, 0.0));
    }
    return grid;
}

std::vector<std::size_t> principal_peaks(std::span<const double> values, double rel_threshold)
{
    std::vector<std::size_t> peaks;
    if (values.size() < 3)
        return peaks;
    const double top = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] >= rel_threshold * top)
            peaks.push_back(i);
    return peaks;
}

double plane_average_monte_carlo(const Probe& probe, const NuclideRecord& rec, double a_nm, double theta,
                                 double phi, const PlaneAverageOptions& options)
{
    if (!(a_nm > 0.0))
        throw DomainError("plane_average_monte_carlo: lattice period must be positive");
    if (options.patch_sites < 1 || options.patch_sites % 2 == 0)
        throw DomainError("plane_average_monte_carlo: patch_sites must be a positive odd number");
    if (options.samples < 4)
        throw DomainError("plane_average_monte_carlo: too few samples");
    const double rho = options.exclusion_radius_nm;
    const double r_disk = 0.5 * a_nm;
    if (!(rho > 0.0 && rho < r_disk))
        throw DomainError("plane_average_monte_carlo: exclusion radius must lie in (0, a/2)");

    const int half = options.patch_sites / 2;
    std::vector<Vec3> positions;
    positions.reserve(std::size_t(options.patch_sites) * options.patch_sites);
    for (int i = -half; i <= half; ++i)
        for (int j = -half; j <= half; ++j)
            positions.push_back({i * a_nm, j * a_nm, 0.0});
    const NucleusSet set(std::move(positions));

    auto intensity = [&](Vec2 r_p) {
        return transverse_intensity(far_field_amplitude(probe, set, rec, r_p, theta, phi), theta, phi);
    };

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double area = a_nm * a_nm;

    // Inscribed disk, log-uniform radius: r dr dpsi = r^2 du dpsi.
    const double log_lo = std::log(rho);
    const double log_span = std::log(r_disk) - log_lo;
    numerics::CompensatedSum disk;
    const int n_disk = options.samples;
    for (int s = 0; s < n_disk; ++s) {
        const double r = std::exp(log_lo + log_span * unit(rng));
        const double psi = kTwoPi * unit(rng);
        disk.add(intensity({r * std::cos(psi), r * std::sin(psi)}) * r * r);
    }
    const double disk_integral = disk.value() / n_disk * kTwoPi * log_span;

    // Corners outside the disk, uniform over the cell.
    numerics::CompensatedSum corner;
    const int n_corner = std::max(4, options.samples / 4);
    for (int s = 0; s < n_corner; ++s) {
        const Vec2 p{a_nm * (unit(rng) - 0.5), a_nm * (unit(rng) - 0.5)};
        if (p.norm() < r_disk)
            continue;
        corner.add(intensity(p));
    }
    const double corner_integral = corner.value() / n_corner * area;

    return (disk_integral + corner_integral) / area;
}

} // namespace spgamma
