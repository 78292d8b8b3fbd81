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

#include "spgamma/brems.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/numerics.hpp"

#include <cmath>

namespace spgamma {

namespace {

void check_inputs(const Probe& probe, double r_perp_nm, double omega)
{
    probe.validate();
    if (!(r_perp_nm > 0.0))
        throw DomainError("brems: r_perp must be > 0");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("brems: omega must be > 0");
}

} // namespace

BremsKernel brems_kernel(const Probe& probe, Vec2 separation_nm, double theta, double omega)
{
    const double r = separation_nm.norm();
    check_inputs(probe, r, omega);
    const double g = probe.gamma();
    BremsKernel k;
    k.beta = probe.beta;
    k.zeta = (1.0 - probe.beta * std::cos(theta)) * omega * r / probe.speed_nm_s();
    const auto b = numerics::bessel_k01(k.zeta);
    const Vec2 rhat{separation_nm.x / r, separation_nm.y / r};
    k.f_vec = {std::complex<double>(b.k1 * rhat.x, 0.0), std::complex<double>(b.k1 * rhat.y, 0.0),
               std::complex<double>(0.0, b.k0 / (g * g))};
    return k;
}

double br_density(const Probe& probe, int z_nucleus, Vec2 separation_nm, double theta, double phi, double omega,
                  BremsForm form)
{
    const BremsKernel k = brems_kernel(probe, separation_nm, theta, omega);
    const Vec3 rhat = direction(theta, phi);
    const Vec3 zhat{0.0, 0.0, 1.0};
    const double den = 1.0 - probe.beta * rhat.z;

    const CVec3 a = cross(rhat, k.f_vec);
    const std::complex<double> rf = rhat.x * k.f_vec[0] + rhat.y * k.f_vec[1] + rhat.z * k.f_vec[2];
    const Vec3 rz = cross(rhat, zhat);
    CVec3 v;
    v[0] = den * a[0] + probe.beta * rz.x * rf;
    v[1] = den * a[1] + probe.beta * rz.y * rf;
    v[2] = den * a[2] + probe.beta * rz.z * rf;

    const double g = probe.gamma();
    const double vel = probe.speed_nm_s();
    const double mass = probe.rest_energy_eV / (constants::c_nm_s * constants::c_nm_s); // eV s^2 / nm^2
    const double z2 = double(probe.z_charge) * probe.z_charge;
    const double a3 = constants::alpha_fs * constants::alpha_fs * constants::alpha_fs;
    const double hb = constants::hbar_eV_s;
    const double pref = a3 * z2 * z2 * double(z_nucleus) * z_nucleus * hb * hb * omega
        / (constants::pi * constants::pi * mass * mass * g * g * vel * vel * vel * vel);

    double value = pref * norm2(v);
    if (form == BremsForm::first_order)
        value /= den * den;
    return value;
}

double br_density(const Probe& probe, int z_nucleus, double r_perp_nm, double theta, double phi, double omega,
                  BremsForm form)
{
    check_inputs(probe, r_perp_nm, omega);
    return br_density(probe, z_nucleus, Vec2{r_perp_nm, 0.0}, theta, phi, omega, form);
}

double br_angle_integrated(const Probe& probe, int z_nucleus, double r_perp_nm, double omega, BremsForm form,
                           const BremsQuadrature& quad)
{
    check_inputs(probe, r_perp_nm, omega);
    if (quad.initial_nodes < 2 || quad.max_nodes < quad.initial_nodes)
        throw DomainError("brems quadrature: bad node counts");

    auto evaluate = [&](int n) {
        const auto rule = numerics::gauss_legendre(n, -1.0, 1.0);
        const double dphi = 2.0 * constants::pi / n;
        numerics::CompensatedSum sum;
        for (int i = 0; i < n; ++i) {
            const double theta = std::acos(rule.nodes[i]);
            numerics::CompensatedSum ring;
            for (int k = 0; k < n; ++k)
                ring.add(br_density(probe, z_nucleus, r_perp_nm, theta, k * dphi, omega, form));
            sum.add(rule.weights[i] * ring.value() * dphi);
        }
        return sum.value();
    };

    double previous = evaluate(quad.initial_nodes);
    for (int n = 2 * quad.initial_nodes; n <= quad.max_nodes; n *= 2) {
        const double current = evaluate(n);
        if (std::abs(current - previous) <= quad.rel_tol * std::abs(current))
            return current;
        previous = current;
        if (2 * n > quad.max_nodes)
            throw ConvergenceError("brems solid-angle integral did not converge", previous, current);
    }
    throw ConvergenceError("brems solid-angle integral did not converge", previous, previous);
}

double br_spectral_density_per_eV(const Probe& probe, int z_nucleus, double r_perp_nm, double energy_eV,
                                  BremsForm form, const BremsQuadrature& quad)
{
    return br_angle_integrated(probe, z_nucleus, r_perp_nm, constants::omega_from_eV(energy_eV), form, quad)
        / constants::hbar_eV_s;
}

double br_window_yield(const Probe& probe, int z_nucleus, double r_perp_nm, double center_eV, double window_eV,
                       BremsForm form, const BremsQuadrature& quad)
{
    if (!(window_eV > 0.0))
        throw DomainError("brems window must be > 0");
    if (!(center_eV - 0.5 * window_eV > 0.0))
        throw DomainError("brems window must lie at positive photon energy");
    auto f = [&](double e) { return br_spectral_density_per_eV(probe, z_nucleus, r_perp_nm, e, form, quad); };
    const double lo = center_eV - 0.5 * window_eV;
    const double hi = center_eV + 0.5 * window_eV;
    return window_eV / 6.0 * (f(lo) + 4.0 * f(center_eV) + f(hi));
}

} // namespace spgamma
