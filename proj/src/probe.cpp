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

#include "spgamma/probe.hpp"

#include "spgamma/constants.hpp"
#include "spgamma/errors.hpp"
#include "spgamma/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace spgamma {

double lorentz_gamma(double beta)
{
    if (std::isnan(beta) || beta < 0.0 || beta >= 1.0)
        throw DomainError("lorentz_gamma: beta must lie in [0, 1), got " + std::to_string(beta));
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

double beta_from_kinetic_energy(double e_kinetic_eV, double rest_eV)
{
    if (!(e_kinetic_eV > 0.0) || !(rest_eV > 0.0))
        throw DomainError("beta_from_kinetic_energy: energies must be positive");
    const double gamma = 1.0 + e_kinetic_eV / rest_eV;
    // 1 - 1/gamma^2 without cancellation for small kinetic energies
    const double t = e_kinetic_eV / rest_eV;
    return std::sqrt(t * (t + 2.0)) / gamma;
}

double kinetic_energy_from_beta(double beta, double rest_eV)
{
    return (lorentz_gamma(beta) - 1.0) * rest_eV;
}

Probe Probe::electron(double beta) { return Probe{-1, constants::electron_mass_eV, beta}; }

Probe Probe::proton(double beta) { return Probe{1, constants::proton_mass_eV, beta}; }

Probe Probe::from_kinetic_energy(int z_charge, double rest_energy_eV, double e_kinetic_eV)
{
    return Probe{z_charge, rest_energy_eV, beta_from_kinetic_energy(e_kinetic_eV, rest_energy_eV)};
}

void Probe::validate() const
{
    if (z_charge == 0)
        throw DomainError("probe charge must be nonzero");
    if (!(rest_energy_eV > 0.0))
        throw DomainError("probe rest energy must be positive");
    if (!(beta > 0.0 && beta < 1.0))
        throw DomainError("probe beta must lie in (0, 1), got " + std::to_string(beta));
}

double Probe::speed_nm_s() const { return beta * constants::c_nm_s; }

double Probe::evanescent_length_nm(double omega) const { return speed_nm_s() * gamma() / omega; }

double field_prefactor(const Probe& probe, double omega)
{
    probe.validate();
    if (!(omega > 0.0))
        throw DomainError("field_prefactor: omega must be positive");
    const double e = std::sqrt(constants::e2_eV_nm);
    return 2.0 * e * std::abs(probe.z_charge) * omega
        / (probe.speed_nm_s() * constants::c_nm_s * probe.gamma());
}

double field_kernel(const Probe& probe, double r_perp_nm, double omega)
{
    if (!(r_perp_nm > 0.0))
        throw DomainError("evanescent field: r_perp must be positive (clamp to R_min first)");
    return numerics::bessel_k1(r_perp_nm / probe.evanescent_length_nm(omega));
}

double evanescent_field_magnitude(const Probe& probe, double r_perp_nm, double omega)
{
    return field_prefactor(probe, omega) * field_kernel(probe, r_perp_nm, omega);
}

RMinEstimate estimate_r_min(double theta_inc, double e_kinetic_eV, int z_row, double a_nm)
{
    if (!(theta_inc > 0.0 && theta_inc < 0.2))
        throw DomainError("estimate_r_min: theta_inc must lie in (0, 0.2) rad");
    if (!(e_kinetic_eV > 0.0) || !(a_nm > 0.0) || z_row <= 0)
        throw DomainError("estimate_r_min: energy, row charge and spacing must be positive");

    RMinEstimate out;
    out.transverse_energy_eV = theta_inc * theta_inc * e_kinetic_eV;
    const double exponent = out.transverse_energy_eV * a_nm / (2.0 * z_row * constants::e2_eV_nm);
    out.r_min_nm = 0.5 * a_nm * std::exp(-exponent);
    if (out.r_min_nm < kMinRMinNm) {
        out.r_min_nm = kMinRMinNm;
        out.clamped = true;
    }
    return out;
}

} // namespace spgamma
