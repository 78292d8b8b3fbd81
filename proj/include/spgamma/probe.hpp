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

#ifndef SPGAMMA_PROBE_HPP
#define SPGAMMA_PROBE_HPP

namespace spgamma {

double lorentz_gamma(double beta);

/// beta of a particle with kinetic energy e_kinetic_eV and rest energy rest_eV.
double beta_from_kinetic_energy(double e_kinetic_eV, double rest_eV);
double kinetic_energy_from_beta(double beta, double rest_eV);

// A uniformly moving point charge Z e along +z. Speed is the canonical
// kinematic variable; gamma is derived on demand.
struct Probe {
    int z_charge = -1;
    double rest_energy_eV = 0.0;
    double beta = 0.0;

    static Probe electron(double beta);
    static Probe proton(double beta);
    static Probe from_kinetic_energy(int z_charge, double rest_energy_eV, double e_kinetic_eV);

    void validate() const;
    double gamma() const { return lorentz_gamma(beta); }
    double speed_nm_s() const;
    double kinetic_energy_eV() const { return kinetic_energy_from_beta(beta, rest_energy_eV); }

    /// Transverse decay length v gamma / omega of the evanescent field (nm).
    double evanescent_length_nm(double omega) const;
};

// |H_ext(R, omega)| = prefactor(omega) * kernel(R, omega), split so both
// pieces can be checked on their own. Units: Gaussian field times time,
// sqrt(eV / nm^3) * s, with e^2 = alpha hbar c.
double field_prefactor(const Probe& probe, double omega);
double field_kernel(const Probe& probe, double r_perp_nm, double omega);
double evanescent_field_magnitude(const Probe& probe, double r_perp_nm, double omega);

struct RMinEstimate {
    double r_min_nm = 0.0;
    double transverse_energy_eV = 0.0;
    bool clamped = false; // true when the closed form fell below kMinRMin
};

inline constexpr double kMinRMinNm = 1e-8;

/// Minimum beam-row distance from E_perp = theta^2 E0 against the row-averaged
/// potential (2 z e^2 / a) ln(a / 2R):  R_min = (a/2) exp(-E_perp a / (2 z e^2)).
RMinEstimate estimate_r_min(double theta_inc, double e_kinetic_eV, int z_row, double a_nm);

} // namespace spgamma

#endif
