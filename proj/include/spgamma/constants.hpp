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

#ifndef SPGAMMA_CONSTANTS_HPP
#define SPGAMMA_CONSTANTS_HPP

// CODATA-2018 values. Every module takes its constants from here.
//
// Internal unit system: energies in eV, lengths in nm, times in s, angular
// frequencies in rad/s (omega = E / hbar). Emission probabilities are
// dimensionless.

namespace spgamma::constants {

inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double c_m_s = 299792458.0;
inline constexpr double c_nm_s = c_m_s * 1e9;
inline constexpr double alpha_fs = 7.2973525693e-3;
// Gaussian e^2 = alpha * hbar * c, in eV nm (about 1.44).
inline constexpr double e2_eV_nm = alpha_fs * hbar_eV_s * c_nm_s;
inline constexpr double hbar_c_eV_nm = hbar_eV_s * c_nm_s;
inline constexpr double electron_mass_eV = 0.51099895000e6;
inline constexpr double proton_mass_eV = 938.27208816e6;
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;

struct PhysicalConstants {
    double hbar_eV_s = constants::hbar_eV_s;
    double c_m_s = constants::c_m_s;
    double alpha_fs = constants::alpha_fs;
    double e2_eV_nm = constants::e2_eV_nm;
    double electron_mass_eV = constants::electron_mass_eV;
    double proton_mass_eV = constants::proton_mass_eV;
};

inline constexpr PhysicalConstants codata2018{};

// Photon energy (eV) <-> angular frequency (rad/s).
constexpr double omega_from_eV(double energy_eV) { return energy_eV / hbar_eV_s; }
constexpr double eV_from_omega(double omega) { return omega * hbar_eV_s; }

} // namespace spgamma::constants

#endif
